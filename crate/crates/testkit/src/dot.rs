//! A checker for the subset of the DOT language used by directed graphs:
//!
//! ```text
//! graph     : 'digraph' ID? '{' stmt* '}'
//! stmt      : (attr_stmt | edge_stmt | node_stmt | ID '=' ID) ';'?
//! attr_stmt : ('graph' | 'node' | 'edge') attr_list
//! node_stmt : ID attr_list?
//! edge_stmt : ID ('->' ID)+ attr_list?
//! attr_list : '[' (ID '=' ID (';' | ',')?)* ']'
//! ```
//!
//! ID is an identifier, a number or a double-quoted string.

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Sym("->"));
            i += 2;
        } else if let Some(sym) = ["{", "}", "[", "]", "=", ";", ","]
            .into_iter()
            .find(|s| s.starts_with(c))
        {
            out.push(Tok::Sym(sym));
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.')
            {
                i += 1;
            }
            if i == start {
                return Err(format!("unexpected `{c}`"));
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected `{c}`"));
        }
    }
    Ok(out)
}

/// Summary of a checked graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    /// Node statements, excluding `graph`/`node`/`edge` attribute statements.
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

struct P {
    toks: Vec<Tok>,
    at: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn sym(&mut self, s: &str) -> Result<(), String> {
        match self.toks.get(self.at) {
            Some(Tok::Sym(x)) if *x == s => {
                self.at += 1;
                Ok(())
            }
            other => Err(format!("expected `{s}`, found {other:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.toks.get(self.at) {
            Some(Tok::Id(x)) => {
                self.at += 1;
                Ok(x.clone())
            }
            other => Err(format!("expected an identifier, found {other:?}")),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn attrs(&mut self) -> Result<(), String> {
        self.sym("[")?;
        while !self.is_sym("]") {
            self.id()?;
            self.sym("=")?;
            self.id()?;
            if self.is_sym(",") || self.is_sym(";") {
                self.at += 1;
            }
        }
        self.sym("]")
    }
}

pub fn check(text: &str) -> Result<Graph, String> {
    let mut p = P {
        toks: lex(text)?,
        at: 0,
    };
    if p.id()? != "digraph" {
        return Err("expected `digraph`".into());
    }
    if !p.is_sym("{") {
        p.id()?;
    }
    p.sym("{")?;
    let mut g = Graph::default();
    while !p.is_sym("}") {
        let first = p.id()?;
        if matches!(first.as_str(), "graph" | "node" | "edge") && p.is_sym("[") {
            p.attrs()?;
        } else if p.is_sym("=") {
            p.at += 1;
            p.id()?;
        } else if p.is_sym("->") {
            let mut from = first;
            while p.is_sym("->") {
                p.at += 1;
                let to = p.id()?;
                g.edges.push((from, to.clone()));
                from = to;
            }
            if p.is_sym("[") {
                p.attrs()?;
            }
        } else {
            if p.is_sym("[") {
                p.attrs()?;
            }
            g.nodes.push(first);
        }
        if p.is_sym(";") {
            p.at += 1;
        }
    }
    p.sym("}")?;
    if p.at != p.toks.len() {
        return Err("trailing input after the graph".into());
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_and_rejects() {
        let g = check("digraph m { rankdir=LR; node [shape=point]; \"a\" [shape=circle]; __start -> \"a\"; \"a\" -> \"a\" [label=\"x \\\" y\"]; }").unwrap();
        assert_eq!(g.nodes, vec!["a"]);
        assert_eq!(g.edges.len(), 2);
        assert!(check("digraph { a -> }").is_err());
        assert!(check("digraph { \"a }").is_err());
        assert!(check("graph { a }").is_err());
        assert!(check("digraph { a } b").is_err());
    }
}
