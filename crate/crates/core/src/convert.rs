//! Conversions between classical pushdown automata (PDA-I) and their
//! annotation-alphabet form (PDA-II), in both directions.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::machine::{PdaI, PdaII, PdaIKey, PdaIMove, Validate};
use crate::recognition::accepts_pda2;
use crate::symbol::Token;

pub const DEFAULT_SENTINEL: &str = "$";

/// Hands out names not yet used, appending `'` until a name is free.
struct Fresh {
    used: HashSet<String>,
}

impl Fresh {
    fn new<'a>(taken: impl IntoIterator<Item = &'a String>) -> Self {
        Fresh {
            used: taken.into_iter().cloned().collect(),
        }
    }

    fn name(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        while !self.used.insert(name.clone()) {
            name.push('\'');
        }
        name
    }
}

/// An auxiliary state of the PDA-I to PDA-II conversion: the `index`-th state
/// of the chain that simulates one source transition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuxStateName {
    pub source: (PdaIKey, PdaIMove),
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pda1ToPda2 {
    pub machine: PdaII,
    /// Initial state that pushes the bottom symbol.
    pub start: String,
    /// Accepting state that empties the stack.
    pub drain: String,
    pub aux: BTreeMap<String, AuxStateName>,
}

pub fn pda1_to_pda2(m: &PdaI) -> Result<PdaII> {
    Ok(pda1_to_pda2_traced(m)?.machine)
}

/// Each transition (p, X₁…Xₙ) ∈ δ(q, a, X) becomes the chain
/// q -a-> c₀ -pop X-> c₁ -push Xₙ-> c₂ … -push X₁-> p
/// through fresh states c₀…cₙ (with n = 0, c₀ pops X straight into p).
/// A fresh start state pushes the bottom symbol, and every accepting state
/// may move on ε into a drain state that pops anything and is the only
/// accepting state.
pub fn pda1_to_pda2_traced(m: &PdaI) -> Result<Pda1ToPda2> {
    m.ensure_valid()?;
    let mut fresh = Fresh::new(&m.states);
    let start = fresh.name("qN");
    let mut out = PdaII::new(
        m.states.iter().cloned(),
        m.alphabets.clone(),
        &start,
        Vec::<String>::new(),
    );
    out.states.insert(start.clone());
    out.insert(&start, Token::push(m.bottom.clone()), &m.initial);

    let mut aux = BTreeMap::new();
    let transitions = m
        .delta
        .iter()
        .flat_map(|(key, moves)| moves.iter().map(move |mv| (key, mv)));
    for (k, (key, mv)) in transitions.enumerate() {
        let n = mv.push.len();
        let chain: Vec<String> = (0..=n)
            .map(|i| fresh.name(&format!("{}.{k}.{i}", key.state)))
            .collect();
        for (i, name) in chain.iter().enumerate() {
            out.states.insert(name.clone());
            aux.insert(
                name.clone(),
                AuxStateName {
                    source: (key.clone(), mv.clone()),
                    index: i,
                },
            );
        }
        let head = key.input.clone().map_or(Token::Epsilon, Token::Input);
        out.insert(&key.state, head, &chain[0]);
        let after_pop = if n == 0 { &mv.target } else { &chain[1] };
        out.insert(&chain[0], Token::pop(key.top.clone()), after_pop);
        for i in 1..=n {
            let to = if i == n { &mv.target } else { &chain[i + 1] };
            out.insert(&chain[i], Token::push(mv.push[n - i].clone()), to);
        }
    }

    let drain = fresh.name("f*");
    out.states.insert(drain.clone());
    out.accepting.insert(drain.clone());
    for f in &m.accepting {
        out.insert(f, Token::Epsilon, &drain);
    }
    for x in &m.alphabets.stack {
        out.insert(&drain, Token::pop(x.clone()), &drain);
    }
    Ok(Pda1ToPda2 {
        machine: out,
        start,
        drain,
        aux,
    })
}

/// PDA-II to PDA-I with `sentinel` as the bottom-of-stack symbol.
///
/// Input and ε moves keep the top, pops become ε-moves that pop, pushes
/// become ε-moves that push over any top (the sentinel included). An
/// accepting state with only the sentinel left moves into a fresh state
/// `f_acc`, the only accepting state.
pub fn pda2_to_pda1(m: &PdaII, sentinel: &str) -> Result<PdaI> {
    m.ensure_valid()?;
    if m.alphabets.stack.contains(sentinel)
        || m.alphabets.input.contains(sentinel)
        || m.alphabets.tape.contains(sentinel)
    {
        return Err(Error::SentinelCollision(sentinel.to_string()));
    }
    let mut alphabets = m.alphabets.clone();
    alphabets.stack.insert(sentinel.to_string());
    let mut fresh = Fresh::new(&m.states);
    let accept = fresh.name("f_acc");
    let mut out = PdaI::new(
        m.states.iter().cloned(),
        alphabets,
        &m.initial,
        sentinel,
        [accept.clone()],
    );
    out.states.insert(accept.clone());
    let tops: Vec<String> = out.alphabets.stack.iter().cloned().collect();

    for ((r, token), targets) in &m.delta {
        for to in targets {
            match token {
                Token::Input(a) => {
                    for x in &tops {
                        out.insert(r, Some(a), x, to, &[x]);
                    }
                }
                Token::Epsilon => {
                    for x in &tops {
                        out.insert(r, None, x, to, &[x]);
                    }
                }
                Token::Op(op) if op.is_push() => {
                    for x in &tops {
                        out.insert(r, None, x, to, &[&op.symbol, x]);
                    }
                }
                Token::Op(op) => {
                    out.insert(r, None, &op.symbol, to, &[]);
                }
                Token::Pair(_) | Token::Tape(_) => unreachable!("rejected by validation"),
            }
        }
    }
    for f in &m.accepting {
        out.insert(f, None, sentinel, &accept, &[sentinel]);
    }
    Ok(out)
}

/// PDA-I membership, decided on the converted PDA-II.
pub fn accepts_pda1<S: AsRef<str>>(m: &PdaI, word: &[S]) -> Result<bool> {
    Ok(accepts_pda2(&pda1_to_pda2(m)?, word)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabets;

    fn word(text: &str) -> Vec<String> {
        text.chars().map(String::from).collect()
    }

    #[test]
    fn empty_pda1_accepting_start() {
        let m = PdaI::new(
            ["q0"],
            Alphabets::new(["0"], ["Z"], Vec::<String>::new()),
            "q0",
            "Z",
            ["q0"],
        );
        let t = pda1_to_pda2_traced(&m).unwrap();
        assert_eq!(t.machine.transition_count(), 1 + 1 + 1);
        let (ok, w) = accepts_pda2(&t.machine, &word("")).unwrap();
        assert!(ok);
        assert_eq!(w.unwrap().to_string(), "push:Z _ pop:Z");
        assert!(!accepts_pda1(&m, &word("0")).unwrap());
    }

    #[test]
    fn chain_pushes_first_symbol_last() {
        let mut m = PdaI::new(
            ["q", "p"],
            Alphabets::new(["a"], ["Z", "A", "B"], Vec::<String>::new()),
            "q",
            "Z",
            ["p"],
        );
        m.insert("q", Some("a"), "Z", "p", &["A", "B", "Z"]);
        let t = pda1_to_pda2_traced(&m).unwrap();
        let out = &t.machine;
        assert!(out
            .successors("q", &Token::input("a"))
            .any(|s| s == "q.0.0"));
        assert!(out
            .successors("q.0.0", &Token::pop("Z"))
            .any(|s| s == "q.0.1"));
        assert!(out
            .successors("q.0.1", &Token::push("Z"))
            .any(|s| s == "q.0.2"));
        assert!(out
            .successors("q.0.2", &Token::push("B"))
            .any(|s| s == "q.0.3"));
        assert!(out.successors("q.0.3", &Token::push("A")).any(|s| s == "p"));
        assert_eq!(t.aux.len(), 4);
        assert_eq!(out.transition_count(), 1 + 1 + 1 + 3 + 1 + 3);
        assert!(out.ensure_valid().is_ok());
    }

    #[test]
    fn fresh_names_avoid_capture() {
        let m = PdaI::new(
            ["qN", "f*", "q0"],
            Alphabets::new(["0"], ["Z"], Vec::<String>::new()),
            "q0",
            "Z",
            ["q0"],
        );
        let t = pda1_to_pda2_traced(&m).unwrap();
        assert_eq!(t.start, "qN'");
        assert_eq!(t.drain, "f*'");
    }

    #[test]
    fn sentinel_collision() {
        let m = PdaII::new(
            ["q0"],
            Alphabets::new(["0"], ["Z0"], Vec::<String>::new()),
            "q0",
            ["q0"],
        );
        assert_eq!(
            pda2_to_pda1(&m, "Z0"),
            Err(Error::SentinelCollision("Z0".into()))
        );
        let p = pda2_to_pda1(&m, "$").unwrap();
        assert!(p.ensure_valid().is_ok());
        assert!(accepts_pda1(&p, &word("")).unwrap());
        assert!(!accepts_pda1(&p, &word("0")).unwrap());
    }

    #[test]
    fn nothing_accepted_stays_empty() {
        let mut m = PdaII::new(
            ["q0"],
            Alphabets::new(["0"], ["Z"], Vec::<String>::new()),
            "q0",
            Vec::<String>::new(),
        );
        m.insert("q0", Token::input("0"), "q0");
        let p = pda2_to_pda1(&m, "$").unwrap();
        for x in ["", "0", "00", "000000"] {
            assert!(!accepts_pda1(&p, &word(x)).unwrap());
        }
    }
}
