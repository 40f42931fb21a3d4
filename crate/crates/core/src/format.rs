//! The line-oriented `.sm` machine file format.
//!
//! ```text
//! # comment
//! machine pda2
//! states q0 q1 q2
//! initial q0
//! accept q2
//! input 0 1
//! stack Z
//! trans
//! q0 push:Z -> q1
//! q1 0 -> {q1 q2}
//! q2 pop:Z -> q2
//! ```
//!
//! Kinds are `twostack`, `pda1`, `pda2`, `dpda2`, `qpda2` and `q2sm`. PDA-I
//! files add `bottom Z` and write transitions as `q a X -> p [Y1 Y2]` (with `_`
//! for an ε-move and the first pushed symbol on top). Quantum files have no
//! `trans` section; instead each token has a block `matrix TOKEN:` followed by
//! one row of `a+bi` literals per state. Declarations come before transitions
//! and matrices; lines whose first non-blank character is `#` are comments.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::alphabet::{AlphabetProblem, Alphabets};
use crate::machine::{DpdaII, Letters, PdaI, PdaII, TwoStackMachine, Validate, Violation};
use crate::quantum::{Flavor, QuantumMachine, C64, DEFAULT_TOLERANCE};
use crate::symbol::{Token, EPSILON};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MachineKind {
    TwoStack,
    Pda1,
    Pda2,
    Dpda2,
    Qpda2,
    Q2sm,
}

impl MachineKind {
    pub const ALL: [MachineKind; 6] = [
        MachineKind::TwoStack,
        MachineKind::Pda1,
        MachineKind::Pda2,
        MachineKind::Dpda2,
        MachineKind::Qpda2,
        MachineKind::Q2sm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MachineKind::TwoStack => "twostack",
            MachineKind::Pda1 => "pda1",
            MachineKind::Pda2 => "pda2",
            MachineKind::Dpda2 => "dpda2",
            MachineKind::Qpda2 => "qpda2",
            MachineKind::Q2sm => "q2sm",
        }
    }

    fn has_tape(self) -> bool {
        matches!(self, MachineKind::TwoStack | MachineKind::Q2sm)
    }

    fn is_quantum(self) -> bool {
        matches!(self, MachineKind::Qpda2 | MachineKind::Q2sm)
    }
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MachineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MachineKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown machine kind `{s}` (expected twostack, pda1, pda2, dpda2, qpda2 or q2sm)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("the file must start with `machine KIND`")]
    MissingHeader,
    #[error("{0}")]
    UnknownKind(String),
    #[error("unknown declaration `{0}`")]
    UnknownKeyword(String),
    #[error("`{0}` is declared twice")]
    Duplicate(String),
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
    #[error("`{0}` is not used by this machine kind")]
    NotForKind(String),
    #[error("declarations must come before transitions and matrices")]
    LateDeclaration,
    #[error("{0}")]
    Syntax(String),
    #[error("undeclared {what} `{name}`")]
    Undeclared { what: &'static str, name: String },
    #[error("token `{0}` is not in this machine's annotation alphabet")]
    TokenNotAllowed(String),
    #[error("second transition for state `{state}` on `{token}` in a deterministic machine")]
    Nondeterministic { state: String, token: String },
    #[error("bad complex number `{0}`")]
    BadNumber(String),
    #[error("{0}")]
    Invalid(String),
}

/// A parse failure with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A machine of any kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMachine {
    TwoStack(TwoStackMachine),
    Pda1(PdaI),
    Pda2(PdaII),
    Dpda2(DpdaII),
    Quantum(QuantumMachine),
}

impl AnyMachine {
    pub fn kind(&self) -> MachineKind {
        match self {
            AnyMachine::TwoStack(_) => MachineKind::TwoStack,
            AnyMachine::Pda1(_) => MachineKind::Pda1,
            AnyMachine::Pda2(_) => MachineKind::Pda2,
            AnyMachine::Dpda2(_) => MachineKind::Dpda2,
            AnyMachine::Quantum(q) => match q.flavor {
                Flavor::SingleStack => MachineKind::Qpda2,
                Flavor::TwoStack => MachineKind::Q2sm,
            },
        }
    }

    pub fn alphabets(&self) -> &Alphabets {
        match self {
            AnyMachine::TwoStack(m) => &m.alphabets,
            AnyMachine::Pda1(m) => &m.alphabets,
            AnyMachine::Pda2(m) => &m.alphabets,
            AnyMachine::Dpda2(m) => &m.alphabets,
            AnyMachine::Quantum(m) => &m.alphabets,
        }
    }
}

impl Validate for AnyMachine {
    fn violations(&self) -> Vec<Violation> {
        match self {
            AnyMachine::TwoStack(m) => m.violations(),
            AnyMachine::Pda1(m) => m.violations(),
            AnyMachine::Pda2(m) => m.violations(),
            AnyMachine::Dpda2(m) => m.violations(),
            AnyMachine::Quantum(m) => m.violations(),
        }
    }
}

macro_rules! any_from {
    ($($variant:ident($ty:ty)),*) => {$(
        impl From<$ty> for AnyMachine {
            fn from(m: $ty) -> Self {
                AnyMachine::$variant(m)
            }
        }
    )*};
}

any_from!(
    TwoStack(TwoStackMachine),
    Pda1(PdaI),
    Pda2(PdaII),
    Dpda2(DpdaII),
    Quantum(QuantumMachine)
);

/// from, input (None for ε), top, to, pushed symbols.
type Pda1Line = (String, Option<String>, String, String, Vec<String>);

/// A whitespace-separated word with its 1-based column.
#[derive(Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    column: usize,
}

fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Word {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct Parser {
    kind: MachineKind,
    declared: HashMap<&'static str, usize>,
    states: Vec<String>,
    initial: Option<String>,
    accepting: Vec<String>,
    alphabets: Alphabets,
    bottom: Option<String>,
    body_started: bool,
    line: usize,
}

const DECLARATIONS: &[&str] = &[
    "states", "initial", "accept", "input", "stack", "tape", "bottom",
];

impl Parser {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    fn declare(&mut self, head: Word, rest: &[Word]) -> Result<(), ParseError> {
        if self.body_started {
            return Err(self.err(head.column, ParseErrorKind::LateDeclaration));
        }
        let key = *DECLARATIONS
            .iter()
            .find(|d| **d == head.text)
            .expect("caller checked");
        if self.declared.insert(key, self.line).is_some() {
            return Err(self.err(head.column, ParseErrorKind::Duplicate(key.to_string())));
        }
        let names = || rest.iter().map(|w| w.text.to_string());
        let need_states = |p: &Parser| -> Result<(), ParseError> {
            if p.declared.contains_key("states") {
                Ok(())
            } else {
                Err(p.err(
                    head.column,
                    ParseErrorKind::Syntax(format!("`{key}` must come after `states`")),
                ))
            }
        };
        match key {
            "states" => {
                let mut seen = BTreeSet::new();
                for w in rest {
                    if !seen.insert(w.text) {
                        return Err(self.err(
                            w.column,
                            ParseErrorKind::Duplicate(format!("state {}", w.text)),
                        ));
                    }
                }
                self.states = names().collect();
            }
            "initial" => {
                need_states(self)?;
                let [name] = rest else {
                    return Err(self.err(
                        head.column,
                        ParseErrorKind::Syntax("`initial` takes exactly one state".into()),
                    ));
                };
                self.check_state(*name)?;
                self.initial = Some(name.text.to_string());
            }
            "accept" => {
                need_states(self)?;
                for w in rest {
                    self.check_state(*w)?;
                }
                self.accepting = names().collect();
            }
            "input" => self.alphabets.input = names().collect(),
            "stack" => self.alphabets.stack = names().collect(),
            "tape" => {
                if !self.kind.has_tape() {
                    return Err(self.err(head.column, ParseErrorKind::NotForKind("tape".into())));
                }
                self.alphabets.tape = names().collect();
            }
            "bottom" => {
                if self.kind != MachineKind::Pda1 {
                    return Err(self.err(head.column, ParseErrorKind::NotForKind("bottom".into())));
                }
                let [name] = rest else {
                    return Err(self.err(
                        head.column,
                        ParseErrorKind::Syntax("`bottom` takes exactly one symbol".into()),
                    ));
                };
                if !self.declared.contains_key("stack") {
                    return Err(self.err(
                        head.column,
                        ParseErrorKind::Syntax("`bottom` must come after `stack`".into()),
                    ));
                }
                if !self.alphabets.stack.contains(name.text) {
                    return Err(self.err(
                        name.column,
                        ParseErrorKind::Undeclared {
                            what: "stack symbol",
                            name: name.text.into(),
                        },
                    ));
                }
                self.bottom = Some(name.text.to_string());
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn check_state(&self, w: Word) -> Result<(), ParseError> {
        if self.states.iter().any(|s| s == w.text) {
            Ok(())
        } else {
            Err(self.err(
                w.column,
                ParseErrorKind::Undeclared {
                    what: "state",
                    name: w.text.into(),
                },
            ))
        }
    }

    fn start_body(&mut self, column: usize) -> Result<(), ParseError> {
        for key in ["states", "initial", "input"] {
            if !self.declared.contains_key(key) {
                return Err(self.err(column, ParseErrorKind::Missing(key)));
            }
        }
        if self.kind == MachineKind::Pda1 && self.bottom.is_none() {
            return Err(self.err(column, ParseErrorKind::Missing("bottom")));
        }
        self.body_started = true;
        Ok(())
    }

    fn letters(&self) -> Letters {
        match self.kind {
            MachineKind::TwoStack | MachineKind::Q2sm => Letters::TwoStack,
            MachineKind::Pda2 => Letters::SingleStack { epsilon: true },
            _ => Letters::SingleStack { epsilon: false },
        }
    }

    fn token(&self, w: Word) -> Result<Token, ParseError> {
        let token: Token = w.text.parse().map_err(|e: crate::error::Error| {
            self.err(w.column, ParseErrorKind::Syntax(e.to_string()))
        })?;
        if let Token::Input(a) = &token {
            if !self.alphabets.input.contains(a) {
                return Err(self.err(
                    w.column,
                    ParseErrorKind::Undeclared {
                        what: "input symbol",
                        name: a.clone(),
                    },
                ));
            }
        }
        if !self.alphabets.admits(&token, self.letters()) {
            return Err(self.err(w.column, ParseErrorKind::TokenNotAllowed(w.text.into())));
        }
        Ok(token)
    }
}

/// Splits `from TOKEN... -> targets` at the arrow.
fn split_arrow<'a>(
    p: &Parser,
    ws: &'a [Word<'a>],
) -> Result<(&'a [Word<'a>], &'a [Word<'a>]), ParseError> {
    let Some(at) = ws.iter().position(|w| w.text == "->") else {
        return Err(p.err(ws[0].column, ParseErrorKind::Syntax("expected `->`".into())));
    };
    Ok((&ws[..at], &ws[at + 1..]))
}

/// Reads `{a b}`, `{a}`, `{}` or a bare name, returning the names with columns.
fn braced<'a>(
    p: &Parser,
    ws: &[Word<'a>],
    open: char,
    close: char,
) -> Result<Vec<Word<'a>>, ParseError> {
    let column = ws.first().map_or(1, |w| w.column);
    let Some(first) = ws.first() else {
        return Err(p.err(
            column,
            ParseErrorKind::Syntax("missing target after `->`".into()),
        ));
    };
    if !first.text.starts_with(open) {
        return Ok(ws.to_vec());
    }
    let last = ws.last().expect("nonempty");
    if !last.text.ends_with(close) {
        return Err(p.err(
            last.column,
            ParseErrorKind::Syntax(format!("expected `{close}`")),
        ));
    }
    let mut out = Vec::new();
    for (i, w) in ws.iter().enumerate() {
        let mut text = w.text;
        let mut col = w.column;
        if i == 0 {
            text = &text[open.len_utf8()..];
            col += 1;
        }
        if i == ws.len() - 1 {
            text = &text[..text.len() - close.len_utf8()];
        }
        if text.contains([open, close]) {
            return Err(p.err(
                w.column,
                ParseErrorKind::Syntax(format!("unexpected `{open}` or `{close}`")),
            ));
        }
        if !text.is_empty() {
            out.push(Word { text, column: col });
        }
    }
    Ok(out)
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`.
pub fn parse_complex(text: &str) -> Option<C64> {
    let Some(body) = text.strip_suffix('i') else {
        return text.parse().ok().map(|re| C64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse().ok()?,
    };
    Some(C64::new(re, im))
}

pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

pub fn parse_machine(text: &str) -> Result<AnyMachine, ParseError> {
    parse_machine_with_tolerance(text, DEFAULT_TOLERANCE)
}

/// [`parse_machine`] with a custom unitarity tolerance for quantum machines.
pub fn parse_machine_with_tolerance(text: &str, tol: f64) -> Result<AnyMachine, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });
    let Some((line, header)) = lines.next() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::MissingHeader,
        });
    };
    let hw = words(header);
    if hw[0].text != "machine" {
        return Err(ParseError {
            line,
            column: hw[0].column,
            kind: ParseErrorKind::MissingHeader,
        });
    }
    let kind = match hw.get(1..) {
        Some([k]) => k.text.parse().map_err(|e| ParseError {
            line,
            column: k.column,
            kind: ParseErrorKind::UnknownKind(e),
        })?,
        _ => {
            return Err(ParseError {
                line,
                column: hw[0].column,
                kind: ParseErrorKind::Syntax("expected `machine KIND`".into()),
            })
        }
    };
    let mut p = Parser {
        kind,
        declared: HashMap::new(),
        states: Vec::new(),
        initial: None,
        accepting: Vec::new(),
        alphabets: Alphabets::default(),
        bottom: None,
        body_started: false,
        line,
    };

    let mut single: BTreeMap<(String, Token), String> = BTreeMap::new();
    let mut multi: BTreeMap<(String, Token), BTreeSet<String>> = BTreeMap::new();
    let mut pda1: Vec<Pda1Line> = Vec::new();
    let mut matrices: BTreeMap<Token, (usize, DMatrix<C64>)> = BTreeMap::new();
    let mut pending: Option<(Token, usize, Vec<Vec<C64>>)> = None;
    let mut in_trans = false;

    for (line, text) in lines {
        p.line = line;
        let ws = words(text);
        let head = ws[0];

        if let Some((token, header_line, rows)) = &mut pending {
            if head.text != "matrix" {
                let mut row = Vec::new();
                for w in &ws {
                    row.push(parse_complex(w.text).ok_or_else(|| {
                        p.err(w.column, ParseErrorKind::BadNumber(w.text.into()))
                    })?);
                }
                if row.len() != p.states.len() {
                    return Err(p.err(
                        head.column,
                        ParseErrorKind::Syntax(format!(
                            "expected {} entries per row, found {}",
                            p.states.len(),
                            row.len()
                        )),
                    ));
                }
                rows.push(row);
                if rows.len() == p.states.len() {
                    let n = p.states.len();
                    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
                    matrices.insert(token.clone(), (*header_line, m));
                    pending = None;
                }
                continue;
            }
        }

        match head.text {
            d if DECLARATIONS.contains(&d) => p.declare(head, &ws[1..])?,
            "machine" => {
                return Err(p.err(head.column, ParseErrorKind::Duplicate("machine".into())))
            }
            "trans" => {
                if kind.is_quantum() {
                    return Err(p.err(head.column, ParseErrorKind::NotForKind("trans".into())));
                }
                if in_trans {
                    return Err(p.err(head.column, ParseErrorKind::Duplicate("trans".into())));
                }
                if ws.len() > 1 {
                    return Err(p.err(
                        ws[1].column,
                        ParseErrorKind::Syntax("`trans` stands on its own line".into()),
                    ));
                }
                p.start_body(head.column)?;
                in_trans = true;
            }
            "matrix" => {
                if !kind.is_quantum() {
                    return Err(p.err(head.column, ParseErrorKind::NotForKind("matrix".into())));
                }
                if let Some((_, _, rows)) = &pending {
                    return Err(p.err(
                        head.column,
                        ParseErrorKind::Syntax(format!(
                            "matrix ends after {} of {} rows",
                            rows.len(),
                            p.states.len()
                        )),
                    ));
                }
                if !p.body_started {
                    p.start_body(head.column)?;
                }
                let [tw] = &ws[1..] else {
                    return Err(p.err(
                        head.column,
                        ParseErrorKind::Syntax("expected `matrix TOKEN:`".into()),
                    ));
                };
                let Some(body) = tw.text.strip_suffix(':') else {
                    return Err(p.err(
                        tw.column,
                        ParseErrorKind::Syntax("expected `:` after the token".into()),
                    ));
                };
                let token = p.token(Word {
                    text: body,
                    column: tw.column,
                })?;
                if matrices.contains_key(&token) {
                    return Err(p.err(
                        tw.column,
                        ParseErrorKind::Duplicate(format!("matrix {body}")),
                    ));
                }
                if p.states.is_empty() {
                    matrices.insert(token, (line, DMatrix::zeros(0, 0)));
                } else {
                    pending = Some((token, line, Vec::new()));
                }
            }
            _ if in_trans => {
                let (lhs, rhs) = split_arrow(&p, &ws)?;
                if kind == MachineKind::Pda1 {
                    let [from, input, top] = lhs else {
                        return Err(p.err(
                            head.column,
                            ParseErrorKind::Syntax(
                                "expected `state input|_ top -> state [symbols]`".into(),
                            ),
                        ));
                    };
                    p.check_state(*from)?;
                    let input = if input.text == EPSILON {
                        None
                    } else if p.alphabets.input.contains(input.text) {
                        Some(input.text.to_string())
                    } else {
                        return Err(p.err(
                            input.column,
                            ParseErrorKind::Undeclared {
                                what: "input symbol",
                                name: input.text.into(),
                            },
                        ));
                    };
                    if !p.alphabets.stack.contains(top.text) {
                        return Err(p.err(
                            top.column,
                            ParseErrorKind::Undeclared {
                                what: "stack symbol",
                                name: top.text.into(),
                            },
                        ));
                    }
                    let Some((to, push)) = rhs.split_first() else {
                        return Err(p.err(
                            head.column,
                            ParseErrorKind::Syntax("missing target after `->`".into()),
                        ));
                    };
                    p.check_state(*to)?;
                    if push.is_empty() || !push[0].text.starts_with('[') {
                        return Err(p.err(
                            to.column,
                            ParseErrorKind::Syntax("expected `[symbols]` after the target".into()),
                        ));
                    }
                    let push = braced(&p, push, '[', ']')?;
                    for w in &push {
                        if !p.alphabets.stack.contains(w.text) {
                            return Err(p.err(
                                w.column,
                                ParseErrorKind::Undeclared {
                                    what: "stack symbol",
                                    name: w.text.into(),
                                },
                            ));
                        }
                    }
                    pda1.push((
                        from.text.into(),
                        input,
                        top.text.into(),
                        to.text.into(),
                        push.iter().map(|w| w.text.to_string()).collect(),
                    ));
                } else {
                    let [from, tw] = lhs else {
                        return Err(p.err(
                            head.column,
                            ParseErrorKind::Syntax("expected `state TOKEN -> target`".into()),
                        ));
                    };
                    p.check_state(*from)?;
                    let token = p.token(*tw)?;
                    let targets = braced(&p, rhs, '{', '}')?;
                    for t in &targets {
                        p.check_state(*t)?;
                    }
                    let key = (from.text.to_string(), token);
                    if kind == MachineKind::Pda2 {
                        multi
                            .entry(key)
                            .or_default()
                            .extend(targets.iter().map(|t| t.text.to_string()));
                    } else {
                        let ([t], false) = (&targets[..], single.contains_key(&key)) else {
                            return Err(p.err(
                                tw.column,
                                ParseErrorKind::Nondeterministic {
                                    state: from.text.into(),
                                    token: tw.text.into(),
                                },
                            ));
                        };
                        single.insert(key, t.text.to_string());
                    }
                }
            }
            other => return Err(p.err(head.column, ParseErrorKind::UnknownKeyword(other.into()))),
        }
    }
    p.line += 1;
    if let Some((_, header_line, rows)) = pending {
        return Err(ParseError {
            line: header_line,
            column: 1,
            kind: ParseErrorKind::Syntax(format!(
                "matrix ends after {} of {} rows",
                rows.len(),
                p.states.len()
            )),
        });
    }
    if !p.body_started {
        p.start_body(1)?;
    }

    let initial = p.initial.clone().expect("checked");
    let alphabets = p.alphabets.clone();
    let states = p.states.clone();
    let accepting = p.accepting.clone();
    let machine: AnyMachine = match kind {
        MachineKind::TwoStack => {
            let mut m = TwoStackMachine::new(states, alphabets, &initial, accepting);
            m.delta = single;
            m.into()
        }
        MachineKind::Dpda2 => {
            let mut m = DpdaII::new(states, alphabets, &initial, accepting);
            m.delta = single;
            m.into()
        }
        MachineKind::Pda2 => {
            let mut m = PdaII::new(states, alphabets, &initial, accepting);
            m.delta = multi;
            m.into()
        }
        MachineKind::Pda1 => {
            let mut m = PdaI::new(
                states,
                alphabets,
                &initial,
                p.bottom.as_deref().expect("checked"),
                accepting,
            );
            for (from, input, top, to, push) in &pda1 {
                let push: Vec<&str> = push.iter().map(String::as_str).collect();
                m.insert(from, input.as_deref(), top, to, &push);
            }
            m.into()
        }
        MachineKind::Qpda2 | MachineKind::Q2sm => {
            let flavor = if kind == MachineKind::Qpda2 {
                Flavor::SingleStack
            } else {
                Flavor::TwoStack
            };
            let mut m = QuantumMachine::new(flavor, states, alphabets, &initial, accepting);
            m.unitaries = matrices
                .iter()
                .map(|(t, (_, u))| (t.clone(), u.clone()))
                .collect();
            m.into()
        }
    };

    let violations = match &machine {
        AnyMachine::Quantum(q) => q.violations_with_tolerance(tol),
        other => other.violations(),
    };
    if let Some(v) = violations.first() {
        let line = match v {
            Violation::Alphabet(AlphabetProblem::Empty(k))
            | Violation::Alphabet(AlphabetProblem::Reserved { kind: k, .. }) => {
                p.declared.get(k.to_string().as_str()).copied()
            }
            Violation::Alphabet(AlphabetProblem::Overlap { second, .. }) => {
                p.declared.get(second.to_string().as_str()).copied()
            }
            Violation::BadStateName { .. } | Violation::NoStates => {
                p.declared.get("states").copied()
            }
            Violation::NotUnitary { token, .. } | Violation::WrongDimension { token, .. } => {
                matrices
                    .iter()
                    .find(|(t, _)| t.to_string() == *token)
                    .map(|(_, (l, _))| *l)
            }
            _ => None,
        };
        return Err(ParseError {
            line: line.unwrap_or(p.line),
            column: 1,
            kind: ParseErrorKind::Invalid(v.to_string()),
        });
    }
    Ok(machine)
}

fn join<'a>(names: impl IntoIterator<Item = &'a String>) -> String {
    names
        .into_iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .join(" ")
}

fn line(out: &mut String, key: &str, rest: &str) {
    if rest.is_empty() {
        let _ = writeln!(out, "{key}");
    } else {
        let _ = writeln!(out, "{key} {rest}");
    }
}

/// Canonical text for `m`; [`parse_machine`] reads it back to an equal machine.
pub fn serialize(m: &AnyMachine) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "machine {}", m.kind());
    let (states, initial, accepting): (Vec<&String>, &String, &BTreeSet<String>) = match m {
        AnyMachine::TwoStack(m) => (m.states.iter().collect(), &m.initial, &m.accepting),
        AnyMachine::Pda1(m) => (m.states.iter().collect(), &m.initial, &m.accepting),
        AnyMachine::Pda2(m) => (m.states.iter().collect(), &m.initial, &m.accepting),
        AnyMachine::Dpda2(m) => (m.states.iter().collect(), &m.initial, &m.accepting),
        AnyMachine::Quantum(m) => (m.states.iter().collect(), &m.initial, &m.accepting),
    };
    line(&mut out, "states", &join(states));
    line(&mut out, "initial", initial);
    line(&mut out, "accept", &join(accepting));
    let ab = m.alphabets();
    line(&mut out, "input", &join(&ab.input));
    line(&mut out, "stack", &join(&ab.stack));
    if m.kind().has_tape() {
        line(&mut out, "tape", &join(&ab.tape));
    }
    match m {
        AnyMachine::TwoStack(TwoStackMachine { delta, .. })
        | AnyMachine::Dpda2(DpdaII { delta, .. }) => {
            out.push_str("trans\n");
            for ((from, token), to) in delta {
                let _ = writeln!(out, "{from} {token} -> {to}");
            }
        }
        AnyMachine::Pda2(m) => {
            out.push_str("trans\n");
            for ((from, token), targets) in &m.delta {
                let _ = match targets.len() {
                    1 => writeln!(out, "{from} {token} -> {}", join(targets)),
                    _ => writeln!(out, "{from} {token} -> {{{}}}", join(targets)),
                };
            }
        }
        AnyMachine::Pda1(m) => {
            line(&mut out, "bottom", &m.bottom);
            out.push_str("trans\n");
            for (key, moves) in &m.delta {
                for mv in moves {
                    let input = key.input.as_deref().unwrap_or(EPSILON);
                    let _ = writeln!(
                        out,
                        "{} {input} {} -> {} [{}]",
                        key.state,
                        key.top,
                        mv.target,
                        join(&mv.push)
                    );
                }
            }
        }
        AnyMachine::Quantum(m) => {
            for (token, u) in &m.unitaries {
                let _ = writeln!(out, "matrix {token}:");
                for i in 0..u.nrows() {
                    let row: Vec<String> =
                        (0..u.ncols()).map(|j| format_complex(u[(i, j)])).collect();
                    let _ = writeln!(out, "  {}", row.join(" "));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_pda2() {
        let m = parse_machine("machine pda2\nstates q0\ninitial q0\naccept q0\ninput 0\nstack Z\n")
            .unwrap();
        let AnyMachine::Pda2(m) = &m else {
            panic!("wrong kind")
        };
        assert!(m.delta.is_empty());
        assert_eq!(
            parse_machine(&serialize(&m.clone().into())).unwrap(),
            m.clone().into()
        );
    }

    #[test]
    fn undeclared_accepting_state() {
        let e =
            parse_machine("machine pda2\nstates q0\ninitial q0\naccept qx\ninput 0\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(e.column, 8);
        assert_eq!(
            e.kind,
            ParseErrorKind::Undeclared {
                what: "state",
                name: "qx".into()
            }
        );
        assert!(e.to_string().contains("qx"));
    }

    #[test]
    fn transitions_and_comments() {
        let text = "# a comment\nmachine pda2\nstates a b\ninitial a\naccept b\ninput 0 #\nstack X\ntrans\n  # inside\na 0 -> {a b}\na # -> b\nb push:X -> b\nb _ -> a\n";
        let AnyMachine::Pda2(m) = parse_machine(text).unwrap() else {
            panic!()
        };
        assert_eq!(m.transition_count(), 5);
        assert!(m.successors("a", &Token::input("#")).any(|s| s == "b"));
    }

    #[test]
    fn errors_have_locations() {
        let cases = [
            ("states q0\n", 1, ParseErrorKind::MissingHeader),
            (
                "machine pdx\n",
                1,
                ParseErrorKind::UnknownKind(MachineKind::from_str("pdx").unwrap_err()),
            ),
            (
                "machine pda2\nstates q\ninitial q\ninput 0\nstack 0\n",
                5,
                ParseErrorKind::Invalid("`0` is in both the input and the stack alphabet".into()),
            ),
            (
                "machine dpda2\nstates q\ninitial q\ninput 0\ntrans\nq 0 -> q\nq 0 -> q\n",
                7,
                ParseErrorKind::Nondeterministic {
                    state: "q".into(),
                    token: "0".into(),
                },
            ),
            (
                "machine pda2\nstates q\ninitial q\ninput 0\ntrans\nq push:Y -> q\n",
                6,
                ParseErrorKind::TokenNotAllowed("push:Y".into()),
            ),
            (
                "machine pda2\nstates q\ninitial q\ninput 0\ntrans\nstack X\n",
                6,
                ParseErrorKind::LateDeclaration,
            ),
        ];
        for (text, line, kind) in cases {
            let e = parse_machine(text).unwrap_err();
            assert_eq!((e.line, &e.kind), (line, &kind), "{text}");
        }
    }

    #[test]
    fn complex_literals() {
        for (text, re, im) in [
            ("1", 1.0, 0.0),
            ("-0.5+2i", -0.5, 2.0),
            ("3-i", 3.0, -1.0),
            ("i", 0.0, 1.0),
            ("-2.5i", 0.0, -2.5),
            ("1e-3+1e-2i", 1e-3, 1e-2),
        ] {
            assert_eq!(parse_complex(text), Some(C64::new(re, im)), "{text}");
        }
        assert_eq!(parse_complex("x"), None);
        let z = C64::new(0.1 + 0.2, -1.0 / 3.0);
        assert_eq!(parse_complex(&format_complex(z)), Some(z));
    }

    #[test]
    fn non_unitary_matrix_is_located() {
        let text = "machine qpda2\nstates a b\ninitial a\naccept b\ninput 0\nstack\nmatrix 0:\n  1 0\n  0 2\n";
        let e = parse_machine(text).unwrap_err();
        assert_eq!(e.line, 7);
        assert!(matches!(e.kind, ParseErrorKind::Invalid(ref s) if s.contains("not unitary")));
    }
}
