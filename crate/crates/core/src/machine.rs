//! Machine definitions: two-stack machines, PDA-I, PDA-II, deterministic PDA-II
//! and plain DFAs, with the well-formedness checks shared by every constructor.
//!
//! Transition relations are partial. A missing entry means the computation
//! branch dies, exactly as if it led to a non-accepting sink.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::alphabet::{AlphabetProblem, Alphabets};
use crate::error::{Error, Result};
use crate::symbol::{name_problem, PairOp, StackIndex, Token};

/// Where in a machine definition a violation was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    Initial,
    Accepting,
    Bottom,
    Transition { from: String, label: String },
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Initial => f.write_str("initial state"),
            Site::Accepting => f.write_str("accepting set"),
            Site::Bottom => f.write_str("bottom-of-stack symbol"),
            Site::Transition { from, label } => write!(f, "transition `{from} {label}`"),
        }
    }
}

/// One broken invariant in a machine definition.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Alphabet(AlphabetProblem),
    NoStates,
    BadStateName {
        state: String,
        reason: &'static str,
    },
    DuplicateState(String),
    UnknownState {
        state: String,
        site: Site,
    },
    UnknownSymbol {
        symbol: String,
        site: Site,
    },
    TokenNotAllowed {
        token: String,
        site: Site,
    },
    TapeNotAllowed,
    MissingUnitary(String),
    UnexpectedUnitary(String),
    WrongDimension {
        token: String,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    NotUnitary {
        token: String,
        residual: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Alphabet(p) => p.fmt(f),
            Violation::NoStates => f.write_str("the machine has no states"),
            Violation::BadStateName { state, reason } => write!(f, "state `{state}`: {reason}"),
            Violation::DuplicateState(s) => write!(f, "state `{s}` is declared twice"),
            Violation::UnknownState { state, site } => {
                write!(f, "undeclared state `{state}` in {site}")
            }
            Violation::UnknownSymbol { symbol, site } => {
                write!(f, "`{symbol}` is not a stack symbol ({site})")
            }
            Violation::TokenNotAllowed { token, site } => {
                write!(
                    f,
                    "token `{token}` is outside the annotation alphabet ({site})"
                )
            }
            Violation::TapeNotAllowed => f.write_str("this machine kind has no tape alphabet"),
            Violation::MissingUnitary(t) => write!(f, "no unitary for token `{t}`"),
            Violation::UnexpectedUnitary(t) => {
                write!(f, "unitary for `{t}`, which is not a token of this machine")
            }
            Violation::WrongDimension {
                token,
                rows,
                cols,
                expected,
            } => {
                write!(
                    f,
                    "unitary for `{token}` is {rows}x{cols}, expected {expected}x{expected}"
                )
            }
            Violation::NotUnitary { token, residual } => {
                write!(
                    f,
                    "matrix for `{token}` is not unitary (residual {residual:e})"
                )
            }
        }
    }
}

/// Well-formedness checking, implemented by every machine type.
pub trait Validate {
    fn violations(&self) -> Vec<Violation>;

    fn ensure_valid(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMachine(v))
        }
    }
}

/// Returns every broken invariant of `machine`; empty means well-formed.
pub fn validate_machine<M: Validate + ?Sized>(machine: &M) -> Vec<Violation> {
    machine.violations()
}

/// Which annotation alphabet a token is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Letters {
    /// Σ ∪ Γ(↕), plus ε when `epsilon` holds.
    SingleStack { epsilon: bool },
    /// Σ ∪ Γ₁,₂(↕) ∪ Δ.
    TwoStack,
}

impl Alphabets {
    pub(crate) fn admits(&self, token: &Token, letters: Letters) -> bool {
        match (token, letters) {
            (Token::Input(a), _) => self.input.contains(a),
            (Token::Epsilon, Letters::SingleStack { epsilon }) => epsilon,
            (Token::Op(op), Letters::SingleStack { .. }) => {
                op.stack.is_none() && self.stack.contains(&op.symbol)
            }
            (Token::Pair(pair), Letters::TwoStack) => self.admits_pair(pair),
            (Token::Tape(t), Letters::TwoStack) => self.tape.contains(t),
            _ => false,
        }
    }

    fn admits_pair(&self, pair: &PairOp) -> bool {
        let side_ok = |op: Option<&crate::symbol::StackOp>, index| {
            op.is_none_or(|op| op.stack == Some(index) && self.stack.contains(&op.symbol))
        };
        side_ok(pair.first(), StackIndex::One) && side_ok(pair.second(), StackIndex::Two)
    }
}

pub(crate) fn state_violations<'a>(
    states: &BTreeSet<String>,
    initial: &str,
    accepting: impl IntoIterator<Item = &'a String>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if states.is_empty() {
        out.push(Violation::NoStates);
    }
    for s in states {
        if let Some(reason) = name_problem(s).or_else(|| {
            s.starts_with('#')
                .then_some("state names may not start with `#`")
        }) {
            out.push(Violation::BadStateName {
                state: s.clone(),
                reason,
            });
        }
    }
    if !states.contains(initial) {
        out.push(Violation::UnknownState {
            state: initial.to_string(),
            site: Site::Initial,
        });
    }
    for f in accepting {
        if !states.contains(f) {
            out.push(Violation::UnknownState {
                state: f.clone(),
                site: Site::Accepting,
            });
        }
    }
    out
}

pub(crate) fn alphabet_violations(alphabets: &Alphabets, tape_allowed: bool) -> Vec<Violation> {
    let mut out: Vec<Violation> = alphabets
        .problems()
        .into_iter()
        .map(Violation::Alphabet)
        .collect();
    if !tape_allowed && !alphabets.tape.is_empty() {
        out.push(Violation::TapeNotAllowed);
    }
    out
}

fn transition_violations<'a>(
    states: &BTreeSet<String>,
    alphabets: &Alphabets,
    letters: Letters,
    entries: impl IntoIterator<Item = (&'a String, &'a Token, &'a String)>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for (from, token, to) in entries {
        let site = || Site::Transition {
            from: from.clone(),
            label: token.to_string(),
        };
        if !states.contains(from) {
            out.push(Violation::UnknownState {
                state: from.clone(),
                site: site(),
            });
        }
        if !alphabets.admits(token, letters) {
            out.push(Violation::TokenNotAllowed {
                token: token.to_string(),
                site: site(),
            });
        }
        if !states.contains(to) {
            out.push(Violation::UnknownState {
                state: to.clone(),
                site: site(),
            });
        }
    }
    out
}

/// A two-stack machine: a deterministic-per-token automaton over input symbols,
/// paired stack operations and tape symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStackMachine {
    pub states: BTreeSet<String>,
    pub alphabets: Alphabets,
    pub delta: BTreeMap<(String, Token), String>,
    pub initial: String,
    pub accepting: BTreeSet<String>,
}

impl TwoStackMachine {
    pub fn new<Q, F>(states: Q, alphabets: Alphabets, initial: &str, accepting: F) -> Self
    where
        Q: IntoIterator,
        Q::Item: Into<String>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        TwoStackMachine {
            states: states.into_iter().map(Into::into).collect(),
            alphabets,
            delta: BTreeMap::new(),
            initial: initial.to_string(),
            accepting: accepting.into_iter().map(Into::into).collect(),
        }
    }

    /// Sets δ(from, token) = to, returning the previous target if there was one.
    pub fn insert(&mut self, from: &str, token: Token, to: &str) -> Option<String> {
        self.delta.insert((from.to_string(), token), to.to_string())
    }

    pub fn step(&self, state: &str, token: &Token) -> Option<&String> {
        self.delta.get(&(state.to_string(), token.clone()))
    }

    /// The single-stack reading of this machine, if it only ever touches
    /// stack 1 and has no tape symbols: it is then a deterministic PDA-II.
    pub fn as_dpda2(&self) -> Option<DpdaII> {
        if !self.alphabets.tape.is_empty() {
            return None;
        }
        let mut delta = BTreeMap::new();
        for ((from, token), to) in &self.delta {
            let token = match token {
                Token::Input(_) => token.clone(),
                Token::Pair(pair) if pair.second().is_none() => {
                    let mut op = pair.first()?.clone();
                    op.stack = None;
                    Token::Op(op)
                }
                _ => return None,
            };
            delta.insert((from.clone(), token), to.clone());
        }
        Some(DpdaII {
            states: self.states.clone(),
            alphabets: self.alphabets.clone(),
            delta,
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
        })
    }
}

impl Validate for TwoStackMachine {
    fn violations(&self) -> Vec<Violation> {
        let mut out = alphabet_violations(&self.alphabets, true);
        out.extend(state_violations(
            &self.states,
            &self.initial,
            &self.accepting,
        ));
        out.extend(transition_violations(
            &self.states,
            &self.alphabets,
            Letters::TwoStack,
            self.delta.iter().map(|((q, t), r)| (q, t, r)),
        ));
        out
    }
}

/// Left-hand side of a PDA-I transition: state, input symbol or ε, stack top.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PdaIKey {
    pub state: String,
    pub input: Option<String>,
    pub top: String,
}

/// Right-hand side of a PDA-I transition: the top is replaced by `push`,
/// whose first symbol ends up on top.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PdaIMove {
    pub target: String,
    pub push: Vec<String>,
}

/// A classical pushdown automaton accepting by final state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaI {
    pub states: BTreeSet<String>,
    pub alphabets: Alphabets,
    pub delta: BTreeMap<PdaIKey, BTreeSet<PdaIMove>>,
    pub initial: String,
    pub bottom: String,
    pub accepting: BTreeSet<String>,
}

impl PdaI {
    pub fn new<Q, F>(
        states: Q,
        alphabets: Alphabets,
        initial: &str,
        bottom: &str,
        accepting: F,
    ) -> Self
    where
        Q: IntoIterator,
        Q::Item: Into<String>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        PdaI {
            states: states.into_iter().map(Into::into).collect(),
            alphabets,
            delta: BTreeMap::new(),
            initial: initial.to_string(),
            bottom: bottom.to_string(),
            accepting: accepting.into_iter().map(Into::into).collect(),
        }
    }

    /// Adds (to, push) ∈ δ(from, input, top); `input = None` is an ε-move.
    pub fn insert(
        &mut self,
        from: &str,
        input: Option<&str>,
        top: &str,
        to: &str,
        push: &[&str],
    ) -> bool {
        let key = PdaIKey {
            state: from.to_string(),
            input: input.map(str::to_string),
            top: top.to_string(),
        };
        let mv = PdaIMove {
            target: to.to_string(),
            push: push.iter().map(|s| s.to_string()).collect(),
        };
        self.delta.entry(key).or_default().insert(mv)
    }

    pub fn transition_count(&self) -> usize {
        self.delta.values().map(BTreeSet::len).sum()
    }
}

impl Validate for PdaI {
    fn violations(&self) -> Vec<Violation> {
        let mut out = alphabet_violations(&self.alphabets, false);
        out.extend(state_violations(
            &self.states,
            &self.initial,
            &self.accepting,
        ));
        if !self.alphabets.stack.contains(&self.bottom) {
            out.push(Violation::UnknownSymbol {
                symbol: self.bottom.clone(),
                site: Site::Bottom,
            });
        }
        for (key, moves) in &self.delta {
            let label = format!(
                "{} {}",
                key.input.as_deref().unwrap_or(crate::symbol::EPSILON),
                key.top
            );
            let site = || Site::Transition {
                from: key.state.clone(),
                label: label.clone(),
            };
            if !self.states.contains(&key.state) {
                out.push(Violation::UnknownState {
                    state: key.state.clone(),
                    site: site(),
                });
            }
            if let Some(a) = &key.input {
                if !self.alphabets.input.contains(a) {
                    out.push(Violation::TokenNotAllowed {
                        token: a.clone(),
                        site: site(),
                    });
                }
            }
            if !self.alphabets.stack.contains(&key.top) {
                out.push(Violation::UnknownSymbol {
                    symbol: key.top.clone(),
                    site: site(),
                });
            }
            for mv in moves {
                if !self.states.contains(&mv.target) {
                    out.push(Violation::UnknownState {
                        state: mv.target.clone(),
                        site: site(),
                    });
                }
                for x in mv
                    .push
                    .iter()
                    .filter(|x| !self.alphabets.stack.contains(*x))
                {
                    out.push(Violation::UnknownSymbol {
                        symbol: x.clone(),
                        site: site(),
                    });
                }
            }
        }
        out
    }
}

/// A pushdown automaton presented as a nondeterministic automaton over
/// Σ ∪ Γ(↕) ∪ {ε}, accepting when some run ends in F with a valid stack projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaII {
    pub states: BTreeSet<String>,
    pub alphabets: Alphabets,
    pub delta: BTreeMap<(String, Token), BTreeSet<String>>,
    pub initial: String,
    pub accepting: BTreeSet<String>,
}

impl PdaII {
    pub fn new<Q, F>(states: Q, alphabets: Alphabets, initial: &str, accepting: F) -> Self
    where
        Q: IntoIterator,
        Q::Item: Into<String>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        PdaII {
            states: states.into_iter().map(Into::into).collect(),
            alphabets,
            delta: BTreeMap::new(),
            initial: initial.to_string(),
            accepting: accepting.into_iter().map(Into::into).collect(),
        }
    }

    /// Adds `to` ∈ δ(from, token).
    pub fn insert(&mut self, from: &str, token: Token, to: &str) -> bool {
        self.delta
            .entry((from.to_string(), token))
            .or_default()
            .insert(to.to_string())
    }

    pub fn successors(&self, state: &str, token: &Token) -> impl Iterator<Item = &String> {
        self.delta
            .get(&(state.to_string(), token.clone()))
            .into_iter()
            .flatten()
    }

    /// Number of (from, token, to) entries.
    pub fn transition_count(&self) -> usize {
        self.delta.values().map(BTreeSet::len).sum()
    }

    /// Accepts `word` over Σ ∪ Γ(↕) read as a plain ε-NFA, ignoring stack validity.
    pub fn accepts_extended(&self, word: &[Token]) -> bool {
        let closure = |set: BTreeSet<String>| crate::determinize::eps_closure(self, &set);
        let mut current = closure(BTreeSet::from([self.initial.clone()]));
        for token in word {
            let next = current
                .iter()
                .flat_map(|q| self.successors(q, token))
                .cloned()
                .collect();
            current = closure(next);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.accepting.contains(q))
    }
}

impl Validate for PdaII {
    fn violations(&self) -> Vec<Violation> {
        let mut out = alphabet_violations(&self.alphabets, false);
        out.extend(state_violations(
            &self.states,
            &self.initial,
            &self.accepting,
        ));
        out.extend(transition_violations(
            &self.states,
            &self.alphabets,
            Letters::SingleStack { epsilon: true },
            self.delta
                .iter()
                .flat_map(|((q, t), rs)| rs.iter().map(move |r| (q, t, r))),
        ));
        out
    }
}

/// A deterministic PDA-II: at most one successor per (state, token), no ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpdaII {
    pub states: BTreeSet<String>,
    pub alphabets: Alphabets,
    pub delta: BTreeMap<(String, Token), String>,
    pub initial: String,
    pub accepting: BTreeSet<String>,
}

impl DpdaII {
    pub fn new<Q, F>(states: Q, alphabets: Alphabets, initial: &str, accepting: F) -> Self
    where
        Q: IntoIterator,
        Q::Item: Into<String>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        DpdaII {
            states: states.into_iter().map(Into::into).collect(),
            alphabets,
            delta: BTreeMap::new(),
            initial: initial.to_string(),
            accepting: accepting.into_iter().map(Into::into).collect(),
        }
    }

    pub fn insert(&mut self, from: &str, token: Token, to: &str) -> Option<String> {
        self.delta.insert((from.to_string(), token), to.to_string())
    }

    pub fn step(&self, state: &str, token: &Token) -> Option<&String> {
        self.delta.get(&(state.to_string(), token.clone()))
    }

    /// The same machine as a PDA-II with singleton images.
    pub fn to_pda2(&self) -> PdaII {
        PdaII {
            states: self.states.clone(),
            alphabets: self.alphabets.clone(),
            delta: self
                .delta
                .iter()
                .map(|(key, to)| (key.clone(), BTreeSet::from([to.clone()])))
                .collect(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
        }
    }

    /// DFA-style acceptance of `word` over Σ ∪ Γ(↕).
    pub fn accepts_extended(&self, word: &[Token]) -> bool {
        let mut state = &self.initial;
        for token in word {
            match self.step(state, token) {
                Some(next) => state = next,
                None => return false,
            }
        }
        self.accepting.contains(state)
    }
}

impl Validate for DpdaII {
    fn violations(&self) -> Vec<Violation> {
        let mut out = alphabet_violations(&self.alphabets, false);
        out.extend(state_violations(
            &self.states,
            &self.initial,
            &self.accepting,
        ));
        out.extend(transition_violations(
            &self.states,
            &self.alphabets,
            Letters::SingleStack { epsilon: false },
            self.delta.iter().map(|((q, t), r)| (q, t, r)),
        ));
        out
    }
}

/// A deterministic finite automaton over input symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub states: BTreeSet<String>,
    pub input: BTreeSet<String>,
    pub delta: BTreeMap<(String, String), String>,
    pub initial: String,
    pub accepting: BTreeSet<String>,
}

impl Dfa {
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut state = self.initial.clone();
        for a in word {
            match self.delta.get(&(state, a.as_ref().to_string())) {
                Some(next) => state = next.clone(),
                None => return false,
            }
        }
        self.accepting.contains(&state)
    }
}

impl Validate for Dfa {
    fn violations(&self) -> Vec<Violation> {
        let alphabets = Alphabets {
            input: self.input.clone(),
            ..Default::default()
        };
        let mut out = alphabet_violations(&alphabets, false);
        out.extend(state_violations(
            &self.states,
            &self.initial,
            &self.accepting,
        ));
        for ((q, a), r) in &self.delta {
            let site = || Site::Transition {
                from: q.clone(),
                label: a.clone(),
            };
            for s in [q, r] {
                if !self.states.contains(s) {
                    out.push(Violation::UnknownState {
                        state: s.clone(),
                        site: site(),
                    });
                }
            }
            if !self.input.contains(a) {
                out.push(Violation::TokenNotAllowed {
                    token: a.clone(),
                    site: site(),
                });
            }
        }
        out
    }
}

/// A DFA as a two-stack machine that never touches its stacks and has no tape.
pub fn embed_dfa_as_two_stack(dfa: &Dfa) -> TwoStackMachine {
    TwoStackMachine {
        states: dfa.states.clone(),
        alphabets: Alphabets {
            input: dfa.input.clone(),
            ..Default::default()
        },
        delta: dfa
            .delta
            .iter()
            .map(|((q, a), r)| ((q.clone(), Token::Input(a.clone())), r.clone()))
            .collect(),
        initial: dfa.initial.clone(),
        accepting: dfa.accepting.clone(),
    }
}
