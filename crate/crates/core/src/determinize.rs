//! Subset construction over the extended alphabet Σ ∪ Γ(↕), and the bounded
//! enumeration of a machine's language as the input projection of extended
//! words that are both accepted and stack-valid.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::bound::Bound;
use crate::error::Result;
use crate::machine::{DpdaII, PdaII, Validate};
use crate::symbol::{StackOp, Token};

pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// ε-closure of `states` in `m`.
pub fn eps_closure(m: &PdaII, states: &BTreeSet<String>) -> BTreeSet<String> {
    let mut out = states.clone();
    let mut work: Vec<String> = states.iter().cloned().collect();
    while let Some(q) = work.pop() {
        for r in m.successors(&q, &Token::Epsilon) {
            if out.insert(r.clone()) {
                work.push(r.clone());
            }
        }
    }
    out
}

/// A state of the determinized machine: an ε-closed set of source states.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetState {
    pub members: BTreeSet<String>,
}

/// The determinized machine with each of its states' subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinized {
    pub machine: DpdaII,
    pub subsets: BTreeMap<String, SubsetState>,
}

pub fn subset_construct(m: &PdaII) -> Result<DpdaII> {
    Ok(subset_construct_traced(m)?.machine)
}

/// Subset construction; state names join the members with `+`, and only
/// reachable nonempty subsets are created.
pub fn subset_construct_traced(m: &PdaII) -> Result<Determinized> {
    m.ensure_valid()?;
    let letters = m.alphabets.single_stack_tokens();
    let start = eps_closure(m, &BTreeSet::from([m.initial.clone()]));

    let mut names: BTreeMap<BTreeSet<String>, String> = BTreeMap::new();
    let mut used: HashSet<String> = HashSet::new();
    let mut name_of = |set: &BTreeSet<String>,
                       names: &mut BTreeMap<BTreeSet<String>, String>|
     -> (String, bool) {
        if let Some(n) = names.get(set) {
            return (n.clone(), false);
        }
        let mut name = set.iter().cloned().collect::<Vec<_>>().join("+");
        while !used.insert(name.clone()) {
            name.push('\'');
        }
        names.insert(set.clone(), name.clone());
        (name, true)
    };

    let (start_name, _) = name_of(&start, &mut names);
    let mut out = DpdaII::new(
        Vec::<String>::new(),
        m.alphabets.clone(),
        &start_name,
        Vec::<String>::new(),
    );
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        let (from, _) = name_of(&set, &mut names);
        out.states.insert(from.clone());
        if set.iter().any(|q| m.accepting.contains(q)) {
            out.accepting.insert(from.clone());
        }
        for token in &letters {
            let image: BTreeSet<String> = set
                .iter()
                .flat_map(|q| m.successors(q, token))
                .cloned()
                .collect();
            if image.is_empty() {
                continue;
            }
            let next = eps_closure(m, &image);
            let (to, fresh) = name_of(&next, &mut names);
            if fresh {
                queue.push_back(next);
            }
            out.insert(&from, token.clone(), &to);
        }
    }
    let subsets = names
        .into_iter()
        .map(|(members, name)| (name, SubsetState { members }))
        .collect();
    Ok(Determinized {
        machine: out,
        subsets,
    })
}

/// A machine whose extended-alphabet language can be enumerated.
#[derive(Clone, Copy)]
pub enum ExtendedMachine<'a> {
    Pda2(&'a PdaII),
    Dpda2(&'a DpdaII),
}

impl<'a> From<&'a PdaII> for ExtendedMachine<'a> {
    fn from(m: &'a PdaII) -> Self {
        ExtendedMachine::Pda2(m)
    }
}

impl<'a> From<&'a DpdaII> for ExtendedMachine<'a> {
    fn from(m: &'a DpdaII) -> Self {
        ExtendedMachine::Dpda2(m)
    }
}

/// Input projections of every word w over Σ ∪ Γ(↕) with |w| ≤ `bound.len`
/// that the machine accepts as a finite automaton and whose stack projection
/// is valid. A length-bounded part of the recognized language.
pub fn corollary1_language<'a>(
    m: impl Into<ExtendedMachine<'a>>,
    bound: impl Into<Bound>,
) -> Result<BTreeSet<Vec<String>>> {
    let max_len = bound.into().checked(DEFAULT_ENUMERATION_CAP)?;
    let m = match m.into() {
        ExtendedMachine::Pda2(m) => {
            m.ensure_valid()?;
            m.clone()
        }
        ExtendedMachine::Dpda2(m) => {
            m.ensure_valid()?;
            m.to_pda2()
        }
    };
    let mut search = ShortWitnesses {
        m: &m,
        letters: m.alphabets.single_stack_tokens(),
        max_len,
        out: BTreeSet::new(),
        input: Vec::new(),
        stack: Vec::new(),
        len: 0,
    };
    let start = eps_closure(&m, &BTreeSet::from([m.initial.clone()]));
    search.extend(start);
    Ok(search.out)
}

struct ShortWitnesses<'m> {
    m: &'m PdaII,
    letters: Vec<Token>,
    max_len: usize,
    out: BTreeSet<Vec<String>>,
    input: Vec<String>,
    stack: Vec<String>,
    len: usize,
}

impl ShortWitnesses<'_> {
    fn extend(&mut self, current: BTreeSet<String>) {
        if self.stack.is_empty() && current.iter().any(|q| self.m.accepting.contains(q)) {
            self.out.insert(self.input.clone());
        }
        if self.len == self.max_len {
            return;
        }
        for i in 0..self.letters.len() {
            let token = self.letters[i].clone();
            let image: BTreeSet<String> = current
                .iter()
                .flat_map(|q| self.m.successors(q, &token))
                .cloned()
                .collect();
            if image.is_empty() {
                continue;
            }
            let next = eps_closure(self.m, &image);
            self.len += 1;
            match &token {
                Token::Input(a) if self.max_len - self.len >= self.stack.len() => {
                    self.input.push(a.clone());
                    self.extend(next);
                    self.input.pop();
                }
                Token::Op(StackOp { symbol, .. }) if token_is_push(&token) => {
                    if self.max_len - self.len > self.stack.len() {
                        self.stack.push(symbol.clone());
                        self.extend(next);
                        self.stack.pop();
                    }
                }
                Token::Op(StackOp { symbol, .. }) => {
                    if self.stack.last() == Some(symbol) {
                        let top = self.stack.pop().expect("checked above");
                        self.extend(next);
                        self.stack.push(top);
                    }
                }
                Token::Input(_) => {}
                _ => unreachable!("single-stack letters"),
            }
            self.len -= 1;
        }
    }
}

fn token_is_push(t: &Token) -> bool {
    matches!(t, Token::Op(op) if op.is_push())
}
