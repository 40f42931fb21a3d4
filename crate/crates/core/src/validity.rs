//! Validity of stack-operation strings: starting from an empty stack, every pop
//! removes a matching top symbol and the stack ends empty.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::symbol::{Direction, PairOp, StackOp};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Valid,
    /// 1-based position of the first pop on an empty stack or a mismatched top.
    IllegalPopAt(usize),
    /// Stack contents left over, bottom first.
    NonemptyFinal(Vec<String>),
}

/// Step-by-step stack contents for one sequence of operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackTrace {
    /// (1-based position, stack contents after the step, bottom first).
    pub steps: Vec<(usize, Vec<String>)>,
    pub outcome: Outcome,
}

impl StackTrace {
    pub fn is_valid(&self) -> bool {
        self.outcome == Outcome::Valid
    }
}

impl fmt::Display for StackTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, contents) in &self.steps {
            writeln!(f, "{pos:>4}  [{}]", contents.join(" "))?;
        }
        match &self.outcome {
            Outcome::Valid => write!(f, "valid"),
            Outcome::IllegalPopAt(pos) => write!(f, "invalid: illegal pop at position {pos}"),
            Outcome::NonemptyFinal(rest) => {
                write!(f, "invalid: stack not empty at end [{}]", rest.join(" "))
            }
        }
    }
}

/// Runs `ops` against an initially empty stack.
///
/// All operations must carry the same stack tag (or none). Positions in the
/// trace are 1-based; a failing pop is not recorded as a step.
pub fn check_valid_single(ops: &[StackOp]) -> Result<StackTrace> {
    if let Some(first) = ops.first() {
        if ops.iter().any(|op| op.stack != first.stack) {
            return Err(Error::MixedStackIndices);
        }
    }
    Ok(trace(ops.iter()))
}

fn trace<'a>(ops: impl Iterator<Item = &'a StackOp>) -> StackTrace {
    let mut stack: Vec<String> = Vec::new();
    let mut steps = Vec::new();
    for (i, op) in ops.enumerate() {
        let pos = i + 1;
        match op.direction {
            Direction::Push => stack.push(op.symbol.clone()),
            Direction::Pop => {
                if stack.last() != Some(&op.symbol) {
                    return StackTrace {
                        steps,
                        outcome: Outcome::IllegalPopAt(pos),
                    };
                }
                stack.pop();
            }
        }
        steps.push((pos, stack.clone()));
    }
    let outcome = if stack.is_empty() {
        Outcome::Valid
    } else {
        Outcome::NonemptyFinal(stack)
    };
    StackTrace { steps, outcome }
}

/// Checks the stack-1 and stack-2 projections of a pair string separately.
/// The pair string is valid iff both traces are.
pub fn check_valid_two(ops: &[PairOp]) -> (StackTrace, StackTrace) {
    (
        trace(ops.iter().filter_map(PairOp::first)),
        trace(ops.iter().filter_map(PairOp::second)),
    )
}

pub fn is_valid_pair_string(ops: &[PairOp]) -> bool {
    let (a, b) = check_valid_two(ops);
    a.is_valid() && b.is_valid()
}

/// Every valid sequence over Γ(↕) of length at most `bound.len`, sorted.
pub fn enumerate_valid(
    stack: &BTreeSet<String>,
    bound: impl Into<Bound>,
) -> Result<Vec<Vec<StackOp>>> {
    let max_len = bound.into().checked(DEFAULT_ENUMERATION_CAP)?;
    let symbols: Vec<&String> = stack.iter().collect();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    let mut open: Vec<&String> = Vec::new();
    extend_valid(&symbols, max_len, &mut prefix, &mut open, &mut out);
    out.sort();
    Ok(out)
}

fn extend_valid<'a>(
    symbols: &[&'a String],
    max_len: usize,
    prefix: &mut Vec<StackOp>,
    open: &mut Vec<&'a String>,
    out: &mut Vec<Vec<StackOp>>,
) {
    if open.is_empty() {
        out.push(prefix.clone());
    }
    let room = max_len - prefix.len();
    if room > open.len() {
        for &x in symbols {
            prefix.push(StackOp::push(x.clone()));
            open.push(x);
            extend_valid(symbols, max_len, prefix, open, out);
            open.pop();
            prefix.pop();
        }
    }
    if let Some(&top) = open.last() {
        prefix.push(StackOp::pop(top.clone()));
        open.pop();
        extend_valid(symbols, max_len, prefix, open, out);
        open.push(top);
        prefix.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GrammarSymbol {
    Nonterminal(String),
    Terminal(StackOp),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production {
    pub lhs: String,
    pub rhs: Vec<GrammarSymbol>,
}

/// A context-free grammar over stack operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub start: String,
    pub productions: Vec<Production>,
}

/// S → ε | S S | X(↓) S X(↑) for each X ∈ Γ.
pub fn valid_string_grammar(stack: &BTreeSet<String>) -> Result<Grammar> {
    if stack.is_empty() {
        return Err(Error::EmptyStackAlphabet);
    }
    let s = || GrammarSymbol::Nonterminal("S".to_string());
    let mut productions = vec![
        Production {
            lhs: "S".into(),
            rhs: vec![],
        },
        Production {
            lhs: "S".into(),
            rhs: vec![s(), s()],
        },
    ];
    for x in stack {
        productions.push(Production {
            lhs: "S".into(),
            rhs: vec![
                GrammarSymbol::Terminal(StackOp::push(x.clone())),
                s(),
                GrammarSymbol::Terminal(StackOp::pop(x.clone())),
            ],
        });
    }
    Ok(Grammar {
        start: "S".into(),
        productions,
    })
}

impl Grammar {
    fn nullable(&self) -> HashSet<&str> {
        let mut nullable = HashSet::new();
        loop {
            let before = nullable.len();
            for p in &self.productions {
                let all_nullable = p.rhs.iter().all(|sym| match sym {
                    GrammarSymbol::Nonterminal(n) => nullable.contains(n.as_str()),
                    GrammarSymbol::Terminal(_) => false,
                });
                if all_nullable {
                    nullable.insert(p.lhs.as_str());
                }
            }
            if nullable.len() == before {
                return nullable;
            }
        }
    }

    /// Earley recognition, with nullable nonterminals advanced at prediction time.
    pub fn generates(&self, word: &[StackOp]) -> bool {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        struct Item {
            rule: usize,
            dot: usize,
            origin: usize,
        }

        let nullable = self.nullable();
        let n = word.len();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
        let add =
            |sets: &mut Vec<Vec<Item>>, seen: &mut Vec<HashSet<Item>>, at: usize, item: Item| {
                if seen[at].insert(item) {
                    sets[at].push(item);
                }
            };
        for (rule, p) in self.productions.iter().enumerate() {
            if p.lhs == self.start {
                add(
                    &mut sets,
                    &mut seen,
                    0,
                    Item {
                        rule,
                        dot: 0,
                        origin: 0,
                    },
                );
            }
        }
        for i in 0..=n {
            let mut k = 0;
            while k < sets[i].len() {
                let item = sets[i][k];
                k += 1;
                let rhs = &self.productions[item.rule].rhs;
                match rhs.get(item.dot) {
                    None => {
                        let lhs = &self.productions[item.rule].lhs;
                        let mut j = 0;
                        while j < sets[item.origin].len() {
                            let parent = sets[item.origin][j];
                            j += 1;
                            if let Some(GrammarSymbol::Nonterminal(b)) =
                                self.productions[parent.rule].rhs.get(parent.dot)
                            {
                                if b == lhs {
                                    add(
                                        &mut sets,
                                        &mut seen,
                                        i,
                                        Item {
                                            dot: parent.dot + 1,
                                            ..parent
                                        },
                                    );
                                }
                            }
                        }
                    }
                    Some(GrammarSymbol::Nonterminal(b)) => {
                        for (rule, p) in self.productions.iter().enumerate() {
                            if &p.lhs == b {
                                add(
                                    &mut sets,
                                    &mut seen,
                                    i,
                                    Item {
                                        rule,
                                        dot: 0,
                                        origin: i,
                                    },
                                );
                            }
                        }
                        if nullable.contains(b.as_str()) {
                            add(
                                &mut sets,
                                &mut seen,
                                i,
                                Item {
                                    dot: item.dot + 1,
                                    ..item
                                },
                            );
                        }
                    }
                    Some(GrammarSymbol::Terminal(t)) => {
                        if i < n && &word[i] == t {
                            add(
                                &mut sets,
                                &mut seen,
                                i + 1,
                                Item {
                                    dot: item.dot + 1,
                                    ..item
                                },
                            );
                        }
                    }
                }
            }
        }
        sets[n].iter().any(|item| {
            let p = &self.productions[item.rule];
            item.origin == 0 && p.lhs == self.start && item.dot == p.rhs.len()
        })
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.productions {
            write!(f, "{} ->", p.lhs)?;
            if p.rhs.is_empty() {
                write!(f, " _")?;
            }
            for sym in &p.rhs {
                match sym {
                    GrammarSymbol::Nonterminal(n) => write!(f, " {n}")?,
                    GrammarSymbol::Terminal(t) => write!(f, " {t}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
