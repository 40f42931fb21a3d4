use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::{name_problem, PairOp, StackIndex, StackOp, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlphabetKind {
    Input,
    Stack,
    Tape,
}

impl fmt::Display for AlphabetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphabetKind::Input => "input",
            AlphabetKind::Stack => "stack",
            AlphabetKind::Tape => "tape",
        })
    }
}

/// The input, stack and tape alphabets of a machine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabets {
    pub input: BTreeSet<String>,
    pub stack: BTreeSet<String>,
    pub tape: BTreeSet<String>,
}

impl Alphabets {
    pub fn new<I, S, T>(input: I, stack: S, tape: T) -> Self
    where
        I: IntoIterator,
        I::Item: Into<String>,
        S: IntoIterator,
        S::Item: Into<String>,
        T: IntoIterator,
        T::Item: Into<String>,
    {
        Alphabets {
            input: input.into_iter().map(Into::into).collect(),
            stack: stack.into_iter().map(Into::into).collect(),
            tape: tape.into_iter().map(Into::into).collect(),
        }
    }

    pub fn get(&self, kind: AlphabetKind) -> &BTreeSet<String> {
        match kind {
            AlphabetKind::Input => &self.input,
            AlphabetKind::Stack => &self.stack,
            AlphabetKind::Tape => &self.tape,
        }
    }

    /// Reserved names, overlaps between alphabets, and an empty input alphabet.
    pub fn problems(&self) -> Vec<AlphabetProblem> {
        use AlphabetKind::*;
        let mut out = Vec::new();
        if self.input.is_empty() {
            out.push(AlphabetProblem::Empty(Input));
        }
        for kind in [Input, Stack, Tape] {
            for name in self.get(kind) {
                if let Some(reason) = name_problem(name) {
                    out.push(AlphabetProblem::Reserved {
                        kind,
                        name: name.clone(),
                        reason,
                    });
                }
            }
        }
        for (a, b) in [(Input, Stack), (Input, Tape), (Stack, Tape)] {
            for name in self.get(a).intersection(self.get(b)) {
                out.push(AlphabetProblem::Overlap {
                    name: name.clone(),
                    first: a,
                    second: b,
                });
            }
        }
        out
    }

    /// Γ(↕) without stack tags, pushes before pops.
    pub fn stack_ops(&self) -> Vec<StackOp> {
        self.tagged_ops(None)
    }

    pub fn tagged_ops(&self, stack: Option<StackIndex>) -> Vec<StackOp> {
        let ops = |f: fn(String) -> StackOp| self.stack.iter().cloned().map(f).collect::<Vec<_>>();
        let mut out = ops(StackOp::push);
        out.extend(ops(StackOp::pop));
        for op in &mut out {
            op.stack = stack;
        }
        out
    }

    /// Γ₁,₂(↕): every pair with at least one component.
    pub fn pair_ops(&self) -> Vec<PairOp> {
        let firsts = self.tagged_ops(Some(StackIndex::One));
        let seconds = self.tagged_ops(Some(StackIndex::Two));
        let mut out = Vec::new();
        for a in &firsts {
            for b in &seconds {
                out.push(PairOp::both(a.clone(), b.clone()));
            }
        }
        out.extend(firsts.into_iter().map(PairOp::first_only));
        out.extend(seconds.into_iter().map(PairOp::second_only));
        out
    }

    /// Σ ∪ Γ(↕), the letters of a single-stack machine (without epsilon).
    pub fn single_stack_tokens(&self) -> Vec<Token> {
        let mut out: Vec<Token> = self.input.iter().cloned().map(Token::Input).collect();
        out.extend(self.stack_ops().into_iter().map(Token::Op));
        out
    }

    /// Σ ∪ Γ₁,₂(↕) ∪ Δ, the letters of a two-stack machine.
    pub fn two_stack_tokens(&self) -> Vec<Token> {
        let mut out: Vec<Token> = self.input.iter().cloned().map(Token::Input).collect();
        out.extend(self.pair_ops().into_iter().map(Token::Pair));
        out.extend(self.tape.iter().cloned().map(Token::Tape));
        out
    }

    pub fn check_input<S: AsRef<str>>(&self, word: &[S]) -> Result<()> {
        match word.iter().find(|a| !self.input.contains(a.as_ref())) {
            Some(a) => Err(Error::SymbolNotInAlphabet(a.as_ref().to_string())),
            None => Ok(()),
        }
    }

    /// Splits command-line text into input symbols.
    ///
    /// Whitespace-separated text is split on whitespace. Otherwise the text is
    /// read one character per symbol, which requires every input symbol to be a
    /// single character.
    pub fn split_input(&self, text: &str) -> Result<Vec<String>> {
        let word: Vec<String> = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(str::to_string).collect()
        } else if text.is_empty() {
            Vec::new()
        } else if self.input.iter().all(|a| a.chars().count() == 1) {
            text.chars().map(String::from).collect()
        } else if self.input.contains(text) {
            vec![text.to_string()]
        } else {
            return Err(Error::UnsplittableInput(text.to_string()));
        };
        self.check_input(&word)?;
        Ok(word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphabetProblem {
    Empty(AlphabetKind),
    Reserved {
        kind: AlphabetKind,
        name: String,
        reason: &'static str,
    },
    Overlap {
        name: String,
        first: AlphabetKind,
        second: AlphabetKind,
    },
}

impl fmt::Display for AlphabetProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetProblem::Empty(kind) => write!(f, "the {kind} alphabet is empty"),
            AlphabetProblem::Reserved { kind, name, reason } => {
                write!(f, "{kind} symbol `{name}`: {reason}")
            }
            AlphabetProblem::Overlap {
                name,
                first,
                second,
            } => {
                write!(
                    f,
                    "`{name}` is in both the {first} and the {second} alphabet"
                )
            }
        }
    }
}
