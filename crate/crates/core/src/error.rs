use thiserror::Error;

use crate::machine::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("a pair token needs at least one stack operation")]
    EmptyPair,
    #[error("operations on different stacks in one single-stack sequence")]
    MixedStackIndices,
    #[error("input symbol `{0}` is not in the input alphabet")]
    SymbolNotInAlphabet(String),
    #[error("token `{0}` is not in the machine's annotation alphabet")]
    TokenOutsideAlphabet(String),
    #[error("cannot split `{0}` into input symbols; separate symbols with spaces")]
    UnsplittableInput(String),
    #[error("bound {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid machine: {}", render_violations(.0))]
    InvalidMachine(Vec<Violation>),
    #[error("sentinel `{0}` is already a stack symbol; choose a different bottom-of-stack name")]
    SentinelCollision(String),
    #[error("the stack alphabet is empty")]
    EmptyStackAlphabet,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("no unitary for token `{0}`")]
    UnknownToken(String),
    #[error("{0}")]
    Parse(#[from] crate::format::ParseError),
}

fn render_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
