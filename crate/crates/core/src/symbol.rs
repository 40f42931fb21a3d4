//! Annotation tokens: input symbols, stack operations, paired stack operations,
//! tape symbols and epsilon, together with their text syntax.
//!
//! | token            | text              |
//! |------------------|-------------------|
//! | input symbol `a` | `a`               |
//! | push / pop `X`   | `push:X`, `pop:X` |
//! | on stack 1 or 2  | `push1:X`, `pop2:Y` |
//! | pair             | `(push1:X,pop2:Y)`, `(push1:X,_)`, `(_,pop2:Y)` |
//! | tape symbol `t`  | `tape:t`          |
//! | epsilon          | `_`               |

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The literal used for epsilon in every text form.
pub const EPSILON: &str = "_";

/// Words that open a declaration line in machine files.
pub const KEYWORDS: &[&str] = &[
    "machine", "states", "initial", "accept", "input", "stack", "tape", "bottom", "trans", "matrix",
];

const RESERVED_CHARS: &[char] = &[':', '(', ')', ',', '{', '}', '[', ']'];

/// Why a name cannot be used for a state or symbol.
pub fn name_problem(name: &str) -> Option<&'static str> {
    if name.is_empty() {
        Some("empty name")
    } else if name == EPSILON {
        Some("`_` is reserved for epsilon")
    } else if name == "->" {
        Some("`->` is reserved")
    } else if name.chars().any(char::is_whitespace) {
        Some("names may not contain whitespace")
    } else if name.contains(RESERVED_CHARS) {
        Some("names may not contain any of `:(),{}[]`")
    } else if KEYWORDS.contains(&name) {
        Some("names may not be file-format keywords")
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Push,
    Pop,
}

impl Direction {
    fn keyword(self) -> &'static str {
        match self {
            Direction::Push => "push",
            Direction::Pop => "pop",
        }
    }
}

/// Which of the two stacks of a two-stack machine an operation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StackIndex {
    One,
    Two,
}

impl StackIndex {
    pub fn number(self) -> u8 {
        match self {
            StackIndex::One => 1,
            StackIndex::Two => 2,
        }
    }
}

/// A push or pop of one stack symbol, optionally tagged with a stack index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StackOp {
    pub stack: Option<StackIndex>,
    pub direction: Direction,
    pub symbol: String,
}

impl StackOp {
    pub fn push(symbol: impl Into<String>) -> Self {
        StackOp {
            stack: None,
            direction: Direction::Push,
            symbol: symbol.into(),
        }
    }

    pub fn pop(symbol: impl Into<String>) -> Self {
        StackOp {
            stack: None,
            direction: Direction::Pop,
            symbol: symbol.into(),
        }
    }

    pub fn on(mut self, stack: StackIndex) -> Self {
        self.stack = Some(stack);
        self
    }

    pub fn is_push(&self) -> bool {
        self.direction == Direction::Push
    }
}

impl fmt::Display for StackOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.direction.keyword())?;
        if let Some(stack) = self.stack {
            write!(f, "{}", stack.number())?;
        }
        write!(f, ":{}", self.symbol)
    }
}

impl FromStr for StackOp {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let malformed = || Error::MalformedToken(text.to_string());
        let (head, symbol) = text.split_once(':').ok_or_else(malformed)?;
        let (direction, rest) = if let Some(rest) = head.strip_prefix("push") {
            (Direction::Push, rest)
        } else if let Some(rest) = head.strip_prefix("pop") {
            (Direction::Pop, rest)
        } else {
            return Err(malformed());
        };
        let stack = match rest {
            "" => None,
            "1" => Some(StackIndex::One),
            "2" => Some(StackIndex::Two),
            _ => return Err(malformed()),
        };
        if name_problem(symbol).is_some() {
            return Err(malformed());
        }
        Ok(StackOp {
            stack,
            direction,
            symbol: symbol.to_string(),
        })
    }
}

/// An element of the paired alphabet: an operation on stack 1, on stack 2, or both.
///
/// The all-epsilon pair does not exist; [`PairOp::new`] refuses it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairOp {
    first: Option<StackOp>,
    second: Option<StackOp>,
}

impl PairOp {
    pub fn new(first: Option<StackOp>, second: Option<StackOp>) -> Result<Self, Error> {
        if first.is_none() && second.is_none() {
            return Err(Error::EmptyPair);
        }
        Ok(PairOp { first, second })
    }

    pub fn both(first: StackOp, second: StackOp) -> Self {
        PairOp {
            first: Some(first),
            second: Some(second),
        }
    }

    pub fn first_only(first: StackOp) -> Self {
        PairOp {
            first: Some(first),
            second: None,
        }
    }

    pub fn second_only(second: StackOp) -> Self {
        PairOp {
            first: None,
            second: Some(second),
        }
    }

    pub fn first(&self) -> Option<&StackOp> {
        self.first.as_ref()
    }

    pub fn second(&self) -> Option<&StackOp> {
        self.second.as_ref()
    }
}

impl fmt::Display for PairOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side =
            |op: &Option<StackOp>| op.as_ref().map_or(EPSILON.to_string(), ToString::to_string);
        write!(f, "({},{})", side(&self.first), side(&self.second))
    }
}

impl FromStr for PairOp {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::MalformedToken(text.to_string()))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::MalformedToken(text.to_string()))?;
        let side = |s: &str| -> Result<Option<StackOp>, Error> {
            if s == EPSILON {
                Ok(None)
            } else {
                s.parse().map(Some)
            }
        };
        PairOp::new(side(a)?, side(b)?)
    }
}

/// One letter of an annotation string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Input(String),
    Op(StackOp),
    Pair(PairOp),
    Tape(String),
    Epsilon,
}

impl Token {
    pub fn input(symbol: impl Into<String>) -> Self {
        Token::Input(symbol.into())
    }

    pub fn push(symbol: impl Into<String>) -> Self {
        Token::Op(StackOp::push(symbol))
    }

    pub fn pop(symbol: impl Into<String>) -> Self {
        Token::Op(StackOp::pop(symbol))
    }

    pub fn tape(symbol: impl Into<String>) -> Self {
        Token::Tape(symbol.into())
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Token::Input(_))
    }

    /// True for single and paired stack operations.
    pub fn is_stack_op(&self) -> bool {
        matches!(self, Token::Op(_) | Token::Pair(_))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Input(a) => f.write_str(a),
            Token::Op(op) => op.fmt(f),
            Token::Pair(pair) => pair.fmt(f),
            Token::Tape(t) => write!(f, "tape:{t}"),
            Token::Epsilon => f.write_str(EPSILON),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        if text == EPSILON {
            Ok(Token::Epsilon)
        } else if text.starts_with('(') {
            text.parse().map(Token::Pair)
        } else if let Some(t) = text.strip_prefix("tape:") {
            match name_problem(t) {
                None => Ok(Token::Tape(t.to_string())),
                Some(_) => Err(Error::MalformedToken(text.to_string())),
            }
        } else if text.starts_with("push") || text.starts_with("pop") {
            // `push`/`pop` without a colon are ordinary symbol names.
            if text.contains(':') {
                text.parse().map(Token::Op)
            } else {
                Ok(Token::Input(text.to_string()))
            }
        } else {
            match name_problem(text) {
                None => Ok(Token::Input(text.to_string())),
                Some(_) => Err(Error::MalformedToken(text.to_string())),
            }
        }
    }
}

/// A finite token sequence; the witness that a machine accepts its input projection.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotationString(pub Vec<Token>);

impl AnnotationString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Token> {
        self.0.iter()
    }

    pub fn concat(&self, other: &AnnotationString) -> AnnotationString {
        AnnotationString(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// The input symbols of the string, in order.
    pub fn input_word(&self) -> Vec<String> {
        self.0
            .iter()
            .filter_map(|t| match t {
                Token::Input(a) => Some(a.clone()),
                _ => None,
            })
            .collect()
    }
}

impl From<Vec<Token>> for AnnotationString {
    fn from(tokens: Vec<Token>) -> Self {
        AnnotationString(tokens)
    }
}

impl FromIterator<Token> for AnnotationString {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        AnnotationString(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a AnnotationString {
    type Item = &'a Token;
    type IntoIter = std::slice::Iter<'a, Token>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for AnnotationString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, token) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            token.fmt(f)?;
        }
        Ok(())
    }
}

impl FromStr for AnnotationString {
    type Err = Error;

    /// Whitespace-separated tokens. A lone `_` is read as the epsilon token.
    fn from_str(text: &str) -> Result<Self, Error> {
        text.split_whitespace().map(str::parse).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_text_forms() {
        for text in [
            "0",
            "push:X",
            "pop2:Y",
            "(push1:X,pop2:Y)",
            "(_,pop2:Y)",
            "tape:t0",
            "_",
            "#",
        ] {
            let token: Token = text.parse().unwrap();
            assert_eq!(token.to_string(), text);
        }
        assert_eq!(
            "push1:Z0".parse::<Token>().unwrap(),
            Token::Op(StackOp::push("Z0").on(StackIndex::One))
        );
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!("(_,_)".parse::<Token>().is_err());
        assert!("push3:X".parse::<Token>().is_err());
        assert!("push:".parse::<Token>().is_err());
        assert!("a,b".parse::<Token>().is_err());
        assert!(PairOp::new(None, None).is_err());
    }

    #[test]
    fn names() {
        assert!(name_problem("q0'").is_none());
        assert!(name_problem("#").is_none());
        assert!(name_problem("_").is_some());
        assert!(name_problem("a b").is_some());
        assert!(name_problem("trans").is_some());
        assert!(name_problem("x:y").is_some());
    }

    #[test]
    fn annotation_text() {
        assert_eq!(AnnotationString::new().to_string(), "");
        assert_eq!(
            "".parse::<AnnotationString>().unwrap(),
            AnnotationString::new()
        );
        let s: AnnotationString = "0 push:X _ 1".parse().unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.input_word(), vec!["0", "1"]);
    }
}
