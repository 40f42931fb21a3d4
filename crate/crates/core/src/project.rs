//! Projection of annotation strings onto a symbol set: delete every token
//! outside the set and keep the rest in order.

use std::collections::BTreeSet;

use crate::symbol::{AnnotationString, Token};

pub fn project(s: &AnnotationString, target: &BTreeSet<Token>) -> AnnotationString {
    project_by(s, |t| target.contains(t))
}

pub fn project_by(s: &AnnotationString, keep: impl Fn(&Token) -> bool) -> AnnotationString {
    s.iter().filter(|t| keep(t)).cloned().collect()
}

/// Keeps input symbols only.
pub fn project_input(s: &AnnotationString) -> AnnotationString {
    project_by(s, Token::is_input)
}

/// Keeps single and paired stack operations.
pub fn project_stack(s: &AnnotationString) -> AnnotationString {
    project_by(s, Token::is_stack_op)
}
