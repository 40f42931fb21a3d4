//! Quantum single-stack and two-stack machines: one unitary per annotation
//! token acting on the span of the states, and a bounded maximum of the
//! acceptance probability over stack-valid annotations of an input.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{Complex, DMatrix, DVector};

use crate::alphabet::Alphabets;
use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::machine::{alphabet_violations, state_violations, Letters, Validate, Violation};
use crate::symbol::{AnnotationString, StackOp, Token};

pub type C64 = Complex<f64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_QUANTUM_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Unitaries indexed by Σ ∪ Γ(↕).
    SingleStack,
    /// Unitaries indexed by Σ ∪ Γ₁,₂(↕) ∪ Δ.
    TwoStack,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumMachine {
    pub flavor: Flavor,
    /// Basis order of the state space.
    pub states: Vec<String>,
    pub alphabets: Alphabets,
    pub unitaries: BTreeMap<Token, DMatrix<C64>>,
    pub initial: String,
    pub accepting: BTreeSet<String>,
}

impl QuantumMachine {
    pub fn new<Q, F>(
        flavor: Flavor,
        states: Q,
        alphabets: Alphabets,
        initial: &str,
        accepting: F,
    ) -> Self
    where
        Q: IntoIterator,
        Q::Item: Into<String>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        QuantumMachine {
            flavor,
            states: states.into_iter().map(Into::into).collect(),
            alphabets,
            unitaries: BTreeMap::new(),
            initial: initial.to_string(),
            accepting: accepting.into_iter().map(Into::into).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    /// The tokens that must carry a unitary.
    pub fn tokens(&self) -> Vec<Token> {
        match self.flavor {
            Flavor::SingleStack => self.alphabets.single_stack_tokens(),
            Flavor::TwoStack => self.alphabets.two_stack_tokens(),
        }
    }

    pub fn index_of(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    /// Sets every token's unitary to the identity.
    pub fn fill_identity(&mut self) {
        let n = self.dimension();
        for t in self.tokens() {
            self.unitaries.insert(t, DMatrix::identity(n, n));
        }
    }

    pub fn violations_with_tolerance(&self, tol: f64) -> Vec<Violation> {
        let mut out = alphabet_violations(&self.alphabets, self.flavor == Flavor::TwoStack);
        let set: BTreeSet<String> = self.states.iter().cloned().collect();
        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s) {
                out.push(Violation::DuplicateState(s.clone()));
            }
        }
        out.extend(state_violations(&set, &self.initial, &self.accepting));
        let letters = match self.flavor {
            Flavor::SingleStack => Letters::SingleStack { epsilon: false },
            Flavor::TwoStack => Letters::TwoStack,
        };
        for t in self.tokens() {
            if !self.unitaries.contains_key(&t) {
                out.push(Violation::MissingUnitary(t.to_string()));
            }
        }
        let n = self.dimension();
        for (t, u) in &self.unitaries {
            if !self.alphabets.admits(t, letters) {
                out.push(Violation::UnexpectedUnitary(t.to_string()));
            } else if u.nrows() != n || u.ncols() != n {
                out.push(Violation::WrongDimension {
                    token: t.to_string(),
                    rows: u.nrows(),
                    cols: u.ncols(),
                    expected: n,
                });
            } else {
                let residual = unitarity_residual(u);
                if residual > tol {
                    out.push(Violation::NotUnitary {
                        token: t.to_string(),
                        residual,
                    });
                }
            }
        }
        out
    }
}

impl Validate for QuantumMachine {
    fn violations(&self) -> Vec<Violation> {
        self.violations_with_tolerance(DEFAULT_TOLERANCE)
    }
}

/// max over entries of |U†U − I|; `u` must be square.
pub fn unitarity_residual(u: &DMatrix<C64>) -> f64 {
    let product = u.adjoint() * u;
    let n = u.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            worst = worst.max((product[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn check_unitary(u: &DMatrix<C64>, tol: f64) -> Result<bool> {
    if u.nrows() != u.ncols() {
        return Err(Error::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    Ok(unitarity_residual(u) <= tol)
}

/// The 2×2 real rotation by `theta`.
pub fn rotation(theta: f64) -> DMatrix<C64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ],
    )
}

/// Two states q0, q1 with q1 accepting, one input symbol `0` acting as a
/// rotation by `theta`, and one stack symbol `Z` whose operations act trivially.
pub fn rotation_machine(theta: f64) -> QuantumMachine {
    let ab = Alphabets::new(["0"], ["Z"], Vec::<String>::new());
    let mut m = QuantumMachine::new(Flavor::SingleStack, ["q0", "q1"], ab, "q0", ["q1"]);
    m.fill_identity();
    m.unitaries.insert(Token::input("0"), rotation(theta));
    m
}

fn basis(m: &QuantumMachine) -> Result<DVector<C64>> {
    m.ensure_valid()?;
    let mut v = DVector::from_element(m.dimension(), C64::new(0.0, 0.0));
    v[m.index_of(&m.initial).expect("validated")] = C64::new(1.0, 0.0);
    Ok(v)
}

/// U_{a_k} ⋯ U_{a_1} |q₀⟩ for s = a_1 … a_k.
pub fn evolve(m: &QuantumMachine, s: &AnnotationString) -> Result<DVector<C64>> {
    let mut v = basis(m)?;
    for t in s {
        let u = m
            .unitaries
            .get(t)
            .ok_or_else(|| Error::UnknownToken(t.to_string()))?;
        v = u * v;
    }
    Ok(v)
}

/// Σ over accepting states of the squared amplitude.
pub fn accepting_probability(m: &QuantumMachine, v: &DVector<C64>) -> f64 {
    m.states
        .iter()
        .zip(v.iter())
        .filter(|(q, _)| m.accepting.contains(*q))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// The largest acceptance probability over annotations s of `word` with
/// |s| ≤ `bound.len` whose stack projection is valid; 0 when there are none.
/// A lower bound for the supremum over all such annotations.
pub fn accept_prob_bounded<S: AsRef<str>>(
    m: &QuantumMachine,
    word: &[S],
    bound: impl Into<Bound>,
) -> Result<f64> {
    Ok(best_annotation(m, word, bound)?.map_or(0.0, |(p, _)| p))
}

/// [`accept_prob_bounded`] together with the first annotation reaching the maximum.
pub fn best_annotation<S: AsRef<str>>(
    m: &QuantumMachine,
    word: &[S],
    bound: impl Into<Bound>,
) -> Result<Option<(f64, AnnotationString)>> {
    let max_len = bound.into().checked(DEFAULT_QUANTUM_CAP)?;
    let start = basis(m)?;
    m.alphabets.check_input(word)?;
    let mut search = Search {
        m,
        word: word.iter().map(|a| a.as_ref().to_string()).collect(),
        extra: m.tokens().into_iter().filter(|t| !t.is_input()).collect(),
        unitaries: &m.unitaries,
        max_len,
        prefix: Vec::new(),
        stacks: [Vec::new(), Vec::new()],
        best: None,
    };
    search.extend(start, 0);
    Ok(search.best)
}

struct Search<'m> {
    m: &'m QuantumMachine,
    word: Vec<String>,
    extra: Vec<Token>,
    unitaries: &'m BTreeMap<Token, DMatrix<C64>>,
    max_len: usize,
    prefix: Vec<Token>,
    stacks: [Vec<String>; 2],
    best: Option<(f64, AnnotationString)>,
}

impl Search<'_> {
    /// Pops still needed; one pair token can pop both stacks.
    fn height(&self) -> usize {
        self.stacks[0].len().max(self.stacks[1].len())
    }

    fn extend(&mut self, v: DVector<C64>, pos: usize) {
        if pos == self.word.len() && self.height() == 0 {
            let p = accepting_probability(self.m, &v);
            if self.best.as_ref().is_none_or(|(b, _)| p > *b) {
                self.best = Some((p, AnnotationString(self.prefix.clone())));
            }
        }
        if self.prefix.len() == self.max_len {
            return;
        }
        let room = self.max_len - self.prefix.len() - 1;
        if pos < self.word.len() && room >= self.word.len() - pos - 1 + self.height() {
            let t = Token::Input(self.word[pos].clone());
            let next = &self.unitaries[&t] * &v;
            self.prefix.push(t);
            self.extend(next, pos + 1);
            self.prefix.pop();
        }
        for i in 0..self.extra.len() {
            let t = self.extra[i].clone();
            let saved = self.stacks.clone();
            let ok = match &t {
                Token::Op(op) => apply(&mut self.stacks[0], op),
                Token::Pair(pair) => {
                    pair.first().is_none_or(|op| apply(&mut self.stacks[0], op))
                        && pair
                            .second()
                            .is_none_or(|op| apply(&mut self.stacks[1], op))
                }
                _ => true,
            };
            if ok && room >= self.word.len() - pos + self.height() {
                let next = &self.unitaries[&t] * &v;
                self.prefix.push(t);
                self.extend(next, pos);
                self.prefix.pop();
            }
            self.stacks = saved;
        }
    }
}

fn apply(stack: &mut Vec<String>, op: &StackOp) -> bool {
    if op.is_push() {
        stack.push(op.symbol.clone());
        true
    } else if stack.last() == Some(&op.symbol) {
        stack.pop();
        true
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn unitary_checks() {
        assert!(check_unitary(&DMatrix::identity(3, 3), 1e-9).unwrap());
        assert!(check_unitary(&rotation(0.7), 1e-9).unwrap());
        assert!(!check_unitary(
            &DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(2.0)])),
            1e-9
        )
        .unwrap());
        assert_eq!(
            check_unitary(&DMatrix::from_element(2, 3, c(0.0)), 1e-9),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn evolve_basics() {
        let theta = 0.3;
        let m = rotation_machine(theta);
        let v = evolve(&m, &AnnotationString::new()).unwrap();
        assert_eq!(v, DVector::from_vec(vec![c(1.0), c(0.0)]));
        let v = evolve(&m, &"0".parse().unwrap()).unwrap();
        assert!((v[0] - c(theta.cos())).norm() < 1e-12);
        assert!((v[1] - c(theta.sin())).norm() < 1e-12);
        assert!(matches!(
            evolve(&m, &"1".parse().unwrap()),
            Err(Error::UnknownToken(_))
        ));
    }

    #[test]
    fn rotation_probability() {
        let theta = PI / 6.0;
        let m = rotation_machine(theta);
        let p = accept_prob_bounded(&m, &["0"], 6).unwrap();
        assert!((p - theta.sin().powi(2)).abs() < 1e-9);
        assert_eq!(accept_prob_bounded(&m, &["0"], 0).unwrap(), 0.0);
        assert!(accept_prob_bounded(&m, &["0"], 13).is_err());
    }

    #[test]
    fn identity_machines() {
        let ab = Alphabets::new(["a", "b"], ["X"], Vec::<String>::new());
        let mut yes =
            QuantumMachine::new(Flavor::SingleStack, ["q0", "q1"], ab.clone(), "q0", ["q0"]);
        yes.fill_identity();
        let mut no = QuantumMachine::new(Flavor::SingleStack, ["q0", "q1"], ab, "q0", ["q1"]);
        no.fill_identity();
        for x in [vec![], vec!["a"], vec!["a", "b", "b"]] {
            assert!((accept_prob_bounded(&yes, &x, 6).unwrap() - 1.0).abs() < 1e-12);
            assert_eq!(accept_prob_bounded(&no, &x, 6).unwrap(), 0.0);
        }
    }

    #[test]
    fn missing_and_bad_unitaries_are_reported() {
        let mut m = rotation_machine(0.1);
        m.unitaries.remove(&Token::push("Z"));
        m.unitaries
            .insert(Token::pop("Z"), DMatrix::from_element(2, 2, c(1.0)));
        let v = m.violations();
        assert!(v.contains(&Violation::MissingUnitary("push:Z".into())));
        assert!(v.iter().any(|x| matches!(x, Violation::NotUnitary { .. })));
    }

    #[test]
    fn joint_pops_fit_the_bound() {
        let ab = Alphabets::new(["0"], ["X"], Vec::<String>::new());
        let mut m = QuantumMachine::new(Flavor::TwoStack, ["q0", "q1"], ab, "q0", ["q1"]);
        m.fill_identity();
        let swap = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        m.unitaries
            .insert("(push1:X,push2:X)".parse().unwrap(), swap);
        let empty: Vec<&str> = Vec::new();
        assert!((accept_prob_bounded(&m, &empty, 2).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(accept_prob_bounded(&m, &empty, 1).unwrap(), 0.0);
    }
}
