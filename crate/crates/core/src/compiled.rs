//! Index-based views of machines used by the search and table algorithms.

use std::collections::HashMap;

use crate::machine::{PdaII, TwoStackMachine};
use crate::symbol::{Direction, PairOp, StackIndex, Token};

fn index(names: &[String]) -> HashMap<String, usize> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect()
}

/// A PDA-II with states, input symbols and stack symbols numbered.
pub(crate) struct IndexedPda2 {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub stack: Vec<String>,
    pub input_ix: HashMap<String, usize>,
    /// [state][input symbol] -> successors
    pub on_input: Vec<Vec<Vec<usize>>>,
    pub on_eps: Vec<Vec<usize>>,
    /// [state][stack symbol] -> successors on a pop
    pub on_pop: Vec<Vec<Vec<usize>>>,
    /// [state] -> (predecessor, stack symbol) with state ∈ δ(predecessor, X(↓))
    pub push_pred: Vec<Vec<(usize, usize)>>,
    pub initial: usize,
    pub accepting: Vec<bool>,
}

impl IndexedPda2 {
    /// `m` must be well-formed.
    pub fn new(m: &PdaII) -> Self {
        let states: Vec<String> = m.states.iter().cloned().collect();
        let inputs: Vec<String> = m.alphabets.input.iter().cloned().collect();
        let stack: Vec<String> = m.alphabets.stack.iter().cloned().collect();
        let state_ix = index(&states);
        let input_ix = index(&inputs);
        let stack_ix = index(&stack);
        let (nq, na, ng) = (states.len(), inputs.len(), stack.len());
        let mut on_input = vec![vec![Vec::new(); na]; nq];
        let mut on_eps = vec![Vec::new(); nq];
        let mut on_pop = vec![vec![Vec::new(); ng]; nq];
        let mut push_pred = vec![Vec::new(); nq];
        for ((from, token), targets) in &m.delta {
            let q = state_ix[from];
            for to in targets {
                let r = state_ix[to];
                match token {
                    Token::Input(a) => on_input[q][input_ix[a]].push(r),
                    Token::Epsilon => on_eps[q].push(r),
                    Token::Op(op) => {
                        let x = stack_ix[&op.symbol];
                        match op.direction {
                            Direction::Push => push_pred[r].push((q, x)),
                            Direction::Pop => on_pop[q][x].push(r),
                        }
                    }
                    Token::Pair(_) | Token::Tape(_) => unreachable!("rejected by validation"),
                }
            }
        }
        IndexedPda2 {
            initial: state_ix[&m.initial],
            accepting: states.iter().map(|q| m.accepting.contains(q)).collect(),
            states,
            inputs,
            stack,
            input_ix,
            on_input,
            on_eps,
            on_pop,
            push_pred,
        }
    }

    pub fn word<S: AsRef<str>>(&self, word: &[S]) -> Vec<usize> {
        word.iter().map(|a| self.input_ix[a.as_ref()]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SideOp {
    Push(u16),
    Pop(u16),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Move {
    Input(usize),
    Pair(Option<SideOp>, Option<SideOp>),
    Tape,
}

/// A two-stack machine with numbered states and symbols; each state lists its
/// outgoing moves together with the original token.
pub(crate) struct IndexedTwoStack {
    pub moves: Vec<Vec<(Move, usize, Token)>>,
    pub input_ix: HashMap<String, usize>,
    pub initial: usize,
    pub accepting: Vec<bool>,
}

impl IndexedTwoStack {
    pub fn new(m: &TwoStackMachine) -> Self {
        let states: Vec<String> = m.states.iter().cloned().collect();
        let inputs: Vec<String> = m.alphabets.input.iter().cloned().collect();
        let stack: Vec<String> = m.alphabets.stack.iter().cloned().collect();
        let state_ix = index(&states);
        let input_ix = index(&inputs);
        let stack_ix = index(&stack);
        let side = |op: Option<&crate::symbol::StackOp>, expected: StackIndex| {
            op.map(|op| {
                debug_assert_eq!(op.stack, Some(expected));
                let x = stack_ix[&op.symbol] as u16;
                match op.direction {
                    Direction::Push => SideOp::Push(x),
                    Direction::Pop => SideOp::Pop(x),
                }
            })
        };
        let mut moves = vec![Vec::new(); states.len()];
        for ((from, token), to) in &m.delta {
            let mv = match token {
                Token::Input(a) => Move::Input(input_ix[a]),
                Token::Pair(pair) => {
                    let PairOp { .. } = pair;
                    Move::Pair(
                        side(pair.first(), StackIndex::One),
                        side(pair.second(), StackIndex::Two),
                    )
                }
                Token::Tape(_) => Move::Tape,
                Token::Op(_) | Token::Epsilon => unreachable!("rejected by validation"),
            };
            moves[state_ix[from]].push((mv, state_ix[to], token.clone()));
        }
        IndexedTwoStack {
            initial: state_ix[&m.initial],
            accepting: states.iter().map(|q| m.accepting.contains(q)).collect(),
            moves,
            input_ix,
        }
    }
}

/// Applies one side of a pair to a stack; false if the pop does not match.
pub(crate) fn apply_side(stack: &mut Vec<u16>, op: Option<SideOp>) -> bool {
    match op {
        None => true,
        Some(SideOp::Push(x)) => {
            stack.push(x);
            true
        }
        Some(SideOp::Pop(x)) => {
            if stack.last() == Some(&x) {
                stack.pop();
                true
            } else {
                false
            }
        }
    }
}
