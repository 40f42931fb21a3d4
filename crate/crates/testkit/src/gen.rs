//! Random machines for property tests.

use nalgebra::{Complex, DMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
use sm_core::quantum::C64;
use sm_core::{
    Alphabets, AnyMachine, Dfa, DpdaII, Flavor, PdaI, PdaII, QuantumMachine, Token, TwoStackMachine,
};

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

fn pick<'a, R: Rng, T>(rng: &mut R, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("nonempty")
}

fn accepting<R: Rng>(rng: &mut R, states: &[String]) -> Vec<String> {
    states
        .iter()
        .filter(|_| rng.gen_bool(0.35))
        .cloned()
        .collect()
}

fn binary_input() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

/// A PDA-I over {0,1} with at most `max_states` states, at most `max_stack`
/// stack symbols (the bottom symbol included) and at most `max_transitions`
/// transitions pushing strings of length at most 2.
pub fn pda1<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_stack: usize,
    max_transitions: usize,
) -> PdaI {
    let states = state_names(rng.gen_range(1..=max_states));
    let stack: Vec<String> = ["Z", "A"]
        .iter()
        .take(rng.gen_range(1..=max_stack.max(1)))
        .map(|s| s.to_string())
        .collect();
    let ab = Alphabets::new(binary_input(), stack.clone(), Vec::<String>::new());
    let f = accepting(rng, &states);
    let mut m = PdaI::new(states.clone(), ab, "q0", "Z", f);
    for _ in 0..rng.gen_range(0..=max_transitions) {
        let from = pick(rng, &states).clone();
        let to = pick(rng, &states).clone();
        let input = match rng.gen_range(0..3) {
            0 => None,
            1 => Some("0"),
            _ => Some("1"),
        };
        let top = pick(rng, &stack).clone();
        let push: Vec<String> = (0..rng.gen_range(0..=2))
            .map(|_| pick(rng, &stack).clone())
            .collect();
        let push: Vec<&str> = push.iter().map(String::as_str).collect();
        m.insert(&from, input, &top, &to, &push);
    }
    m
}

/// A PDA-II over {0,1} with transitions on input symbols, ε and stack operations.
pub fn pda2<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_stack: usize,
    max_transitions: usize,
) -> PdaII {
    let states = state_names(rng.gen_range(1..=max_states));
    let stack: Vec<String> = ["X", "Y"]
        .iter()
        .take(rng.gen_range(1..=max_stack.max(1)))
        .map(|s| s.to_string())
        .collect();
    let ab = Alphabets::new(binary_input(), stack.clone(), Vec::<String>::new());
    let mut letters = ab.single_stack_tokens();
    letters.push(Token::Epsilon);
    let f = accepting(rng, &states);
    let mut m = PdaII::new(states.clone(), ab, "q0", f);
    for _ in 0..rng.gen_range(0..=max_transitions) {
        let from = pick(rng, &states).clone();
        let to = pick(rng, &states).clone();
        m.insert(&from, pick(rng, &letters).clone(), &to);
    }
    m
}

/// A deterministic PDA-II over {0,1}.
pub fn dpda2<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_stack: usize,
    max_transitions: usize,
) -> DpdaII {
    let states = state_names(rng.gen_range(1..=max_states));
    let stack: Vec<String> = ["X", "Y"]
        .iter()
        .take(rng.gen_range(1..=max_stack.max(1)))
        .map(|s| s.to_string())
        .collect();
    let ab = Alphabets::new(binary_input(), stack, Vec::<String>::new());
    let letters = ab.single_stack_tokens();
    let f = accepting(rng, &states);
    let mut m = DpdaII::new(states.clone(), ab, "q0", f);
    for _ in 0..rng.gen_range(0..=max_transitions) {
        let from = pick(rng, &states).clone();
        let to = pick(rng, &states).clone();
        m.insert(&from, pick(rng, &letters).clone(), &to);
    }
    m
}

/// A two-stack machine over {0,1}, possibly with one tape symbol.
pub fn two_stack<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_transitions: usize,
) -> TwoStackMachine {
    let states = state_names(rng.gen_range(1..=max_states));
    let tape: Vec<String> = if rng.gen_bool(0.5) {
        vec!["t".into()]
    } else {
        Vec::new()
    };
    let stack: Vec<String> = ["X", "Y"]
        .iter()
        .take(rng.gen_range(1..=2))
        .map(|s| s.to_string())
        .collect();
    let ab = Alphabets::new(binary_input(), stack, tape);
    let letters = ab.two_stack_tokens();
    let f = accepting(rng, &states);
    let mut m = TwoStackMachine::new(states.clone(), ab, "q0", f);
    for _ in 0..rng.gen_range(0..=max_transitions) {
        let from = pick(rng, &states).clone();
        let to = pick(rng, &states).clone();
        m.insert(&from, pick(rng, &letters).clone(), &to);
    }
    m
}

/// A DFA over {0,1}, total on its states.
pub fn dfa<R: Rng>(rng: &mut R, max_states: usize) -> Dfa {
    let states = state_names(rng.gen_range(1..=max_states));
    let mut delta = std::collections::BTreeMap::new();
    for q in &states {
        for a in binary_input() {
            delta.insert((q.clone(), a), pick(rng, &states).clone());
        }
    }
    Dfa {
        accepting: accepting(rng, &states).into_iter().collect(),
        states: states.into_iter().collect(),
        input: binary_input().into_iter().collect(),
        delta,
        initial: "q0".into(),
    }
}

/// A Haar-like random unitary: the Q factor of a complex Gaussian-ish matrix.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let a = DMatrix::from_fn(n, n, |_, _| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    a.qr().q()
}

/// A quantum machine with random unitaries for every token.
pub fn quantum<R: Rng>(
    rng: &mut R,
    flavor: Flavor,
    max_states: usize,
    stack: &[&str],
) -> QuantumMachine {
    let states = state_names(rng.gen_range(1..=max_states));
    let tape: Vec<String> = if flavor == Flavor::TwoStack && rng.gen_bool(0.5) {
        vec!["t".into()]
    } else {
        Vec::new()
    };
    let ab = Alphabets::new(binary_input(), stack.iter().copied(), tape);
    let f = accepting(rng, &states);
    let mut m = QuantumMachine::new(flavor, states, ab, "q0", f);
    let n = m.dimension();
    for t in m.tokens() {
        m.unitaries.insert(t, unitary(rng, n));
    }
    m
}

/// A random machine of a random kind, for format round trips.
pub fn any<R: Rng>(rng: &mut R) -> AnyMachine {
    match rng.gen_range(0..6) {
        0 => two_stack(rng, 4, 10).into(),
        1 => pda1(rng, 4, 2, 8).into(),
        2 => pda2(rng, 4, 2, 10).into(),
        3 => dpda2(rng, 4, 2, 10).into(),
        4 => quantum(rng, Flavor::SingleStack, 3, &["X"]).into(),
        _ => quantum(rng, Flavor::TwoStack, 2, &["X"]).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use sm_core::Validate;

    #[test]
    fn generated_machines_are_well_formed() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..200 {
            let m = any(&mut rng);
            assert!(m.ensure_valid().is_ok(), "{m:?}");
            assert!(dfa(&mut rng, 3).ensure_valid().is_ok());
        }
    }
}
