//! The example machines shipped in `fixtures/`.

use crate::format::{parse_machine, AnyMachine};
use crate::machine::{PdaI, PdaII, TwoStackMachine};
use crate::quantum::QuantumMachine;

pub const LEQ: &str = include_str!("../../../fixtures/leq.sm");
pub const LW: &str = include_str!("../../../fixtures/lw.sm");
pub const LWWR: &str = include_str!("../../../fixtures/lwwr.sm");
pub const ROT: &str = include_str!("../../../fixtures/rot.sm");
pub const ANBN: &str = include_str!("../../../fixtures/anbn.sm");

/// (file name, contents) of every fixture.
pub const ALL: &[(&str, &str)] = &[
    ("leq.sm", LEQ),
    ("lw.sm", LW),
    ("lwwr.sm", LWWR),
    ("rot.sm", ROT),
    ("anbn.sm", ANBN),
];

fn parse(text: &str) -> AnyMachine {
    parse_machine(text).expect("fixture files are well-formed")
}

/// Two-stack machine for { 0ⁿ1ⁿ2ⁿ : n ≥ 0 }.
pub fn leq() -> TwoStackMachine {
    match parse(LEQ) {
        AnyMachine::TwoStack(m) => m,
        _ => unreachable!(),
    }
}

/// Two-stack machine for { w#w : w ∈ {0,1}* }.
pub fn lw() -> TwoStackMachine {
    match parse(LW) {
        AnyMachine::TwoStack(m) => m,
        _ => unreachable!(),
    }
}

/// PDA-II for { wwᴿ : w ∈ {0,1}* }.
pub fn lwwr() -> PdaII {
    match parse(LWWR) {
        AnyMachine::Pda2(m) => m,
        _ => unreachable!(),
    }
}

/// Quantum single-stack machine rotating by π/6 on `0`.
pub fn rot() -> QuantumMachine {
    match parse(ROT) {
        AnyMachine::Quantum(m) => m,
        _ => unreachable!(),
    }
}

/// PDA-I for { 0ⁿ1ⁿ : n ≥ 0 }, accepting by final state.
pub fn anbn() -> PdaI {
    match parse(ANBN) {
        AnyMachine::Pda1(m) => m,
        _ => unreachable!(),
    }
}
