//! Graphviz DOT export of transition diagrams.

use std::fmt::Write as _;

use crate::format::{format_complex, AnyMachine};

/// Quotes `s` as a DOT string.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Magnitude below which a quantum amplitude gets no edge.
pub const DOT_AMPLITUDE_EPS: f64 = 1e-12;

/// One node per state (double circle when accepting), an entry arrow into the
/// initial state, and one labeled edge per transition entry. Quantum machines
/// get one edge per nonzero matrix entry, from column state to row state.
pub fn to_dot(m: &AnyMachine) -> String {
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let (states, initial, accepting): (Vec<String>, &String, _) = match m {
        AnyMachine::TwoStack(m) => {
            edges.extend(
                m.delta
                    .iter()
                    .map(|((q, t), r)| (q.clone(), r.clone(), t.to_string())),
            );
            (m.states.iter().cloned().collect(), &m.initial, &m.accepting)
        }
        AnyMachine::Dpda2(m) => {
            edges.extend(
                m.delta
                    .iter()
                    .map(|((q, t), r)| (q.clone(), r.clone(), t.to_string())),
            );
            (m.states.iter().cloned().collect(), &m.initial, &m.accepting)
        }
        AnyMachine::Pda2(m) => {
            for ((q, t), rs) in &m.delta {
                edges.extend(rs.iter().map(|r| (q.clone(), r.clone(), t.to_string())));
            }
            (m.states.iter().cloned().collect(), &m.initial, &m.accepting)
        }
        AnyMachine::Pda1(m) => {
            for (key, moves) in &m.delta {
                let input = key.input.as_deref().unwrap_or("ε");
                for mv in moves {
                    let push = if mv.push.is_empty() {
                        "ε".to_string()
                    } else {
                        mv.push.join(" ")
                    };
                    edges.push((
                        key.state.clone(),
                        mv.target.clone(),
                        format!("{input}, {} / {push}", key.top),
                    ));
                }
            }
            (m.states.iter().cloned().collect(), &m.initial, &m.accepting)
        }
        AnyMachine::Quantum(m) => {
            for (t, u) in &m.unitaries {
                for (j, from) in m.states.iter().enumerate() {
                    for (i, to) in m.states.iter().enumerate() {
                        let z = u[(i, j)];
                        if z.norm() > DOT_AMPLITUDE_EPS {
                            edges.push((
                                from.clone(),
                                to.clone(),
                                format!("{t}: {}", format_complex(z)),
                            ));
                        }
                    }
                }
            }
            (m.states.clone(), &m.initial, &m.accepting)
        }
    };

    let mut out = String::new();
    out.push_str("digraph machine {\n  rankdir=LR;\n  node [shape=point];\n");
    for q in &states {
        let shape = if accepting.contains(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(q));
    }
    let _ = writeln!(out, "  __start -> {};", quote(initial));
    for (from, to, label) in edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&from),
            quote(&to),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
