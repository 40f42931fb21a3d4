//! `smctl`: validity checks, membership, conversions, determinization,
//! quantum acceptance probabilities and diagram export for `.sm` machine files.
//!
//! Exit status: 0 accepted or success, 1 rejected or invalid, 2 usage or
//! parse error, 3 inconclusive.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sm_core::convert::{pda1_to_pda2, pda2_to_pda1, DEFAULT_SENTINEL};
use sm_core::dot::to_dot;
use sm_core::quantum::{best_annotation, DEFAULT_TOLERANCE};
use sm_core::recognition::{
    accepts_pda2, accepts_two_stack_bounded, brute_force_witness, SearchLimits, Verdict,
};
use sm_core::validity::{check_valid_single, check_valid_two};
use sm_core::{
    determinize::subset_construct, format::parse_machine_with_tolerance, parse_machine, serialize,
    AnyMachine, Bound, PairOp, StackOp, Token,
};

const ACCEPTED: u8 = 0;
const REJECTED: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "smctl",
    version,
    about = "Stack machines over annotated alphabets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Pda1,
    Pda2,
}

#[derive(Subcommand)]
enum Command {
    /// Check a sequence of stack operations (`push:X pop:X`) or pairs (`(push1:X,_)`).
    CheckValid {
        /// Whitespace-separated operations; may be empty.
        #[arg(num_args = 0.., allow_hyphen_values = true)]
        ops: Vec<String>,
    },
    /// Decide whether a machine accepts an input.
    Accept {
        #[arg(short = 'm', value_name = "FILE")]
        machine: PathBuf,
        /// Input word; symbols separated by spaces unless all are single characters.
        #[arg(short = 'x', value_name = "STRING", default_value = "")]
        input: String,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        #[arg(long, default_value_t = 16)]
        max_depth: usize,
        /// Print the annotation string that witnesses acceptance.
        #[arg(long)]
        witness: bool,
    },
    /// Convert between PDA-I and PDA-II.
    Convert {
        #[arg(short = 'm', value_name = "FILE")]
        machine: PathBuf,
        #[arg(long = "to", value_enum)]
        to: Target,
        #[arg(short = 'o', value_name = "FILE")]
        out: Option<PathBuf>,
        /// Bottom-of-stack symbol added when converting to PDA-I.
        #[arg(long, default_value = DEFAULT_SENTINEL)]
        sentinel: String,
    },
    /// Subset construction of a PDA-II into a DPDA-II.
    Determinize {
        #[arg(short = 'm', value_name = "FILE")]
        machine: PathBuf,
        #[arg(short = 'o', value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Bounded acceptance probability of a quantum machine.
    Qprob {
        #[arg(short = 'm', value_name = "FILE")]
        machine: PathBuf,
        #[arg(short = 'x', value_name = "STRING", default_value = "")]
        input: String,
        /// Longest annotation string considered.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Unitarity tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        witness: bool,
    },
    /// List accepted inputs found by enumerating short annotation strings.
    Oracle {
        #[arg(short = 'm', value_name = "FILE")]
        machine: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_input_len: usize,
        #[arg(long, default_value_t = 10)]
        max_annot_len: usize,
    },
    /// Write the transition diagram in DOT format.
    ExportDot {
        #[arg(short = 'm', value_name = "FILE")]
        machine: PathBuf,
        #[arg(short = 'o', value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(USAGE, e.to_string())
    }
}

fn load(path: &Path) -> Result<AnyMachine, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?;
    parse_machine(&text).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn mismatch(command: &str, m: &AnyMachine) -> Failure {
    Failure(
        USAGE,
        format!("{command} does not apply to {} machines", m.kind()),
    )
}

fn show_word(word: &[String]) -> String {
    if word.is_empty() {
        "ε".into()
    } else if word.iter().all(|a| a.chars().count() == 1) {
        word.concat()
    } else {
        word.join(" ")
    }
}

fn verdict(accepted: bool, witness: Option<String>, show: bool) -> u8 {
    if accepted {
        println!("accepted");
        if let (true, Some(w)) = (show, witness) {
            println!("witness: {w}");
        }
        ACCEPTED
    } else {
        println!("rejected");
        REJECTED
    }
}

fn check_valid(ops: &[String]) -> Result<u8, Failure> {
    let tokens: Vec<Token> = ops
        .iter()
        .flat_map(|s| s.split_whitespace())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    if tokens.iter().all(|t| matches!(t, Token::Pair(_))) && !tokens.is_empty() {
        let pairs: Vec<PairOp> = tokens
            .into_iter()
            .filter_map(|t| {
                if let Token::Pair(p) = t {
                    Some(p)
                } else {
                    None
                }
            })
            .collect();
        let (first, second) = check_valid_two(&pairs);
        println!("stack 1:\n{first}\nstack 2:\n{second}");
        return Ok(if first.is_valid() && second.is_valid() {
            ACCEPTED
        } else {
            REJECTED
        });
    }
    let ops: Vec<StackOp> = tokens
        .into_iter()
        .map(|t| match t {
            Token::Op(op) => Ok(op),
            other => Err(Failure(
                USAGE,
                format!("`{other}` is not a stack operation"),
            )),
        })
        .collect::<Result<_, _>>()?;
    let trace = check_valid_single(&ops)?;
    println!("{trace}");
    Ok(if trace.is_valid() { ACCEPTED } else { REJECTED })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::CheckValid { ops } => check_valid(&ops),
        Command::Accept {
            machine,
            input,
            max_steps,
            max_depth,
            witness,
        } => {
            let m = load(&machine)?;
            let word = m.alphabets().split_input(&input)?;
            match &m {
                AnyMachine::TwoStack(m) => {
                    let out = accepts_two_stack_bounded(
                        m,
                        &word,
                        SearchLimits {
                            max_steps,
                            max_depth,
                        },
                    )?;
                    Ok(match out.verdict {
                        Verdict::Accepted(w) => verdict(true, Some(w.to_string()), witness),
                        Verdict::Rejected => verdict(false, None, witness),
                        Verdict::Inconclusive => {
                            println!("inconclusive after {} configurations", out.states_visited);
                            INCONCLUSIVE
                        }
                    })
                }
                AnyMachine::Pda2(m) => {
                    let (ok, w) = accepts_pda2(m, &word)?;
                    Ok(verdict(ok, w.map(|w| w.to_string()), witness))
                }
                AnyMachine::Dpda2(m) => {
                    let (ok, w) = accepts_pda2(&m.to_pda2(), &word)?;
                    Ok(verdict(ok, w.map(|w| w.to_string()), witness))
                }
                AnyMachine::Pda1(m) => {
                    let (ok, w) = accepts_pda2(&pda1_to_pda2(m)?, &word)?;
                    Ok(verdict(
                        ok,
                        w.map(|w| format!("{w}  (run of the converted PDA-II)")),
                        witness,
                    ))
                }
                AnyMachine::Quantum(_) => Err(Failure(
                    USAGE,
                    "quantum machines have acceptance probabilities; use qprob".into(),
                )),
            }
        }
        Command::Convert {
            machine,
            to,
            out,
            sentinel,
        } => {
            let m = load(&machine)?;
            let converted: AnyMachine = match (to, &m) {
                (Target::Pda2, AnyMachine::Pda1(p)) => pda1_to_pda2(p)?.into(),
                (Target::Pda1, AnyMachine::Pda2(p)) => pda2_to_pda1(p, &sentinel)?.into(),
                (Target::Pda1, AnyMachine::Dpda2(p)) => {
                    pda2_to_pda1(&p.to_pda2(), &sentinel)?.into()
                }
                _ => return Err(mismatch("convert", &m)),
            };
            emit(out.as_deref(), &serialize(&converted))?;
            Ok(ACCEPTED)
        }
        Command::Determinize { machine, out } => {
            let m = load(&machine)?;
            let d = match &m {
                AnyMachine::Pda2(p) => subset_construct(p)?,
                AnyMachine::Dpda2(p) => subset_construct(&p.to_pda2())?,
                _ => return Err(mismatch("determinize", &m)),
            };
            emit(out.as_deref(), &serialize(&d.into()))?;
            Ok(ACCEPTED)
        }
        Command::Qprob {
            machine,
            input,
            max_len,
            tol,
            witness,
        } => {
            let m = load_quantum(&machine, tol)?;
            let word = m.alphabets.split_input(&input)?;
            match best_annotation(&m, &word, Bound::len(max_len))? {
                Some((p, w)) => {
                    println!("{p}");
                    if witness {
                        println!("witness: {w}");
                    }
                }
                None => println!("0"),
            }
            Ok(ACCEPTED)
        }
        Command::Oracle {
            machine,
            max_input_len,
            max_annot_len,
        } => {
            let m = load(&machine)?;
            let pda;
            let target: sm_core::recognition::OracleTarget = match &m {
                AnyMachine::TwoStack(t) => t.into(),
                AnyMachine::Pda2(p) => p.into(),
                AnyMachine::Dpda2(d) => {
                    pda = d.to_pda2();
                    (&pda).into()
                }
                _ => return Err(mismatch("oracle", &m)),
            };
            let alphabet: Vec<String> = m.alphabets().input.iter().cloned().collect();
            let mut layer: Vec<Vec<String>> = vec![Vec::new()];
            for len in 0..=max_input_len {
                for w in &layer {
                    if brute_force_witness(target, w, max_annot_len)?.is_some() {
                        println!("{}", show_word(w));
                    }
                }
                if len < max_input_len {
                    layer = layer
                        .iter()
                        .flat_map(|w| {
                            alphabet
                                .iter()
                                .map(move |a| [w.clone(), vec![a.clone()]].concat())
                        })
                        .collect();
                }
            }
            Ok(ACCEPTED)
        }
        Command::ExportDot { machine, out } => {
            let m = load(&machine)?;
            emit(out.as_deref(), &to_dot(&m))?;
            Ok(ACCEPTED)
        }
    }
}

fn load_quantum(path: &Path, tol: f64) -> Result<sm_core::QuantumMachine, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?;
    match parse_machine_with_tolerance(&text, tol) {
        Ok(AnyMachine::Quantum(q)) => Ok(q),
        Ok(other) => Err(mismatch("qprob", &other)),
        Err(e) => Err(Failure(USAGE, format!("{}: {e}", path.display()))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
