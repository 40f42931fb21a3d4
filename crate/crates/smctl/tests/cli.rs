use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::SeedableRng;
use sm_core::{brute_force_accepts, fixtures, parse_machine, serialize, AnyMachine};
use sm_testkit::{gen, lang, pda1, words};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn smctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smctl"))
        .args(args)
        .output()
        .expect("smctl runs")
}

fn code(args: &[&str]) -> i32 {
    smctl(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(smctl(args).stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn accept(machine: &Path, x: &[String]) -> i32 {
    code(&["accept", "-m", path(machine), "-x", &x.concat()])
}

#[test]
fn check_valid_exit_codes() {
    assert_eq!(
        code(&[
            "check-valid",
            "push1:X push1:Y push1:X pop1:X pop1:Y pop1:X"
        ]),
        0
    );
    let out = smctl(&[
        "check-valid",
        "push1:X push1:Y push1:X pop1:Y pop1:Y pop1:X",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("illegal pop at position 4"));
    assert_eq!(code(&["check-valid", ""]), 0);
    assert_eq!(code(&["check-valid"]), 0);
    assert_eq!(code(&["check-valid", "push:X", "pop:X"]), 0);
    assert_eq!(code(&["check-valid", "pop:X"]), 1);
    assert_eq!(
        code(&["check-valid", "(push1:X,push2:Y) (pop1:X,pop2:Y)"]),
        0
    );
    assert_eq!(code(&["check-valid", "(push1:X,push2:Y) (pop1:X,_)"]), 1);
    assert_eq!(code(&["check-valid", "push:X 0 pop:X"]), 2);
    assert_eq!(code(&["check-valid", "push1:X pop2:X"]), 2);
    assert_eq!(code(&["check-valid", "(push1:X"]), 2);
}

#[test]
fn accept_exit_codes() {
    let leq = fixture("leq.sm");
    let lwwr = fixture("lwwr.sm");
    let leq = path(&leq);
    let lwwr = path(&lwwr);
    let cases: &[(&[&str], i32)] = &[
        (
            &[
                "accept",
                "-m",
                leq,
                "-x",
                "000111222",
                "--max-steps",
                "5000",
                "--max-depth",
                "12",
            ],
            0,
        ),
        (&["accept", "-m", lwwr, "-x", "010"], 1),
        (
            &["accept", "-m", leq, "-x", "012012", "--max-steps", "10"],
            3,
        ),
        (&["accept", "-m", leq, "-x", "0012"], 1),
        (&["accept", "-m", leq], 0),
        (&["accept", "-m", lwwr, "-x", "0110"], 0),
        (&["accept", "-m", lwwr, "-x", "01a"], 2),
        (&["accept", "-m", "/nonexistent/machine.sm"], 2),
        (&["accept", "-x", "0"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "{args:?}");
    }
    let lw = fixture("lw.sm");
    assert_eq!(code(&["accept", "-m", path(&lw), "-x", "01#01"]), 0);
    assert_eq!(code(&["accept", "-m", path(&lw), "-x", "01#10"]), 1);
    let anbn = fixture("anbn.sm");
    assert_eq!(code(&["accept", "-m", path(&anbn), "-x", "0011"]), 0);
    assert_eq!(code(&["accept", "-m", path(&anbn), "-x", "001"]), 1);
    let rot = fixture("rot.sm");
    assert_eq!(code(&["accept", "-m", path(&rot), "-x", "0"]), 2);

    let out = stdout(&["accept", "-m", lwwr, "-x", "0110", "--witness"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("accepted"));
    let witness = lines.next().unwrap().strip_prefix("witness: ").unwrap();
    let s: sm_core::AnnotationString = witness.parse().unwrap();
    assert!(sm_core::recognition::is_pda2_witness(
        &fixtures::lwwr(),
        &sm_testkit::chars("0110"),
        &s
    ));
    assert_eq!(
        stdout(&["accept", "-m", lwwr, "-x", "010"]).trim(),
        "rejected"
    );
    assert!(
        stdout(&["accept", "-m", leq, "-x", "012012", "--max-steps", "10"])
            .starts_with("inconclusive")
    );
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.sm");
    std::fs::write(
        &bad,
        "machine pda2\nstates q0\ninitial q0\naccept qx\ninput 0\n",
    )
    .unwrap();
    let out = smctl(&["accept", "-m", path(&bad), "-x", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4") && err.contains("qx"), "{err}");
    for cmd in ["determinize", "export-dot", "qprob"] {
        assert_eq!(code(&[cmd, "-m", path(&bad)]), 2, "{cmd}");
    }
}

#[test]
fn kind_mismatches_exit_2() {
    let leq = fixture("leq.sm");
    let lwwr = fixture("lwwr.sm");
    let anbn = fixture("anbn.sm");
    assert_eq!(code(&["determinize", "-m", path(&leq)]), 2);
    assert_eq!(code(&["convert", "--to", "pda1", "-m", path(&leq)]), 2);
    assert_eq!(code(&["convert", "--to", "pda2", "-m", path(&lwwr)]), 2);
    assert_eq!(code(&["convert", "--to", "pda1", "-m", path(&anbn)]), 2);
    assert_eq!(code(&["qprob", "-m", path(&lwwr), "-x", "0"]), 2);
    assert_eq!(code(&["oracle", "-m", path(&anbn)]), 2);
    assert_eq!(
        code(&[
            "convert",
            "--to",
            "pda1",
            "-m",
            path(&lwwr),
            "--sentinel",
            "0"
        ]),
        2
    );
}

#[test]
fn converted_files_agree_with_sources() {
    let dir = TempDir::new().unwrap();
    let p2 = dir.path().join("anbn2.sm");
    assert_eq!(
        code(&[
            "convert",
            "--to",
            "pda2",
            "-m",
            path(&fixture("anbn.sm")),
            "-o",
            path(&p2)
        ]),
        0
    );
    for x in words(&["0", "1"], 6) {
        let expected = if lang::is_anbn(&x) { 0 } else { 1 };
        assert_eq!(accept(&p2, &x), expected, "{x:?}");
    }

    let p1 = dir.path().join("lwwr1.sm");
    assert_eq!(
        code(&[
            "convert",
            "--to",
            "pda1",
            "-m",
            path(&fixture("lwwr.sm")),
            "-o",
            path(&p1)
        ]),
        0
    );
    let AnyMachine::Pda1(m) = parse_machine(&std::fs::read_to_string(&p1).unwrap()).unwrap() else {
        panic!("convert --to pda1 wrote another kind")
    };
    assert!(m.alphabets.stack.contains("$"));
    for x in words(&["0", "1"], 6) {
        assert_eq!(pda1::accepts(&m, &x), lang::is_wwr(&x), "{x:?}");
    }

    let mut rng = StdRng::seed_from_u64(0xc11);
    for i in 0..10 {
        let m = gen::pda1(&mut rng, 4, 2, 6);
        let src = dir.path().join(format!("r{i}.sm"));
        let dst = dir.path().join(format!("r{i}-2.sm"));
        std::fs::write(&src, serialize(&m.clone().into())).unwrap();
        assert_eq!(
            code(&[
                "convert",
                "--to",
                "pda2",
                "-m",
                path(&src),
                "-o",
                path(&dst)
            ]),
            0
        );
        for x in words(&["0", "1"], 4) {
            let expected = if pda1::accepts(&m, &x) { 0 } else { 1 };
            assert_eq!(accept(&dst, &x), expected, "{x:?}");
            assert_eq!(accept(&src, &x), expected, "{x:?}");
        }
    }
}

#[test]
fn determinized_lwwr_keeps_its_language() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("d.sm");
    assert_eq!(
        code(&[
            "determinize",
            "-m",
            path(&fixture("lwwr.sm")),
            "-o",
            path(&d)
        ]),
        0
    );
    let text = std::fs::read_to_string(&d).unwrap();
    assert!(text.starts_with("machine dpda2"));
    for x in words(&["0", "1"], 6) {
        let expected = if lang::is_wwr(&x) { 0 } else { 1 };
        assert_eq!(accept(&d, &x), expected, "{x:?}");
    }
    assert_eq!(
        stdout(&["determinize", "-m", path(&fixture("lwwr.sm"))]),
        text
    );
}

#[test]
fn qprob_of_rotation_fixture() {
    let rot = fixture("rot.sm");
    let out = stdout(&["qprob", "-m", path(&rot), "-x", "0", "--max-len", "6"]);
    let p: f64 = out.trim().parse().unwrap();
    assert!((p - 0.25).abs() <= 1e-9, "{p}");
    let out = stdout(&["qprob", "-m", path(&rot), "-x", "", "--max-len", "6"]);
    assert_eq!(out.trim().parse::<f64>().unwrap(), 0.0);
    assert_eq!(
        code(&["qprob", "-m", path(&rot), "-x", "0", "--max-len", "13"]),
        2
    );
    assert_eq!(code(&["qprob", "-m", path(&rot), "-x", "1"]), 2);
    let out = stdout(&["qprob", "-m", path(&rot), "-x", "00", "--witness"]);
    let p: f64 = out.lines().next().unwrap().parse().unwrap();
    assert!((p - 0.75).abs() <= 1e-9, "{p}");
    assert!(out.contains("witness: "));
}

#[test]
fn oracle_lists_witnessed_inputs() {
    let lwwr = fixtures::lwwr();
    let out = stdout(&[
        "oracle",
        "-m",
        path(&fixture("lwwr.sm")),
        "--max-input-len",
        "4",
        "--max-annot-len",
        "12",
    ]);
    let listed: Vec<&str> = out.lines().collect();
    let mut expected = Vec::new();
    for x in words(&["0", "1"], 4) {
        if brute_force_accepts(&lwwr, &x, 12).unwrap() {
            assert!(lang::is_wwr(&x));
            expected.push(if x.is_empty() {
                "ε".to_string()
            } else {
                x.concat()
            });
        }
    }
    assert_eq!(listed, expected);
    assert!(listed.contains(&"0110"));
}

#[test]
fn export_dot_is_well_formed() {
    let dir = TempDir::new().unwrap();
    for (name, text) in fixtures::ALL {
        let m = parse_machine(text).unwrap();
        let file = fixture(name);
        let dot = stdout(&["export-dot", "-m", path(&file)]);
        assert_eq!(dot, sm_core::dot::to_dot(&m));
        let g = sm_testkit::dot::check(&dot).unwrap();
        assert!(!g.nodes.is_empty());
        let out = dir.path().join("m.dot");
        assert_eq!(
            code(&["export-dot", "-m", path(&file), "-o", path(&out)]),
            0
        );
        assert_eq!(std::fs::read_to_string(&out).unwrap(), dot);
    }
}
