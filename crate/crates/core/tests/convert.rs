use rand::rngs::StdRng;
use rand::SeedableRng;
use sm_core::convert::{pda1_to_pda2_traced, DEFAULT_SENTINEL};
use sm_core::{accepts_pda2, fixtures, pda1_to_pda2, pda2_to_pda1, validate_machine, PdaI};
use sm_testkit::{gen, lang, pda1, words};

const BINARY: &[&str] = &["0", "1"];

fn pushed_length(m: &PdaI) -> usize {
    m.delta.values().flatten().map(|mv| mv.push.len()).sum()
}

#[test]
fn pda1_to_pda2_preserves_language_on_random_machines() {
    let mut rng = StdRng::seed_from_u64(0x7431);
    let inputs = words(BINARY, 6);
    for round in 0..200 {
        let m = gen::pda1(&mut rng, 4, 2, 6);
        let converted = pda1_to_pda2(&m).unwrap();
        assert!(validate_machine(&converted).is_empty());
        for x in &inputs {
            let expected = pda1::accepts(&m, x);
            let (got, witness) = accepts_pda2(&converted, x).unwrap();
            assert_eq!(got, expected, "machine {round}, x = {x:?}\n{m:?}");
            assert_eq!(witness.is_some(), got);
        }
    }
}

#[test]
fn pda2_to_pda1_preserves_language_on_random_machines() {
    let mut rng = StdRng::seed_from_u64(0x7432);
    let inputs = words(BINARY, 6);
    for round in 0..200 {
        let m = gen::pda2(&mut rng, 4, 2, 8);
        let converted = pda2_to_pda1(&m, DEFAULT_SENTINEL).unwrap();
        assert!(validate_machine(&converted).is_empty());
        let back = pda1_to_pda2(&converted).unwrap();
        for x in &inputs {
            let (expected, _) = accepts_pda2(&m, x).unwrap();
            assert_eq!(
                pda1::accepts(&converted, x),
                expected,
                "machine {round}, x = {x:?}\n{m:?}"
            );
            assert_eq!(accepts_pda2(&back, x).unwrap().0, expected);
        }
    }
}

#[test]
fn converted_transition_counts() {
    let mut rng = StdRng::seed_from_u64(0x7433);
    for _ in 0..300 {
        let m = gen::pda1(&mut rng, 4, 2, 6);
        let t = m.transition_count();
        let g = pushed_length(&m);
        let out = pda1_to_pda2(&m).unwrap();
        let gadget = 1 + m.accepting.len() + m.alphabets.stack.len();
        assert_eq!(out.transition_count(), 2 * t + g + gadget, "{m:?}");
    }
}

#[test]
fn conversion_is_deterministic_and_fresh() {
    let mut rng = StdRng::seed_from_u64(0x7434);
    for _ in 0..100 {
        let m = gen::pda1(&mut rng, 4, 2, 6);
        let a = pda1_to_pda2_traced(&m).unwrap();
        let b = pda1_to_pda2_traced(&m).unwrap();
        assert_eq!(a, b);
        assert!(m.states.is_subset(&a.machine.states));
        let added = a.machine.states.len() - m.states.len();
        assert_eq!(added, a.aux.len() + 2);
        for name in a.aux.keys().chain([&a.start, &a.drain]) {
            assert!(!m.states.contains(name));
        }

        let p = gen::pda2(&mut rng, 4, 2, 8);
        assert_eq!(
            pda2_to_pda1(&p, DEFAULT_SENTINEL).unwrap(),
            pda2_to_pda1(&p, DEFAULT_SENTINEL).unwrap()
        );
    }
}

#[test]
fn anbn_pda1_converts_to_equivalent_pda2() {
    let m = fixtures::anbn();
    let converted = pda1_to_pda2(&m).unwrap();
    for x in words(BINARY, 6) {
        assert_eq!(
            accepts_pda2(&converted, &x).unwrap().0,
            lang::is_anbn(&x),
            "{x:?}"
        );
    }
}

#[test]
fn lwwr_round_trip() {
    let m = fixtures::lwwr();
    let p1 = pda2_to_pda1(&m, DEFAULT_SENTINEL).unwrap();
    let back = pda1_to_pda2(&p1).unwrap();
    for x in words(BINARY, 6) {
        let expected = lang::is_wwr(&x);
        assert_eq!(accepts_pda2(&back, &x).unwrap().0, expected, "{x:?}");
        assert_eq!(pda1::accepts(&p1, &x), expected, "{x:?}");
    }
}
