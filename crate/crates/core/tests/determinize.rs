use std::collections::{BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sm_core::determinize::subset_construct_traced;
use sm_core::{
    accepts_dpda2, accepts_pda2, brute_force_accepts, corollary1_language, fixtures, pda1_to_pda2,
    subset_construct, validate_machine, DpdaII, PdaII, Token,
};
use sm_testkit::{gen, lang, words};

/// ε-NFA state sets, computed without the library's closure.
fn close(m: &PdaII, set: BTreeSet<String>) -> BTreeSet<String> {
    let mut out = set;
    loop {
        let more: BTreeSet<String> = out
            .iter()
            .filter_map(|q| m.delta.get(&(q.clone(), Token::Epsilon)))
            .flatten()
            .cloned()
            .collect();
        if more.is_subset(&out) {
            return out;
        }
        out.extend(more);
    }
}

fn step(m: &PdaII, set: &BTreeSet<String>, t: &Token) -> BTreeSet<String> {
    let next = set
        .iter()
        .filter_map(|q| m.delta.get(&(q.clone(), t.clone())))
        .flatten()
        .cloned()
        .collect();
    close(m, next)
}

/// Walks every extended word up to `max_len` depth-first, comparing the NFA
/// and DFA readings; returns the number of words compared.
fn compare_exhaustively(m: &PdaII, d: &DpdaII, letters: &[Token], max_len: usize) -> usize {
    fn walk(
        m: &PdaII,
        d: &DpdaII,
        letters: &[Token],
        left: usize,
        nfa: &BTreeSet<String>,
        dfa: Option<&String>,
        word: &mut Vec<Token>,
    ) -> usize {
        let nfa_accepts = nfa.iter().any(|q| m.accepting.contains(q));
        let dfa_accepts = dfa.is_some_and(|q| d.accepting.contains(q));
        assert_eq!(nfa_accepts, dfa_accepts, "{word:?}");
        assert_eq!(nfa_accepts, d.accepts_extended(word));
        let mut count = 1;
        if left == 0 || (nfa.is_empty() && dfa.is_none()) {
            return count;
        }
        for t in letters {
            let next = step(m, nfa, t);
            let next_d = dfa.and_then(|q| d.step(q, t));
            word.push(t.clone());
            count += walk(m, d, letters, left - 1, &next, next_d, word);
            word.pop();
        }
        count
    }
    let start = close(m, BTreeSet::from([m.initial.clone()]));
    walk(
        m,
        d,
        letters,
        max_len,
        &start,
        Some(&d.initial),
        &mut Vec::new(),
    )
}

fn compare_sampled(m: &PdaII, d: &DpdaII, letters: &[Token], max_len: usize, samples: usize) {
    let mut rng = StdRng::seed_from_u64(0x5a);
    for _ in 0..samples {
        let len = rng.gen_range(0..=max_len);
        let word: Vec<Token> = (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())].clone())
            .collect();
        let mut set = close(m, BTreeSet::from([m.initial.clone()]));
        for t in &word {
            set = step(m, &set, t);
        }
        let nfa = set.iter().any(|q| m.accepting.contains(q));
        assert_eq!(nfa, d.accepts_extended(&word), "{word:?}");
    }
}

fn check_sigma_language(m: &PdaII, d: &DpdaII) {
    for x in words(&["0", "1"], 6) {
        assert_eq!(
            accepts_pda2(m, &x).unwrap().0,
            accepts_dpda2(d, &x).unwrap(),
            "{x:?}"
        );
    }
}

fn check_subsets(m: &PdaII) {
    let traced = subset_construct_traced(m).unwrap();
    let d = &traced.machine;
    assert!(validate_machine(d).is_empty());
    assert_eq!(
        traced.subsets.keys().collect::<BTreeSet<_>>(),
        d.states.iter().collect()
    );
    for subset in traced.subsets.values() {
        assert!(!subset.members.is_empty());
        assert_eq!(close(m, subset.members.clone()), subset.members);
    }
    let mut seen = BTreeSet::from([d.initial.clone()]);
    let mut queue = VecDeque::from([d.initial.clone()]);
    while let Some(q) = queue.pop_front() {
        for ((from, _), to) in &d.delta {
            if *from == q && seen.insert(to.clone()) {
                queue.push_back(to.clone());
            }
        }
    }
    assert_eq!(seen, d.states);
}

#[test]
fn lwwr_determinizes() {
    let m = fixtures::lwwr();
    let d = subset_construct(&m).unwrap();
    let letters = m.alphabets.single_stack_tokens();
    assert_eq!(letters.len(), 8);
    compare_sampled(&m, &d, &letters, 8, 100_000);
    check_sigma_language(&m, &d);
    check_subsets(&m);
    assert_eq!(subset_construct(&m).unwrap(), d);
}

#[test]
fn random_machines_determinize() {
    let mut rng = StdRng::seed_from_u64(0x7e2);
    for _ in 0..100 {
        let m = gen::pda2(&mut rng, 4, 2, 10);
        let d = subset_construct(&m).unwrap();
        let letters = m.alphabets.single_stack_tokens();
        assert!(letters.len() <= 6);
        let expected: usize = (0..=8).map(|k| letters.len().pow(k)).sum();
        let compared = compare_exhaustively(&m, &d, &letters, 8);
        assert!(compared <= expected);
        check_sigma_language(&m, &d);
        check_subsets(&m);
    }
}

#[test]
fn determinized_anbn_conversion_keeps_its_language() {
    let m = pda1_to_pda2(&fixtures::anbn()).unwrap();
    let d = subset_construct(&m).unwrap();
    for x in words(&["0", "1"], 6) {
        assert_eq!(accepts_dpda2(&d, &x).unwrap(), lang::is_anbn(&x), "{x:?}");
    }
}

fn check_enumeration(m: &PdaII, bound: usize) -> usize {
    let language = corollary1_language(m, bound).unwrap();
    for x in &language {
        assert!(accepts_pda2(m, x).unwrap().0, "{x:?}");
    }
    let mut witnessed = 0;
    for x in words(&["0", "1"], bound) {
        if brute_force_accepts(m, &x, bound).unwrap() {
            witnessed += 1;
            assert!(language.contains(&x), "{x:?}");
        }
    }
    witnessed
}

#[test]
fn enumeration_matches_short_witnesses_on_fixtures() {
    let lwwr = fixtures::lwwr();
    let language = corollary1_language(&lwwr, 8).unwrap();
    assert!(language.iter().all(|x| lang::is_wwr(x)));
    assert!(language.contains(&vec!["0".to_string(), "0".to_string()]));

    assert!(check_enumeration(&lwwr, 10) > 1);
    let d = subset_construct(&lwwr).unwrap();
    let from_dpda = corollary1_language(&d, 10).unwrap();
    assert_eq!(from_dpda, corollary1_language(&lwwr, 10).unwrap());
    check_enumeration(&d.to_pda2(), 10);
    check_enumeration(&pda1_to_pda2(&fixtures::anbn()).unwrap(), 10);
    assert!(corollary1_language(&lwwr, 11).is_err());
}

#[test]
fn enumeration_matches_short_witnesses_on_random_machines() {
    let mut rng = StdRng::seed_from_u64(0xc1);
    for _ in 0..40 {
        let m = gen::pda2(&mut rng, 3, 2, 8);
        check_enumeration(&m, 8);
    }
}
