//! Membership oracles for classical PDAs accepting by final state.
//!
//! [`accepts`] is exact: it computes, for every state p, stack symbol X and
//! input span [i, j), whether the machine can go from p with X on top at i to
//! some q at j having just removed X, without touching anything below X. This
//! is the triple construction of the equivalent context-free grammar, solved
//! as a least fixpoint. [`search`] is a plain configuration search with a
//! budget, used to cross-check it.

use std::collections::{HashMap, HashSet, VecDeque};

use sm_core::PdaI;

struct Rule {
    input: Option<usize>,
    target: usize,
    push: Vec<usize>,
}

type Ends = HashSet<(usize, usize)>;

struct Summaries {
    n: usize,
    states: usize,
    /// rules[p][X]
    rules: Vec<Vec<Vec<Rule>>>,
    /// pop[p][X][i] = every (q, j) such that p, X at i can end in q at j with X removed
    pop: Vec<Vec<Vec<Ends>>>,
}

impl Summaries {
    /// States and positions reachable after removing `symbols` in order,
    /// starting from `from`.
    fn chain(&self, from: (usize, usize), symbols: &[usize]) -> HashSet<(usize, usize)> {
        let mut current = HashSet::from([from]);
        for &y in symbols {
            let mut next = HashSet::new();
            for &(s, k) in &current {
                next.extend(self.pop[s][y][k].iter().copied());
            }
            current = next;
        }
        current
    }

    fn after_read(&self, rule: &Rule, word: &[usize], i: usize) -> Option<usize> {
        match rule.input {
            None => Some(i),
            Some(a) if i < self.n && word[i] == a => Some(i + 1),
            Some(_) => None,
        }
    }
}

pub fn accepts<S: AsRef<str>>(m: &PdaI, word: &[S]) -> bool {
    let state_ix: HashMap<&str, usize> = m
        .states
        .iter()
        .enumerate()
        .map(|(k, q)| (q.as_str(), k))
        .collect();
    let stack_ix: HashMap<&str, usize> = m
        .alphabets
        .stack
        .iter()
        .enumerate()
        .map(|(k, x)| (x.as_str(), k))
        .collect();
    let input_ix: HashMap<&str, usize> = m
        .alphabets
        .input
        .iter()
        .enumerate()
        .map(|(k, a)| (a.as_str(), k))
        .collect();
    let Some(word) = word
        .iter()
        .map(|a| input_ix.get(a.as_ref()).copied())
        .collect::<Option<Vec<usize>>>()
    else {
        return false;
    };
    let n = word.len();
    let (nq, ng) = (m.states.len(), m.alphabets.stack.len());

    let mut rules: Vec<Vec<Vec<Rule>>> = (0..nq)
        .map(|_| (0..ng).map(|_| Vec::new()).collect())
        .collect();
    for (key, moves) in &m.delta {
        for mv in moves {
            rules[state_ix[key.state.as_str()]][stack_ix[key.top.as_str()]].push(Rule {
                input: key.input.as_ref().map(|a| input_ix[a.as_str()]),
                target: state_ix[mv.target.as_str()],
                push: mv.push.iter().map(|y| stack_ix[y.as_str()]).collect(),
            });
        }
    }
    let mut t = Summaries {
        n,
        states: nq,
        rules,
        pop: vec![vec![vec![HashSet::new(); n + 1]; ng]; nq],
    };

    loop {
        let mut changed = false;
        for p in 0..t.states {
            for x in 0..ng {
                for i in 0..=n {
                    let mut found = Vec::new();
                    for rule in &t.rules[p][x] {
                        if let Some(i2) = t.after_read(rule, &word, i) {
                            found.extend(t.chain((rule.target, i2), &rule.push));
                        }
                    }
                    for e in found {
                        changed |= t.pop[p][x][i].insert(e);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let accepting: Vec<bool> = m.states.iter().map(|q| m.accepting.contains(q)).collect();
    let final_config = |(s, k): (usize, usize)| accepting[s] && k == n;
    // acc[p][X][i]: from p with X on top at i, an accepting configuration is
    // reached at the end of the input before anything below X is touched.
    let mut acc = vec![vec![vec![false; n + 1]; ng]; nq];
    loop {
        let mut changed = false;
        for p in 0..nq {
            for x in 0..ng {
                for i in 0..=n {
                    if acc[p][x][i] {
                        continue;
                    }
                    let mut hit = final_config((p, i));
                    for rule in &t.rules[p][x] {
                        if hit {
                            break;
                        }
                        let Some(i2) = t.after_read(rule, &word, i) else {
                            continue;
                        };
                        for split in 0..=rule.push.len() {
                            let reached = t.chain((rule.target, i2), &rule.push[..split]);
                            hit = match rule.push.get(split) {
                                Some(&y) => reached.iter().any(|&(s, k)| acc[s][y][k]),
                                None => reached.into_iter().any(final_config),
                            };
                            if hit {
                                break;
                            }
                        }
                    }
                    if hit {
                        acc[p][x][i] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    acc[state_ix[m.initial.as_str()]][stack_ix[m.bottom.as_str()]][0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    Accepted,
    /// Every reachable configuration was visited.
    Exhausted,
    /// The configuration budget ran out.
    Cut,
}

/// Breadth-first search over (state, position, stack) from (q₀, 0, Z₀),
/// visiting at most `budget` configurations.
pub fn search<S: AsRef<str>>(m: &PdaI, word: &[S], budget: usize) -> Search {
    let word: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
    type Config = (String, usize, Vec<String>);
    let start: Config = (m.initial.clone(), 0, vec![m.bottom.clone()]);
    let mut seen: HashSet<Config> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((state, pos, stack)) = queue.pop_front() {
        if pos == word.len() && m.accepting.contains(&state) {
            return Search::Accepted;
        }
        let Some(top) = stack.last() else { continue };
        for (key, moves) in &m.delta {
            if key.state != state || &key.top != top {
                continue;
            }
            let next_pos = match &key.input {
                None => pos,
                Some(a) if pos < word.len() && word[pos] == a => pos + 1,
                Some(_) => continue,
            };
            for mv in moves {
                let mut next = stack[..stack.len() - 1].to_vec();
                next.extend(mv.push.iter().rev().cloned());
                let config = (mv.target.clone(), next_pos, next);
                if seen.contains(&config) {
                    continue;
                }
                if seen.len() >= budget {
                    return Search::Cut;
                }
                seen.insert(config.clone());
                queue.push_back(config);
            }
        }
    }
    Search::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{chars, gen, lang, words};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn anbn_fixture() {
        let m = sm_core::fixtures::anbn();
        for w in words(&["0", "1"], 8) {
            assert_eq!(accepts(&m, &w), lang::is_anbn(&w), "{w:?}");
        }
        assert_eq!(search(&m, &chars("0011"), 1_000), Search::Accepted);
    }

    #[test]
    fn agrees_with_settled_searches() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut settled = 0;
        for _ in 0..60 {
            let m = gen::pda1(&mut rng, 4, 2, 6);
            for w in words(&["0", "1"], 4) {
                match search(&m, &w, 1_000) {
                    Search::Accepted => assert!(accepts(&m, &w), "{m:?} {w:?}"),
                    Search::Exhausted => assert!(!accepts(&m, &w), "{m:?} {w:?}"),
                    Search::Cut => continue,
                }
                settled += 1;
            }
        }
        assert!(settled > 1_000);
    }
}
