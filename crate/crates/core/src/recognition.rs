//! Membership: exact table-based recognition for PDA-II and DPDA-II, witness
//! checking and bounded configuration search for two-stack machines, and a
//! length-bounded enumeration oracle.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::Alphabets;
use crate::bound::Bound;
use crate::compiled::{apply_side, IndexedPda2, IndexedTwoStack, Move};
use crate::error::{Error, Result};
use crate::machine::{DpdaII, Letters, PdaII, TwoStackMachine, Validate};
use crate::project::project_input;
use crate::symbol::{AnnotationString, PairOp, StackOp, Token};
use crate::validity::{check_valid_single, is_valid_pair_string};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted(AnnotationString),
    Rejected,
    /// The search hit its step or depth bound before reaching a decision.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub verdict: Verdict,
    pub states_visited: usize,
}

impl RunOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted(_))
    }

    pub fn witness(&self) -> Option<&AnnotationString> {
        match &self.verdict {
            Verdict::Accepted(w) => Some(w),
            _ => None,
        }
    }
}

fn check_tokens(alphabets: &Alphabets, s: &AnnotationString, letters: Letters) -> Result<()> {
    match s.iter().find(|t| !alphabets.admits(t, letters)) {
        Some(t) => Err(Error::TokenOutsideAlphabet(t.to_string())),
        None => Ok(()),
    }
}

/// Runs a two-stack machine along one annotation string.
///
/// The string is accepted iff every step has a transition, the run ends in an
/// accepting state and both stack projections are valid. The input it
/// witnesses is its input projection.
pub fn run_annotation_two_stack(m: &TwoStackMachine, s: &AnnotationString) -> Result<RunOutcome> {
    check_tokens(&m.alphabets, s, Letters::TwoStack)?;
    let mut state = &m.initial;
    for (i, token) in s.iter().enumerate() {
        match m.step(state, token) {
            Some(next) => state = next,
            None => {
                return Ok(RunOutcome {
                    verdict: Verdict::Rejected,
                    states_visited: i + 1,
                })
            }
        }
    }
    let pairs: Vec<PairOp> = s
        .iter()
        .filter_map(|t| match t {
            Token::Pair(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    let verdict = if m.accepting.contains(state) && is_valid_pair_string(&pairs) {
        Verdict::Accepted(s.clone())
    } else {
        Verdict::Rejected
    };
    Ok(RunOutcome {
        verdict,
        states_visited: s.len() + 1,
    })
}

/// True iff `s` witnesses that `m` accepts `word`.
pub fn is_two_stack_witness<S: AsRef<str>>(
    m: &TwoStackMachine,
    word: &[S],
    s: &AnnotationString,
) -> bool {
    project_input(s)
        .input_word()
        .iter()
        .map(String::as_str)
        .eq(word.iter().map(AsRef::as_ref))
        && run_annotation_two_stack(m, s).is_ok_and(|o| o.is_accepted())
}

/// True iff `s` witnesses that the PDA-II `m` accepts `word`: its input
/// projection is `word`, some run along it (ε tokens taking ε-moves) ends in
/// F, and its stack projection is valid.
pub fn is_pda2_witness<S: AsRef<str>>(m: &PdaII, word: &[S], s: &AnnotationString) -> bool {
    if !project_input(s)
        .input_word()
        .iter()
        .map(String::as_str)
        .eq(word.iter().map(AsRef::as_ref))
    {
        return false;
    }
    if check_tokens(&m.alphabets, s, Letters::SingleStack { epsilon: true }).is_err() {
        return false;
    }
    let ops: Vec<StackOp> = s
        .iter()
        .filter_map(|t| match t {
            Token::Op(op) => Some(op.clone()),
            _ => None,
        })
        .collect();
    if !check_valid_single(&ops).is_ok_and(|t| t.is_valid()) {
        return false;
    }
    let mut current: HashSet<&String> = HashSet::from([&m.initial]);
    for token in s {
        current = current
            .iter()
            .flat_map(|q| m.successors(q, token))
            .collect();
    }
    current.iter().any(|q| m.accepting.contains(*q))
}

/// Bounds for the two-stack configuration search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Configurations expanded before giving up.
    pub max_steps: usize,
    /// Largest height either stack may reach.
    pub max_depth: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_steps: 100_000,
            max_depth: 16,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Config {
    state: usize,
    pos: usize,
    first: Vec<u16>,
    second: Vec<u16>,
}

/// Breadth-first search for an accepting configuration of a two-stack machine.
///
/// Accepted comes with a witness; Rejected means the whole reachable
/// configuration space was explored without pruning; anything cut short by
/// `limits` is Inconclusive.
pub fn accepts_two_stack_bounded<S: AsRef<str>>(
    m: &TwoStackMachine,
    word: &[S],
    limits: SearchLimits,
) -> Result<RunOutcome> {
    m.ensure_valid()?;
    m.alphabets.check_input(word)?;
    let machine = IndexedTwoStack::new(m);
    let word: Vec<usize> = word.iter().map(|a| machine.input_ix[a.as_ref()]).collect();
    let n = word.len();

    let mut configs: Vec<Config> = Vec::new();
    let mut parents: Vec<Option<(usize, Token)>> = Vec::new();
    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let accepting = |c: &Config| {
        machine.accepting[c.state] && c.pos == n && c.first.is_empty() && c.second.is_empty()
    };
    let witness = |parents: &Vec<Option<(usize, Token)>>, mut id: usize| {
        let mut tokens = Vec::new();
        while let Some((parent, token)) = &parents[id] {
            tokens.push(token.clone());
            id = *parent;
        }
        tokens.reverse();
        AnnotationString(tokens)
    };

    let start = Config {
        state: machine.initial,
        pos: 0,
        first: Vec::new(),
        second: Vec::new(),
    };
    if accepting(&start) {
        return Ok(RunOutcome {
            verdict: Verdict::Accepted(AnnotationString::new()),
            states_visited: 1,
        });
    }
    ids.insert(start.clone(), 0);
    configs.push(start);
    parents.push(None);
    queue.push_back(0);

    let mut steps = 0;
    let mut pruned = false;
    while let Some(id) = queue.pop_front() {
        if steps == limits.max_steps {
            return Ok(RunOutcome {
                verdict: Verdict::Inconclusive,
                states_visited: configs.len(),
            });
        }
        steps += 1;
        let config = configs[id].clone();
        for (mv, target, token) in &machine.moves[config.state] {
            let mut next = Config {
                state: *target,
                ..config.clone()
            };
            match *mv {
                Move::Input(a) => {
                    if config.pos >= n || word[config.pos] != a {
                        continue;
                    }
                    next.pos += 1;
                }
                Move::Pair(first, second) => {
                    if !apply_side(&mut next.first, first) || !apply_side(&mut next.second, second)
                    {
                        continue;
                    }
                    if next.first.len() > limits.max_depth || next.second.len() > limits.max_depth {
                        pruned = true;
                        continue;
                    }
                }
                Move::Tape => {}
            }
            if ids.contains_key(&next) {
                continue;
            }
            let next_id = configs.len();
            let done = accepting(&next);
            ids.insert(next.clone(), next_id);
            configs.push(next);
            parents.push(Some((id, token.clone())));
            if done {
                let w = witness(&parents, next_id);
                return Ok(RunOutcome {
                    verdict: Verdict::Accepted(w),
                    states_visited: configs.len(),
                });
            }
            queue.push_back(next_id);
        }
    }
    let verdict = if pruned {
        Verdict::Inconclusive
    } else {
        Verdict::Rejected
    };
    Ok(RunOutcome {
        verdict,
        states_visited: configs.len(),
    })
}

/// How an entry of the reachability table was first derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Derivation {
    Base,
    /// (p,i,mid,j-1) followed by the input symbol at j-1.
    Input {
        mid: usize,
    },
    /// (p,i,mid,j) followed by an ε-move.
    Epsilon {
        mid: usize,
    },
    /// Push `symbol` into `inner_from`, balanced segment to `inner_to`, pop `symbol`.
    Wrap {
        symbol: usize,
        inner_from: usize,
        inner_to: usize,
    },
    /// (p,i,mid,k) then (mid,k,q,j).
    Concat {
        k: usize,
        mid: usize,
    },
}

/// The balanced-reachability relation of a PDA-II on one input word.
///
/// (p, i, q, j) is present iff some annotation segment leads from p to q while
/// consuming exactly `word[i..j]`, with a stack projection that never pops
/// below its starting level, only pops matching symbols, and ends where it began.
pub struct BalancedReachabilityTable {
    machine: IndexedPda2,
    word: Vec<usize>,
    cells: Vec<Vec<Option<Derivation>>>,
}

impl BalancedReachabilityTable {
    pub fn build<S: AsRef<str>>(m: &PdaII, word: &[S]) -> Result<Self> {
        m.ensure_valid()?;
        m.alphabets.check_input(word)?;
        let machine = IndexedPda2::new(m);
        let word = machine.word(word);
        let n = word.len();
        let mut table = BalancedReachabilityTable {
            machine,
            word,
            cells: vec![Vec::new(); (n + 1) * (n + 1)],
        };
        for len in 0..=n {
            for i in 0..=n - len {
                let cell = table.fill(i, i + len);
                let at = table.at(i, i + len);
                table.cells[at] = cell;
            }
        }
        Ok(table)
    }

    fn at(&self, i: usize, j: usize) -> usize {
        i * (self.word.len() + 1) + j
    }

    fn fill(&self, i: usize, j: usize) -> Vec<Option<Derivation>> {
        let m = &self.machine;
        let nq = m.states.len();
        let mut cell: Vec<Option<Derivation>> = vec![None; nq * nq];
        let mut work: Vec<(usize, usize)> = Vec::new();
        let add = |cell: &mut Vec<Option<Derivation>>,
                   work: &mut Vec<(usize, usize)>,
                   p: usize,
                   q: usize,
                   d: Derivation| {
            if cell[p * nq + q].is_none() {
                cell[p * nq + q] = Some(d);
                work.push((p, q));
            }
        };

        if i == j {
            for p in 0..nq {
                add(&mut cell, &mut work, p, p, Derivation::Base);
            }
        } else {
            let shorter = &self.cells[self.at(i, j - 1)];
            let symbol = self.word[j - 1];
            for p in 0..nq {
                for mid in 0..nq {
                    if shorter[p * nq + mid].is_some() {
                        for &q in &m.on_input[mid][symbol] {
                            add(&mut cell, &mut work, p, q, Derivation::Input { mid });
                        }
                    }
                }
            }
            for k in i + 1..j {
                let left = &self.cells[self.at(i, k)];
                let right = &self.cells[self.at(k, j)];
                for p in 0..nq {
                    for mid in 0..nq {
                        if left[p * nq + mid].is_none() {
                            continue;
                        }
                        for q in 0..nq {
                            if right[mid * nq + q].is_some() {
                                add(&mut cell, &mut work, p, q, Derivation::Concat { k, mid });
                            }
                        }
                    }
                }
            }
        }

        while let Some((a, b)) = work.pop() {
            for &c in &m.on_eps[b] {
                add(&mut cell, &mut work, a, c, Derivation::Epsilon { mid: b });
            }
            for &(p, x) in &m.push_pred[a] {
                for &q in &m.on_pop[b][x] {
                    add(
                        &mut cell,
                        &mut work,
                        p,
                        q,
                        Derivation::Wrap {
                            symbol: x,
                            inner_from: a,
                            inner_to: b,
                        },
                    );
                }
            }
            // Zero-length segments glued on either side.
            for p in 0..nq {
                let left_has = if i == j {
                    cell[p * nq + a].is_some()
                } else {
                    self.cells[self.at(i, i)][p * nq + a].is_some()
                };
                if left_has {
                    add(
                        &mut cell,
                        &mut work,
                        p,
                        b,
                        Derivation::Concat { k: i, mid: a },
                    );
                }
            }
            for q in 0..nq {
                let right_has = if i == j {
                    cell[b * nq + q].is_some()
                } else {
                    self.cells[self.at(j, j)][b * nq + q].is_some()
                };
                if right_has {
                    add(
                        &mut cell,
                        &mut work,
                        a,
                        q,
                        Derivation::Concat { k: j, mid: b },
                    );
                }
            }
        }
        cell
    }

    fn state(&self, name: &str) -> Option<usize> {
        self.machine.states.iter().position(|s| s == name)
    }

    fn get(&self, p: usize, i: usize, q: usize, j: usize) -> Option<Derivation> {
        let n = self.word.len();
        if i > j || j > n {
            return None;
        }
        self.cells[self.at(i, j)][p * self.machine.states.len() + q]
    }

    pub fn contains(&self, p: &str, i: usize, q: &str, j: usize) -> bool {
        match (self.state(p), self.state(q)) {
            (Some(p), Some(q)) => self.get(p, i, q, j).is_some(),
            _ => false,
        }
    }

    /// All entries (p, i, q, j).
    pub fn entries(&self) -> impl Iterator<Item = (&str, usize, &str, usize)> + '_ {
        let n = self.word.len();
        let nq = self.machine.states.len();
        (0..=n).flat_map(move |i| {
            (i..=n).flat_map(move |j| {
                (0..nq * nq).filter_map(move |pq| {
                    self.cells[self.at(i, j)][pq].map(|_| {
                        (
                            self.machine.states[pq / nq].as_str(),
                            i,
                            self.machine.states[pq % nq].as_str(),
                            j,
                        )
                    })
                })
            })
        })
    }

    pub fn len(&self) -> usize {
        self.cells
            .iter()
            .map(|c| c.iter().filter(|d| d.is_some()).count())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The annotation segment recorded for (p, i, q, j), if the entry exists.
    pub fn segment(&self, p: &str, i: usize, q: &str, j: usize) -> Option<AnnotationString> {
        let (p, q) = (self.state(p)?, self.state(q)?);
        self.get(p, i, q, j)?;
        Some(self.rebuild(p, i, q, j))
    }

    fn rebuild(&self, p: usize, i: usize, q: usize, j: usize) -> AnnotationString {
        enum Work {
            Segment(usize, usize, usize, usize),
            Emit(Token),
        }
        let m = &self.machine;
        let mut out = Vec::new();
        let mut work = vec![Work::Segment(p, i, q, j)];
        while let Some(item) = work.pop() {
            let (p, i, q, j) = match item {
                Work::Emit(t) => {
                    out.push(t);
                    continue;
                }
                Work::Segment(p, i, q, j) => (p, i, q, j),
            };
            match self
                .get(p, i, q, j)
                .expect("derivations only reference existing entries")
            {
                Derivation::Base => {}
                Derivation::Input { mid } => {
                    work.push(Work::Emit(Token::Input(m.inputs[self.word[j - 1]].clone())));
                    work.push(Work::Segment(p, i, mid, j - 1));
                }
                Derivation::Epsilon { mid } => {
                    work.push(Work::Emit(Token::Epsilon));
                    work.push(Work::Segment(p, i, mid, j));
                }
                Derivation::Wrap {
                    symbol,
                    inner_from,
                    inner_to,
                } => {
                    let x = &m.stack[symbol];
                    work.push(Work::Emit(Token::pop(x.clone())));
                    work.push(Work::Segment(inner_from, i, inner_to, j));
                    work.push(Work::Emit(Token::push(x.clone())));
                }
                Derivation::Concat { k, mid } => {
                    work.push(Work::Segment(mid, k, q, j));
                    work.push(Work::Segment(p, i, mid, k));
                }
            }
        }
        AnnotationString(out)
    }

    /// A witness for the whole word, when some accepting state is reachable.
    pub fn accepting_witness(&self) -> Option<AnnotationString> {
        let m = &self.machine;
        let n = self.word.len();
        (0..m.states.len())
            .find(|&f| m.accepting[f] && self.get(m.initial, 0, f, n).is_some())
            .map(|f| self.rebuild(m.initial, 0, f, n))
    }
}

/// Exact PDA-II membership. On acceptance a witness annotation string is returned.
pub fn accepts_pda2<S: AsRef<str>>(
    m: &PdaII,
    word: &[S],
) -> Result<(bool, Option<AnnotationString>)> {
    let table = BalancedReachabilityTable::build(m, word)?;
    let witness = table.accepting_witness();
    Ok((witness.is_some(), witness))
}

pub fn accepts_dpda2<S: AsRef<str>>(m: &DpdaII, word: &[S]) -> Result<bool> {
    Ok(accepts_pda2(&m.to_pda2(), word)?.0)
}

/// A machine the enumeration oracle can run.
#[derive(Clone, Copy)]
pub enum OracleTarget<'a> {
    Pda2(&'a PdaII),
    TwoStack(&'a TwoStackMachine),
}

impl<'a> From<&'a PdaII> for OracleTarget<'a> {
    fn from(m: &'a PdaII) -> Self {
        OracleTarget::Pda2(m)
    }
}

impl<'a> From<&'a TwoStackMachine> for OracleTarget<'a> {
    fn from(m: &'a TwoStackMachine) -> Self {
        OracleTarget::TwoStack(m)
    }
}

/// Looks for an annotation string of length at most `bound.len` whose input
/// projection is `word`, whose stack projection is valid and which drives the
/// machine into an accepting state. Sound but incomplete: `false` only means
/// there is no short witness.
pub fn brute_force_accepts<'a, S: AsRef<str>>(
    m: impl Into<OracleTarget<'a>>,
    word: &[S],
    bound: impl Into<Bound>,
) -> Result<bool> {
    Ok(brute_force_witness(m, word, bound)?.is_some())
}

/// [`brute_force_accepts`], returning a shortest witness.
pub fn brute_force_witness<'a, S: AsRef<str>>(
    m: impl Into<OracleTarget<'a>>,
    word: &[S],
    bound: impl Into<Bound>,
) -> Result<Option<AnnotationString>> {
    let max_len = bound.into().checked(DEFAULT_BRUTE_FORCE_CAP)?;
    match m.into() {
        OracleTarget::Pda2(m) => {
            m.ensure_valid()?;
            m.alphabets.check_input(word)?;
            Ok(enumerate_pda2(m, word, max_len))
        }
        OracleTarget::TwoStack(m) => {
            m.ensure_valid()?;
            m.alphabets.check_input(word)?;
            Ok(enumerate_two_stack(m, word, max_len))
        }
    }
}

/// Level-by-level expansion of annotation prefixes. Two prefixes that reach
/// the same (state, position, stack) have the same extensions, so only the
/// first (shortest) is kept.
fn enumerate_pda2<S: AsRef<str>>(
    m: &PdaII,
    word: &[S],
    max_len: usize,
) -> Option<AnnotationString> {
    let word: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
    let n = word.len();
    let stack_ops = m.alphabets.stack_ops();
    type Node = (String, usize, Vec<String>);
    let mut seen: HashSet<Node> = HashSet::new();
    let mut order: Vec<Node> = Vec::new();
    let start: Node = (m.initial.clone(), 0, Vec::new());
    seen.insert(start.clone());
    order.push(start);
    let mut frontier = vec![0usize];
    let mut parent_of: Vec<Option<(usize, Token)>> = vec![None];

    let finish = |parent_of: &Vec<Option<(usize, Token)>>, mut id: usize| {
        let mut tokens = Vec::new();
        while let Some((p, t)) = &parent_of[id] {
            tokens.push(t.clone());
            id = *p;
        }
        tokens.reverse();
        AnnotationString(tokens)
    };

    for depth in 0..=max_len {
        let mut next_frontier = Vec::new();
        for &id in &frontier {
            let (state, pos, stack) = order[id].clone();
            if pos == n && stack.is_empty() && m.accepting.contains(&state) {
                return Some(finish(&parent_of, id));
            }
            if depth == max_len {
                continue;
            }
            let remaining = max_len - depth - 1;
            let mut candidates: Vec<Token> = Vec::new();
            if pos < n {
                candidates.push(Token::input(word[pos]));
            }
            candidates.push(Token::Epsilon);
            for op in &stack_ops {
                let t = Token::Op(op.clone());
                if op.is_push() || stack.last() == Some(&op.symbol) {
                    candidates.push(t);
                }
            }
            for token in candidates {
                let (next_pos, next_stack) = match &token {
                    Token::Input(_) => (pos + 1, stack.clone()),
                    Token::Op(op) if op.is_push() => {
                        let mut s = stack.clone();
                        s.push(op.symbol.clone());
                        (pos, s)
                    }
                    Token::Op(_) => (pos, stack[..stack.len() - 1].to_vec()),
                    _ => (pos, stack.clone()),
                };
                if remaining < (n - next_pos) + next_stack.len() {
                    continue;
                }
                for target in m.successors(&state, &token) {
                    let node: Node = (target.clone(), next_pos, next_stack.clone());
                    if !seen.insert(node.clone()) {
                        continue;
                    }
                    order.push(node);
                    parent_of.push(Some((id, token.clone())));
                    next_frontier.push(order.len() - 1);
                }
            }
        }
        frontier = next_frontier;
    }
    None
}

fn enumerate_two_stack<S: AsRef<str>>(
    m: &TwoStackMachine,
    word: &[S],
    max_len: usize,
) -> Option<AnnotationString> {
    let word: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
    let n = word.len();
    type Node = (String, usize, Vec<String>, Vec<String>);
    let mut seen: HashSet<Node> = HashSet::new();
    let start: Node = (m.initial.clone(), 0, Vec::new(), Vec::new());
    seen.insert(start.clone());
    let mut frontier: Vec<(Node, Vec<Token>)> = vec![(start, Vec::new())];

    let apply = |stack: &mut Vec<String>, op: Option<&StackOp>| -> bool {
        match op {
            None => true,
            Some(op) if op.is_push() => {
                stack.push(op.symbol.clone());
                true
            }
            Some(op) => stack.pop().is_some_and(|top| top == op.symbol),
        }
    };

    for depth in 0..=max_len {
        let mut next_frontier = Vec::new();
        for ((state, pos, s1, s2), prefix) in &frontier {
            if *pos == n && s1.is_empty() && s2.is_empty() && m.accepting.contains(state) {
                return Some(AnnotationString(prefix.clone()));
            }
            if depth == max_len {
                continue;
            }
            let remaining = max_len - depth - 1;
            for ((from, token), to) in m
                .delta
                .range((state.clone(), Token::Input(String::new()))..)
            {
                if from != state {
                    break;
                }
                let mut node = (to.clone(), *pos, s1.clone(), s2.clone());
                match token {
                    Token::Input(a) => {
                        if *pos >= n || word[*pos] != a {
                            continue;
                        }
                        node.1 += 1;
                    }
                    Token::Pair(pair)
                        if (!apply(&mut node.2, pair.first())
                            || !apply(&mut node.3, pair.second())) =>
                    {
                        continue;
                    }
                    _ => {}
                }
                if remaining < (n - node.1) + node.2.len().max(node.3.len()) {
                    continue;
                }
                if seen.insert(node.clone()) {
                    let mut p = prefix.clone();
                    p.push(token.clone());
                    next_frontier.push((node, p));
                }
            }
        }
        frontier = next_frontier;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabets;

    fn word(text: &str) -> Vec<String> {
        text.chars().map(String::from).collect()
    }

    fn trivial_pda2(accepting: bool) -> PdaII {
        let f: Vec<&str> = if accepting { vec!["q0"] } else { vec![] };
        PdaII::new(
            ["q0"],
            Alphabets::new(["0", "1"], ["Z"], Vec::<String>::new()),
            "q0",
            f,
        )
    }

    #[test]
    fn initial_accepting_state_accepts_epsilon_only() {
        let m = trivial_pda2(true);
        let (ok, w) = accepts_pda2(&m, &word("")).unwrap();
        assert!(ok);
        assert_eq!(w, Some(AnnotationString::new()));
        assert!(!accepts_pda2(&m, &word("0")).unwrap().0);
        assert!(brute_force_accepts(&m, &word(""), 0).unwrap());
    }

    #[test]
    fn no_transitions_no_acceptance() {
        let m = trivial_pda2(false);
        for x in ["", "0", "01", "110"] {
            assert!(!accepts_pda2(&m, &word(x)).unwrap().0);
        }
    }

    #[test]
    fn foreign_symbol_is_an_error() {
        let m = trivial_pda2(true);
        assert_eq!(
            accepts_pda2(&m, &word("2")).unwrap_err(),
            Error::SymbolNotInAlphabet("2".into())
        );
    }

    #[test]
    fn table_has_reflexive_entries() {
        let mut m = trivial_pda2(true);
        m.states.insert("q1".into());
        m.insert("q0", Token::input("0"), "q1");
        let table = BalancedReachabilityTable::build(&m, &word("00")).unwrap();
        for p in ["q0", "q1"] {
            for i in 0..=2 {
                assert!(table.contains(p, i, p, i));
            }
        }
        assert!(table.contains("q0", 0, "q1", 1));
        assert!(!table.contains("q0", 0, "q1", 2));
    }

    #[test]
    fn wrap_inside_zero_length_segment() {
        // push, epsilon, pop all without input; then read 0.
        let mut m = PdaII::new(
            ["a", "b", "c", "d"],
            Alphabets::new(["0"], ["X"], Vec::<String>::new()),
            "a",
            ["d"],
        );
        m.insert("a", Token::push("X"), "b");
        m.insert("b", Token::Epsilon, "c");
        m.insert("c", Token::pop("X"), "a");
        m.insert("a", Token::input("0"), "d");
        m.insert("d", Token::push("X"), "d");
        let (ok, w) = accepts_pda2(&m, &word("0")).unwrap();
        assert!(ok);
        let w = w.unwrap();
        assert!(is_pda2_witness(&m, &word("0"), &w));
        assert!(!accepts_pda2(&m, &word("00")).unwrap().0);
    }

    #[test]
    fn mismatched_pop_is_not_balanced() {
        let mut m = PdaII::new(
            ["a", "b", "c"],
            Alphabets::new(["0"], ["X", "Y"], Vec::<String>::new()),
            "a",
            ["c"],
        );
        m.insert("a", Token::push("X"), "b");
        m.insert("b", Token::pop("Y"), "c");
        assert!(!accepts_pda2(&m, &word("")).unwrap().0);
        m.insert("b", Token::pop("X"), "c");
        assert!(accepts_pda2(&m, &word("")).unwrap().0);
    }

    #[test]
    fn dpda2_without_transitions() {
        let d = DpdaII::new(
            ["q0"],
            Alphabets::new(["0"], ["Z"], Vec::<String>::new()),
            "q0",
            ["q0"],
        );
        assert!(accepts_dpda2(&d, &word("")).unwrap());
        assert!(!accepts_dpda2(&d, &word("0")).unwrap());
    }

    fn pair(text: &str) -> Token {
        text.parse().unwrap()
    }

    fn counter() -> TwoStackMachine {
        // Accepts 0^n 1^n: push on stack 1 per 0, pop per 1; stack 2 unused.
        let ab = Alphabets::new(["0", "1"], ["X"], Vec::<String>::new());
        let mut m = TwoStackMachine::new(["a", "a'", "b", "b'"], ab, "a", ["a", "b"]);
        m.insert("a", Token::input("0"), "a'");
        m.insert("a'", pair("(push1:X,_)"), "a");
        m.insert("a", Token::input("1"), "b'");
        m.insert("b", Token::input("1"), "b'");
        m.insert("b'", pair("(pop1:X,_)"), "b");
        m
    }

    #[test]
    fn two_stack_annotation_runs() {
        let m = counter();
        let s: AnnotationString = "0 (push1:X,_) 1 (pop1:X,_)".parse().unwrap();
        assert!(run_annotation_two_stack(&m, &s).unwrap().is_accepted());
        assert!(is_two_stack_witness(&m, &word("01"), &s));
        assert!(!is_two_stack_witness(&m, &word("0"), &s));
        let leftover: AnnotationString = "0 (push1:X,_)".parse().unwrap();
        assert_eq!(
            run_annotation_two_stack(&m, &leftover).unwrap().verdict,
            Verdict::Rejected
        );
        assert!(run_annotation_two_stack(&m, &AnnotationString::new())
            .unwrap()
            .is_accepted());
        let foreign: AnnotationString = "push:X".parse().unwrap();
        assert!(matches!(
            run_annotation_two_stack(&m, &foreign),
            Err(Error::TokenOutsideAlphabet(_))
        ));
    }

    #[test]
    fn two_stack_search_verdicts() {
        let m = counter();
        let limits = SearchLimits::default();
        let out = accepts_two_stack_bounded(&m, &word("0011"), limits).unwrap();
        assert!(is_two_stack_witness(
            &m,
            &word("0011"),
            out.witness().unwrap()
        ));
        assert_eq!(
            accepts_two_stack_bounded(&m, &word("001"), limits)
                .unwrap()
                .verdict,
            Verdict::Rejected
        );
        let shallow = SearchLimits {
            max_steps: 1000,
            max_depth: 1,
        };
        assert_eq!(
            accepts_two_stack_bounded(&m, &word("0011"), shallow)
                .unwrap()
                .verdict,
            Verdict::Inconclusive
        );
        let short = SearchLimits {
            max_steps: 2,
            max_depth: 16,
        };
        assert_eq!(
            accepts_two_stack_bounded(&m, &word("0011"), short)
                .unwrap()
                .verdict,
            Verdict::Inconclusive
        );
    }

    #[test]
    fn oracle_agrees_on_two_stack_machine() {
        let m = counter();
        assert!(brute_force_accepts(&m, &word("01"), 4).unwrap());
        assert!(!brute_force_accepts(&m, &word("01"), 3).unwrap());
        assert!(!brute_force_accepts(&m, &word("10"), 14).unwrap());
        assert_eq!(
            brute_force_accepts(&m, &word("01"), 15),
            Err(Error::CapExceeded {
                requested: 15,
                cap: 14
            })
        );
    }

    #[test]
    fn oracle_counts_joint_pops_once() {
        let ab = Alphabets::new(["0"], ["X"], Vec::<String>::new());
        let mut m = TwoStackMachine::new(["p", "q", "r"], ab, "p", ["r"]);
        m.insert("p", pair("(push1:X,push2:X)"), "q");
        m.insert("q", pair("(pop1:X,pop2:X)"), "r");
        let empty: Vec<&str> = Vec::new();
        assert!(brute_force_accepts(&m, &empty, 2).unwrap());
        assert!(!brute_force_accepts(&m, &empty, 1).unwrap());
    }
}
