//! One-way probabilistic multihead automata, probabilistic blind counter
//! automata, the simulation of the latter by the former, and the machines
//! for the twin languages.
//!
//! All probabilities are exact rationals.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::{tape, Alphabet, TapeSymbol};
use crate::bca::DetBca;
use crate::error::{Error, Result};
use crate::numerics::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject,
}

/// One weighted outcome of a rule: the next state and which heads advance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfaOutcome {
    pub probability: Rational,
    pub target: usize,
    pub moves: Vec<bool>,
}

/// A guarded distribution; `None` in the pattern matches any symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfaRule {
    pub pattern: Vec<Option<TapeSymbol>>,
    pub outcomes: Vec<KfaOutcome>,
}

impl KfaRule {
    fn matches(&self, under: &[TapeSymbol]) -> bool {
        self.pattern
            .iter()
            .zip(under)
            .all(|(p, s)| p.is_none_or(|p| p == *s))
    }
}

/// A state of a multihead machine. Verdict states halt on entry; otherwise
/// the first rule whose pattern matches fires, and no match rejects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfaState {
    pub name: String,
    pub verdict: Option<Verdict>,
    pub rules: Vec<KfaRule>,
}

/// One-way `k`-head finite automaton with rational transition probabilities.
/// All heads start on `¢`; state 0 is initial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneWayKfa {
    alphabet: Alphabet,
    heads: usize,
    states: Vec<KfaState>,
}

impl OneWayKfa {
    pub fn new(alphabet: Alphabet, heads: usize, states: Vec<KfaState>) -> Result<Self> {
        if heads == 0 || states.is_empty() {
            return Err(Error::construction(
                "a multihead automaton needs heads and states",
            ));
        }
        let mut names = BTreeSet::new();
        for s in &states {
            if !names.insert(&s.name) {
                return Err(Error::construction(format!(
                    "duplicate state name {:?}",
                    s.name
                )));
            }
            for rule in &s.rules {
                if rule.pattern.len() != heads {
                    return Err(Error::construction(format!(
                        "rule of {:?} has the wrong arity",
                        s.name
                    )));
                }
                let total: Rational = rule.outcomes.iter().map(|o| o.probability.clone()).sum();
                if !total.is_one()
                    || rule
                        .outcomes
                        .iter()
                        .any(|o| o.probability < Rational::zero())
                {
                    return Err(Error::construction(format!(
                        "distribution out of {:?} does not sum to 1",
                        s.name
                    )));
                }
                if rule
                    .outcomes
                    .iter()
                    .any(|o| o.target >= states.len() || o.moves.len() != heads)
                {
                    return Err(Error::construction(format!(
                        "malformed outcome out of {:?}",
                        s.name
                    )));
                }
            }
        }
        Ok(Self {
            alphabet,
            heads,
            states,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn heads(&self) -> usize {
        self.heads
    }

    pub fn states(&self) -> &[KfaState] {
        &self.states
    }

    /// Whether every rule has a single outcome.
    pub fn is_deterministic(&self) -> bool {
        self.states
            .iter()
            .flat_map(|s| &s.rules)
            .all(|r| r.outcomes.len() == 1)
    }

    pub fn default_step_cap(&self, word_len: usize) -> usize {
        (self.states.len() + 1) * (self.heads * (word_len + 2) + 1)
    }
}

/// Exact acceptance probability of a multihead run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfaRun {
    pub accept: Rational,
    pub reject: Rational,
    /// Mass still live when the step cap was reached.
    pub residue: Rational,
    pub steps: usize,
}

pub fn run_pkfa_word(m: &OneWayKfa, word: &[usize], step_cap: Option<usize>) -> Result<KfaRun> {
    if let Some(position) = word.iter().position(|&s| s >= m.alphabet.len()) {
        return Err(Error::InvalidSymbol {
            position,
            found: format!("#{}", word[position]),
        });
    }
    let cap = step_cap.unwrap_or_else(|| m.default_step_cap(word.len()));
    if cap == 0 {
        return Err(Error::usage("step cap must be at least 1"));
    }
    let tape = tape(word);
    let mut live: BTreeMap<(usize, Vec<usize>), Rational> =
        BTreeMap::from([((0, vec![0; m.heads]), Rational::one())]);
    let mut accept = Rational::zero();
    let mut reject = Rational::zero();
    let mut steps = 0;
    loop {
        live.retain(|(q, _), p| match m.states[*q].verdict {
            Some(Verdict::Accept) => {
                accept += &*p;
                false
            }
            Some(Verdict::Reject) => {
                reject += &*p;
                false
            }
            None => true,
        });
        if live.is_empty() || steps == cap {
            break;
        }
        let mut next: BTreeMap<(usize, Vec<usize>), Rational> = BTreeMap::new();
        for ((q, pos), p) in live {
            let under: Vec<TapeSymbol> = pos.iter().map(|&x| tape[x]).collect();
            let Some(rule) = m.states[q].rules.iter().find(|r| r.matches(&under)) else {
                reject += p;
                continue;
            };
            for o in &rule.outcomes {
                let mut moved = pos.clone();
                for (h, &mv) in o.moves.iter().enumerate() {
                    if mv {
                        if moved[h] + 1 >= tape.len() {
                            return Err(Error::Runtime(format!(
                                "head {} moved past $ in state {:?}",
                                h + 1,
                                m.states[q].name
                            )));
                        }
                        moved[h] += 1;
                    }
                }
                *next.entry((o.target, moved)).or_insert_with(Rational::zero) +=
                    &p * &o.probability;
            }
        }
        live = next;
        steps += 1;
    }
    let residue = live.values().cloned().sum();
    Ok(KfaRun {
        accept,
        reject,
        residue,
        steps,
    })
}

pub fn run_pkfa(m: &OneWayKfa, input: &str, step_cap: Option<usize>) -> Result<KfaRun> {
    run_pkfa_word(m, &m.alphabet.tokenize(input)?, step_cap)
}

/// One branch `(probability, target, counter update)` of a probabilistic BCA.
pub type PbcaBranch = (Rational, usize, i64);

/// Realtime probabilistic one-counter BCA; state 0 is initial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbBca {
    alphabet: Alphabet,
    states: Vec<String>,
    accepting: BTreeSet<usize>,
    /// `delta[q][tape_index]` is a distribution over `(target, update)`.
    delta: Vec<Vec<Vec<PbcaBranch>>>,
}

impl ProbBca {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        accepting: impl IntoIterator<Item = usize>,
        delta: Vec<Vec<Vec<PbcaBranch>>>,
    ) -> Result<Self> {
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        let width = alphabet.len() + 2;
        if states.is_empty()
            || delta.len() != states.len()
            || delta.iter().any(|r| r.len() != width)
        {
            return Err(Error::construction(format!(
                "transition table must be {} x {width}",
                states.len()
            )));
        }
        if accepting.iter().any(|&q| q >= states.len()) {
            return Err(Error::construction("accepting state out of range"));
        }
        for (q, row) in delta.iter().enumerate() {
            for dist in row {
                let total: Rational = dist.iter().map(|(p, _, _)| p.clone()).sum();
                if !total.is_one()
                    || dist
                        .iter()
                        .any(|(p, t, _)| *p < Rational::zero() || *t >= states.len())
                {
                    return Err(Error::construction(format!(
                        "bad distribution out of {:?}",
                        states[q]
                    )));
                }
            }
        }
        Ok(Self {
            alphabet,
            states,
            accepting,
            delta,
        })
    }

    /// Embeds a deterministic one-counter machine.
    pub fn from_dbca(m: &DetBca) -> Result<Self> {
        if m.counters() != 1 {
            return Err(Error::construction(
                "only one-counter machines embed into a probabilistic BCA",
            ));
        }
        let delta = m
            .delta()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|mv| vec![(Rational::one(), mv.target, mv.update[0])])
                    .collect()
            })
            .collect();
        Self::new(
            m.alphabet().clone(),
            m.states().to_vec(),
            m.accepting().iter().copied(),
            delta,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn delta(&self) -> &[Vec<Vec<PbcaBranch>>] {
        &self.delta
    }

    pub fn magnitude(&self) -> i64 {
        self.delta
            .iter()
            .flatten()
            .flatten()
            .map(|(_, _, u)| u.abs())
            .max()
            .unwrap_or(0)
            .max(1)
    }

    pub fn has_unit_updates(&self) -> bool {
        self.magnitude() == 1
    }
}

pub fn run_rtp1bca_word(m: &ProbBca, word: &[usize]) -> Result<Rational> {
    if let Some(position) = word.iter().position(|&s| s >= m.alphabet.len()) {
        return Err(Error::InvalidSymbol {
            position,
            found: format!("#{}", word[position]),
        });
    }
    let mut dist: BTreeMap<(usize, i64), Rational> = BTreeMap::from([((0, 0), Rational::one())]);
    for sym in tape(word) {
        let idx = m.alphabet.tape_index(sym);
        let mut next: BTreeMap<(usize, i64), Rational> = BTreeMap::new();
        for ((q, c), p) in dist {
            for (pr, t, u) in &m.delta[q][idx] {
                *next.entry((*t, c + u)).or_insert_with(Rational::zero) += &p * pr;
            }
        }
        next.retain(|_, p| !p.is_zero());
        dist = next;
    }
    Ok(dist
        .into_iter()
        .filter(|((q, c), _)| *c == 0 && m.accepting.contains(q))
        .map(|(_, p)| p)
        .sum())
}

pub fn run_rtp1bca(m: &ProbBca, input: &str) -> Result<Rational> {
    run_rtp1bca_word(m, &m.alphabet.tokenize(input)?)
}

/// Machine over `{a}` that increments with probability 1/2 on each `a`.
pub fn coin_pbca() -> ProbBca {
    let half = Rational::new(1.into(), 2.into());
    let one = |u| vec![(Rational::one(), 0, u)];
    let delta = vec![vec![
        one(0),
        vec![(half.clone(), 0, 1), (half, 0, 0)],
        one(0),
    ]];
    ProbBca::new(
        Alphabet::from_chars("a").expect("static alphabet"),
        vec!["q".into()],
        [0],
        delta,
    )
    .expect("static machine")
}

/// Incremental construction of a [`OneWayKfa`].
#[derive(Clone, Debug)]
pub struct KfaBuilder {
    alphabet: Alphabet,
    heads: usize,
    states: Vec<KfaState>,
}

impl KfaBuilder {
    pub fn new(alphabet: Alphabet, heads: usize) -> Self {
        Self {
            alphabet,
            heads,
            states: Vec::new(),
        }
    }

    pub fn state(&mut self, name: impl Into<String>, verdict: Option<Verdict>) -> usize {
        self.states.push(KfaState {
            name: name.into(),
            verdict,
            rules: Vec::new(),
        });
        self.states.len() - 1
    }

    pub fn rule(
        &mut self,
        state: usize,
        pattern: Vec<Option<TapeSymbol>>,
        outcomes: Vec<KfaOutcome>,
    ) {
        self.states[state].rules.push(KfaRule { pattern, outcomes });
    }

    /// A deterministic rule moving the listed heads.
    pub fn det(
        &mut self,
        state: usize,
        pattern: Vec<Option<TapeSymbol>>,
        target: usize,
        moving: &[usize],
    ) {
        let moves = (0..self.heads).map(|h| moving.contains(&h)).collect();
        self.rule(
            state,
            pattern,
            vec![KfaOutcome {
                probability: Rational::one(),
                target,
                moves,
            }],
        );
    }

    fn pattern(&self, fixed: &[(usize, TapeSymbol)]) -> Vec<Option<TapeSymbol>> {
        let mut p = vec![None; self.heads];
        for &(h, s) in fixed {
            p[h] = Some(s);
        }
        p
    }

    pub fn build(self) -> Result<OneWayKfa> {
        OneWayKfa::new(self.alphabet, self.heads, self.states)
    }
}

/// Three-head machine with the same acceptance probability as `m`.
///
/// Head 1 reads the input. Heads 2 and 3 advance once per increment and
/// decrement respectively. After `$`, an accepting run races heads 2 and 3
/// to `$` and accepts iff they arrive together.
pub fn simulate_bca_as_3fa(m: &ProbBca) -> Result<OneWayKfa> {
    if !m.has_unit_updates() {
        return Err(Error::construction("counter updates must lie in {-1,0,1}"));
    }
    let mut b = KfaBuilder::new(m.alphabet.clone(), 3);
    let sim: Vec<usize> = m
        .states
        .iter()
        .map(|q| b.state(format!("sim:{q}"), None))
        .collect();
    let race = b.state("race", None);
    let acc = b.state("accept", Some(Verdict::Accept));
    let rej = b.state("reject", Some(Verdict::Reject));
    let end = TapeSymbol::RightEnd;

    for (q, &sq) in sim.iter().enumerate() {
        for sym in m.alphabet.tape_symbols() {
            let dist = &m.delta[q][m.alphabet.tape_index(sym)];
            // Head 2/3 already on `$`: a further increment/decrement cannot be
            // balanced within the remaining steps.
            for (inc_full, dec_full) in [(true, true), (true, false), (false, true), (false, false)]
            {
                let mut fixed = vec![(0, sym)];
                if inc_full {
                    fixed.push((1, end));
                }
                if dec_full {
                    fixed.push((2, end));
                }
                let outcomes = dist
                    .iter()
                    .map(|(p, t, u)| {
                        let doomed = (*u == 1 && inc_full) || (*u == -1 && dec_full);
                        let target = match (doomed, sym) {
                            (true, _) => rej,
                            (false, TapeSymbol::RightEnd) if m.accepting.contains(t) => race,
                            (false, TapeSymbol::RightEnd) => rej,
                            (false, _) => sim[*t],
                        };
                        let moves = if doomed {
                            vec![false; 3]
                        } else {
                            vec![sym != TapeSymbol::RightEnd, *u == 1, *u == -1]
                        };
                        KfaOutcome {
                            probability: p.clone(),
                            target,
                            moves,
                        }
                    })
                    .collect();
                let pattern = b.pattern(&fixed);
                b.rule(sq, pattern, outcomes);
            }
        }
    }
    let p = b.pattern(&[(1, end), (2, end)]);
    b.det(race, p, acc, &[]);
    let p = b.pattern(&[(1, end)]);
    b.det(race, p, rej, &[]);
    let p = b.pattern(&[(2, end)]);
    b.det(race, p, rej, &[]);
    let p = b.pattern(&[]);
    b.det(race, p, race, &[1, 2]);
    b.build()
}

const LETTER_A: TapeSymbol = TapeSymbol::Letter(0);
const LETTER_B: TapeSymbol = TapeSymbol::Letter(1);
const SEP: TapeSymbol = TapeSymbol::Letter(2);

fn twin_alphabet() -> Alphabet {
    Alphabet::from_chars("abc").expect("static alphabet")
}

/// Head pairs `(i, j)`, `i < j`, in lexicographic order.
fn head_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect()
}

pub fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Appends a deterministic sub-machine to `b` that checks the input has the
/// form `B₁ c ⋯ c B_{2t}` and `B_s = B_{2t+1−s}` for each `s` in `pairs`.
/// Returns its entry state.
///
/// Separator `z` is `¢` for `z = 0`, the `z`-th `c` for `1 ≤ z < 2t`, and `$`
/// for `z = 2t`; block `B_x` lies between separators `x−1` and `x`. Pair `s`
/// (in increasing order) is assigned the lexicographically `s`-th head pair
/// `(i, j)`; comparisons run for `i` from the last head down to the first,
/// and `j` upwards, so every head only ever moves right.
pub fn pair_comparison_machine(
    b: &mut KfaBuilder,
    prefix: &str,
    t: usize,
    pairs: &[usize],
    accept: usize,
    reject: usize,
) -> Result<usize> {
    let k = b.heads;
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != pairs.len() || sorted.iter().any(|&s| s == 0 || s > t) {
        return Err(Error::construction(
            "pair indices must be distinct and within 1..=t",
        ));
    }
    let lex = head_pairs(k);
    if sorted.len() > lex.len() {
        return Err(Error::construction(format!(
            "{} heads compare at most {} pairs",
            k,
            lex.len()
        )));
    }
    let assigned: Vec<((usize, usize), usize)> =
        lex.iter().copied().zip(sorted.iter().copied()).collect();
    let mut order = assigned.clone();
    order.sort_by_key(|&((i, j), _)| (std::cmp::Reverse(i), j));

    enum Op {
        Seek {
            head: usize,
            passes: usize,
            to: usize,
        },
        Compare {
            left: usize,
            right: usize,
            right_end: TapeSymbol,
        },
    }
    let total_seps = 2 * t;
    let mut pos = vec![0usize; k];
    let mut ops = Vec::new();
    let seek = |ops: &mut Vec<Op>, pos: &mut [usize], head: usize, to: usize| -> Result<()> {
        if pos[head] > to {
            return Err(Error::construction("schedule would move a head left"));
        }
        if pos[head] < to {
            ops.push(Op::Seek {
                head,
                passes: to - pos[head],
                to,
            });
            pos[head] = to;
        }
        Ok(())
    };
    for &((i, j), s) in &order {
        let (l, r) = (s, 2 * t + 1 - s);
        seek(&mut ops, &mut pos, i, l - 1)?;
        seek(&mut ops, &mut pos, j, r - 1)?;
        let right_end = if r == total_seps {
            TapeSymbol::RightEnd
        } else {
            SEP
        };
        ops.push(Op::Compare {
            left: i,
            right: j,
            right_end,
        });
        pos[i] = l;
        pos[j] = r;
    }
    let scanner = (0..k)
        .max_by_key(|&h| (pos[h], std::cmp::Reverse(h)))
        .expect("k >= 1");
    seek(&mut ops, &mut pos, scanner, total_seps)?;

    // Entry states are allocated first so each op can chain to the next.
    let entries: Vec<usize> = (0..ops.len())
        .map(|o| b.state(format!("{prefix}{o}:start"), None))
        .collect();
    let next_of = |o: usize| entries.get(o + 1).copied().unwrap_or(accept);
    for (o, op) in ops.iter().enumerate() {
        let start = entries[o];
        let next = next_of(o);
        match *op {
            Op::Seek { head, passes, to } => {
                let waits: Vec<usize> = (1..=passes)
                    .map(|r| b.state(format!("{prefix}{o}:seek{r}"), None))
                    .collect();
                let p = b.pattern(&[]);
                b.det(start, p, waits[passes - 1], &[head]);
                for rem in 1..=passes {
                    let st = waits[rem - 1];
                    let arrive_on = if to == total_seps {
                        TapeSymbol::RightEnd
                    } else {
                        SEP
                    };
                    if rem == 1 {
                        let p = b.pattern(&[(head, arrive_on)]);
                        b.det(st, p, next, &[]);
                    } else {
                        let p = b.pattern(&[(head, SEP)]);
                        b.det(st, p, waits[rem - 2], &[head]);
                    }
                    for letter in [LETTER_A, LETTER_B] {
                        let p = b.pattern(&[(head, letter)]);
                        b.det(st, p, st, &[head]);
                    }
                    let p = b.pattern(&[]);
                    b.det(st, p, reject, &[]);
                }
            }
            Op::Compare {
                left,
                right,
                right_end,
            } => {
                let cmp = b.state(format!("{prefix}{o}:cmp"), None);
                let p = b.pattern(&[]);
                b.det(start, p, cmp, &[left, right]);
                for letter in [LETTER_A, LETTER_B] {
                    let p = b.pattern(&[(left, letter), (right, letter)]);
                    b.det(cmp, p, cmp, &[left, right]);
                }
                let p = b.pattern(&[(left, SEP), (right, right_end)]);
                b.det(cmp, p, next, &[]);
                let p = b.pattern(&[]);
                b.det(cmp, p, reject, &[]);
            }
        }
    }
    Ok(entries.first().copied().unwrap_or(accept))
}

fn split_machine(heads: usize, t: usize, branches: &[Vec<usize>]) -> Result<OneWayKfa> {
    let mut b = KfaBuilder::new(twin_alphabet(), heads);
    let init = b.state("init", None);
    let acc = b.state("accept", Some(Verdict::Accept));
    let rej = b.state("reject", Some(Verdict::Reject));
    let p = Rational::new(1.into(), (branches.len() as i64).into());
    let mut outcomes = Vec::new();
    for (i, pairs) in branches.iter().enumerate() {
        let prefix = if branches.len() == 1 {
            String::new()
        } else {
            format!("b{}/", i + 1)
        };
        let entry = pair_comparison_machine(&mut b, &prefix, t, pairs, acc, rej)?;
        outcomes.push(KfaOutcome {
            probability: p.clone(),
            target: entry,
            moves: vec![false; heads],
        });
    }
    let pat = b.pattern(&[]);
    b.rule(init, pat, outcomes);
    b.build()
}

/// Deterministic `k`-head machine for `L_twin(C(k,2))`.
pub fn build_twin_dkfa(k: usize) -> Result<OneWayKfa> {
    if k < 2 {
        return Err(Error::usage("twin machines need at least 2 heads"));
    }
    let t = binomial2(k);
    split_machine(k, t, &[(1..=t).collect()])
}

/// `k`-head machine for `L_twin(2·C(k,2))`: with probability 1/2 each,
/// verify the outer or the inner half of the pairs.
pub fn build_twin_pkfa(k: usize) -> Result<OneWayKfa> {
    if k < 2 {
        return Err(Error::usage("twin machines need at least 2 heads"));
    }
    let t = binomial2(k);
    split_machine(k, 2 * t, &[(1..=t).collect(), (t + 1..=2 * t).collect()])
}

/// Two-head machine for `L_twin(t)`: pick a pair uniformly and verify it.
pub fn build_twin_p2fa(t: usize) -> Result<OneWayKfa> {
    if t == 0 {
        return Err(Error::usage("t must be at least 1"));
    }
    let branches: Vec<Vec<usize>> = (1..=t).map(|i| vec![i]).collect();
    split_machine(2, t, &branches)
}
