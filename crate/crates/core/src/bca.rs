//! Realtime blind counter automata.
//!
//! Runs read `¢w$` left to right, one transition per symbol. Counters are
//! never inspected during the run; a run accepts iff it ends in an accepting
//! state with every counter at zero.

use std::collections::{BTreeMap, BTreeSet};

use num::One;

use crate::alphabet::{tape, Alphabet, TapeSymbol};
use crate::error::{Error, Result};
use crate::gfa::{gfa_tensor, Gfa};
use crate::numerics::{Rational, SparseMap, SparseVector};

/// Target state and counter update of one transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BcaMove {
    pub target: usize,
    pub update: Vec<i64>,
}

impl BcaMove {
    pub fn new(target: usize, update: Vec<i64>) -> Self {
        Self { target, update }
    }
}

/// Deterministic realtime k-counter BCA; the initial state is index 0.
#[derive(Clone, Debug, PartialEq)]
pub struct DetBca {
    alphabet: Alphabet,
    states: Vec<String>,
    accepting: BTreeSet<usize>,
    counters: usize,
    /// `delta[q][tape_index]`
    delta: Vec<Vec<BcaMove>>,
}

/// Outcome of a deterministic run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbcaRun {
    pub final_state: usize,
    pub counters: Vec<i64>,
    pub accepted: bool,
}

fn check_names(states: &[String]) -> Result<()> {
    if states.is_empty() {
        return Err(Error::construction("machine needs at least one state"));
    }
    for (i, s) in states.iter().enumerate() {
        if states[..i].contains(s) {
            return Err(Error::construction(format!("duplicate state name {s:?}")));
        }
    }
    Ok(())
}

fn check_accepting(accepting: &BTreeSet<usize>, n: usize) -> Result<()> {
    match accepting.iter().find(|&&q| q >= n) {
        Some(q) => Err(Error::construction(format!(
            "accepting state {q} out of range"
        ))),
        None => Ok(()),
    }
}

impl DetBca {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        accepting: impl IntoIterator<Item = usize>,
        counters: usize,
        delta: Vec<Vec<BcaMove>>,
    ) -> Result<Self> {
        check_names(&states)?;
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        check_accepting(&accepting, states.len())?;
        if counters == 0 {
            return Err(Error::construction("a BCA needs at least one counter"));
        }
        if delta.len() != states.len() {
            return Err(Error::construction(
                "one transition row per state is required",
            ));
        }
        let width = alphabet.len() + 2;
        for (q, row) in delta.iter().enumerate() {
            if row.len() != width {
                return Err(Error::construction(format!(
                    "state {:?} has {} transitions, expected {width}",
                    states[q],
                    row.len()
                )));
            }
            for mv in row {
                if mv.target >= states.len() || mv.update.len() != counters {
                    return Err(Error::construction(format!(
                        "malformed transition out of {:?}",
                        states[q]
                    )));
                }
            }
        }
        Ok(Self {
            alphabet,
            states,
            accepting,
            counters,
            delta,
        })
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

    pub fn counters(&self) -> usize {
        self.counters
    }

    /// Largest update magnitude, at least 1.
    pub fn magnitude(&self) -> i64 {
        self.delta
            .iter()
            .flatten()
            .flat_map(|mv| mv.update.iter().map(|u| u.abs()))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    pub fn step(&self, state: usize, symbol: TapeSymbol) -> &BcaMove {
        &self.delta[state][self.alphabet.tape_index(symbol)]
    }

    pub fn delta(&self) -> &[Vec<BcaMove>] {
        &self.delta
    }

    /// Whether every transition into a given state carries the same update.
    pub fn is_state_determined(&self) -> bool {
        let mut entering: BTreeMap<usize, &Vec<i64>> = BTreeMap::new();
        self.delta
            .iter()
            .flatten()
            .all(|mv| *entering.entry(mv.target).or_insert(&mv.update) == &mv.update)
    }

    pub fn has_unit_updates(&self) -> bool {
        self.delta
            .iter()
            .flatten()
            .flat_map(|mv| &mv.update)
            .all(|u| u.abs() <= 1)
    }
}

pub fn run_dbca_word(m: &DetBca, word: &[usize]) -> DbcaRun {
    let mut state = 0;
    let mut counters = vec![0i64; m.counters];
    for sym in tape(word) {
        let mv = m.step(state, sym);
        state = mv.target;
        for (c, u) in counters.iter_mut().zip(&mv.update) {
            *c += u;
        }
    }
    let accepted = m.accepting.contains(&state) && counters.iter().all(|&c| c == 0);
    DbcaRun {
        final_state: state,
        counters,
        accepted,
    }
}

pub fn run_dbca(m: &DetBca, input: &str) -> Result<DbcaRun> {
    Ok(run_dbca_word(m, &m.alphabet.tokenize(input)?))
}

/// Nondeterministic realtime one-counter BCA; the initial state is index 0.
#[derive(Clone, Debug, PartialEq)]
pub struct NondetBca {
    alphabet: Alphabet,
    states: Vec<String>,
    accepting: BTreeSet<usize>,
    /// `delta[q][tape_index]`, each a possibly empty set of `(target, update)`.
    delta: Vec<Vec<Vec<(usize, i64)>>>,
}

impl NondetBca {
    pub fn new(
        alphabet: Alphabet,
        states: Vec<String>,
        accepting: impl IntoIterator<Item = usize>,
        delta: Vec<Vec<Vec<(usize, i64)>>>,
    ) -> Result<Self> {
        check_names(&states)?;
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        check_accepting(&accepting, states.len())?;
        let width = alphabet.len() + 2;
        if delta.len() != states.len() || delta.iter().any(|row| row.len() != width) {
            return Err(Error::construction(format!(
                "transition table must be {} x {width}",
                states.len()
            )));
        }
        if delta
            .iter()
            .flatten()
            .flatten()
            .any(|&(t, _)| t >= states.len())
        {
            return Err(Error::construction("transition target out of range"));
        }
        Ok(Self {
            alphabet,
            states,
            accepting,
            delta,
        })
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

    pub fn delta(&self) -> &[Vec<Vec<(usize, i64)>>] {
        &self.delta
    }

    pub fn choices(&self, state: usize, symbol: TapeSymbol) -> &[(usize, i64)] {
        &self.delta[state][self.alphabet.tape_index(symbol)]
    }

    pub fn magnitude(&self) -> i64 {
        self.delta
            .iter()
            .flatten()
            .flatten()
            .map(|(_, u)| u.abs())
            .max()
            .unwrap_or(0)
            .max(1)
    }
}

/// Reachability over `(state, counter)` configurations.
pub fn run_nbca_word(m: &NondetBca, word: &[usize]) -> bool {
    let bound = m.magnitude() * (word.len() as i64 + 2);
    let mut configs: BTreeSet<(usize, i64)> = BTreeSet::from([(0, 0)]);
    for sym in tape(word) {
        configs = configs
            .iter()
            .flat_map(|&(q, c)| m.choices(q, sym).iter().map(move |&(t, u)| (t, c + u)))
            .filter(|(_, c)| c.abs() <= bound)
            .collect();
        if configs.is_empty() {
            return false;
        }
    }
    configs
        .iter()
        .any(|&(q, c)| c == 0 && m.accepting.contains(&q))
}

pub fn run_nbca(m: &NondetBca, input: &str) -> Result<bool> {
    Ok(run_nbca_word(m, &m.alphabet.tokenize(input)?))
}

/// Nondeterministic machine for `L_say`.
///
/// Phase `before` counts every symbol preceding the first chosen `b`, phase
/// `after` uncounts every symbol following the second one. A single `b` may
/// serve as both choices.
pub fn build_lsay_nbca() -> NondetBca {
    const BEFORE: usize = 0;
    const BETWEEN: usize = 1;
    const AFTER: usize = 2;
    let alphabet = Alphabet::from_chars("ab").expect("static alphabet");
    let stay = |q: usize| vec![(q, 0)];
    let row = |a: Vec<(usize, i64)>, b: Vec<(usize, i64)>, q: usize| vec![stay(q), a, b, stay(q)];
    let delta = vec![
        row(
            vec![(BEFORE, 1)],
            vec![(BEFORE, 1), (BETWEEN, 0), (AFTER, 0)],
            BEFORE,
        ),
        row(vec![(BETWEEN, 0)], vec![(BETWEEN, 0), (AFTER, 0)], BETWEEN),
        row(vec![(AFTER, -1)], vec![(AFTER, -1)], AFTER),
    ];
    let names = ["before", "between", "after"].map(String::from).to_vec();
    NondetBca::new(alphabet, names, [AFTER], delta).expect("static machine")
}

/// Rewrites updates into `{-1, 0, 1}` by keeping each counter's residue
/// modulo `m` in the finite state and the quotient on the counter.
///
/// A counter value `C` is stored as `m·c + r` with `0 ≤ r < m`. An update
/// moves `r + u` into `[-m, 2m)`, so the quotient changes by at most one.
pub fn normalize_updates(m: &DetBca) -> DetBca {
    if m.has_unit_updates() {
        return m.clone();
    }
    let mag = m.magnitude();
    let k = m.counters;
    let residues: Vec<Vec<i64>> = (0..(mag as usize).pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let r = code % mag as usize;
                    code /= mag as usize;
                    r as i64
                })
                .collect()
        })
        .collect();
    let index_of = |q: usize, r: &[i64]| {
        let code = r
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * mag as usize + x as usize);
        q * residues.len() + code
    };
    let mut states = Vec::new();
    let mut accepting = Vec::new();
    let mut delta = Vec::new();
    for (q, name) in m.states.iter().enumerate() {
        for r in &residues {
            if m.accepting.contains(&q) && r.iter().all(|&x| x == 0) {
                accepting.push(states.len());
            }
            states.push(format!("{name}%{}", render_vector(r)));
            let row = m.delta[q]
                .iter()
                .map(|mv| {
                    let (carry, next): (Vec<i64>, Vec<i64>) = r
                        .iter()
                        .zip(&mv.update)
                        .map(|(x, u)| ((x + u).div_euclid(mag), (x + u).rem_euclid(mag)))
                        .unzip();
                    BcaMove::new(index_of(mv.target, &next), carry)
                })
                .collect();
            delta.push(row);
        }
    }
    DetBca::new(m.alphabet.clone(), states, accepting, k, delta)
        .expect("normalization preserves shape")
}

fn render_vector(v: &[i64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| {
            if *x > 0 {
                format!("+{x}")
            } else {
                x.to_string()
            }
        })
        .collect();
    parts.join(",")
}

/// Splits each state by the update on its incoming transition, so that the
/// state entered determines the counter update.
///
/// States are `(q, u)` for every transition `(q, u)` in the table, preceded
/// by the initial `(q₀, 0)`. Already state-determined machines are returned
/// unchanged.
pub fn state_determine_updates(m: &DetBca) -> DetBca {
    if m.is_state_determined() {
        return m.clone();
    }
    let mut pairs: Vec<BcaMove> = vec![BcaMove::new(0, vec![0; m.counters])];
    let mut seen: BTreeSet<BcaMove> = m.delta.iter().flatten().cloned().collect();
    seen.remove(&pairs[0]);
    pairs.extend(seen);
    let index: BTreeMap<&BcaMove, usize> = pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let states = pairs
        .iter()
        .map(|p| format!("{}[{}]", m.states[p.target], render_vector(&p.update)))
        .collect();
    let accepting = pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| m.accepting.contains(&p.target))
        .map(|(i, _)| i);
    let delta = pairs
        .iter()
        .map(|p| {
            m.delta[p.target]
                .iter()
                .map(|mv| BcaMove::new(index[mv], mv.update.clone()))
                .collect()
        })
        .collect();
    DetBca::new(m.alphabet.clone(), states, accepting, m.counters, delta)
        .expect("product preserves shape")
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(k);
    let mut n = 2u64;
    while primes.len() < k {
        if primes
            .iter()
            .take_while(|&&p| p * p <= n)
            .all(|&p| !n.is_multiple_of(p))
        {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// GFA with value `Π p_l^{C[l]} − 1` on runs ending in an accepting state
/// with counters `C`, and `−1` on runs ending elsewhere.
pub fn compile_to_gfa(m: &DetBca) -> Result<Gfa> {
    if !m.has_unit_updates() {
        return Err(Error::construction(
            "updates must lie in {-1,0,1}; apply normalize_updates first",
        ));
    }
    if !m.is_state_determined() {
        return Err(Error::construction(
            "transitions into a state carry different updates; apply state_determine_updates first",
        ));
    }
    let n = m.states.len();
    let primes: Vec<Rational> = first_primes(m.counters)
        .into_iter()
        .map(|p| Rational::from_integer(p.into()))
        .collect();
    let weight = |update: &[i64]| -> Rational {
        primes
            .iter()
            .zip(update)
            .fold(Rational::one(), |acc, (p, &u)| match u {
                1 => acc * p,
                -1 => acc / p,
                _ => acc,
            })
    };
    let bordered = |sym: TapeSymbol| {
        let mut t = SparseMap::new();
        for q in 0..n {
            let mv = m.step(q, sym);
            t.add(mv.target, q, weight(&mv.update));
        }
        t.add(n, n, Rational::one());
        t
    };
    let start = SparseVector::from_entries([(0, Rational::one()), (n, -Rational::one())]);
    let v0 = bordered(TapeSymbol::LeftEnd).apply(&start);
    let mut f_ext: SparseVector<usize, Rational> =
        m.accepting.iter().map(|&q| (q, Rational::one())).collect();
    f_ext.add_to(n, Rational::one());
    let end = bordered(TapeSymbol::RightEnd);
    let mut f = SparseVector::new();
    for (target, source, x) in end.entries() {
        if let Some(y) = f_ext.get(target) {
            f.add_to(*source, y.clone() * x);
        }
    }
    let transitions = (0..m.alphabet.len())
        .map(|s| bordered(TapeSymbol::Letter(s)))
        .collect();
    Gfa::new(m.alphabet.clone(), n + 1, transitions, v0, f)
}

/// `G ⊗ G` for the compiled `G`: zero exactly on members, positive elsewhere.
pub fn complement_witness_gfa(m: &DetBca) -> Result<Gfa> {
    let g = compile_to_gfa(m)?;
    gfa_tensor(&g, &g)
}

/// Normalizes, state-determines and compiles an arbitrary deterministic BCA.
pub fn compile_any(m: &DetBca) -> Result<Gfa> {
    compile_to_gfa(&state_determine_updates(&normalize_updates(m)))
}

/// The complement witness for an arbitrary deterministic BCA.
pub fn complement_witness_any(m: &DetBca) -> Result<Gfa> {
    let g = compile_any(m)?;
    gfa_tensor(&g, &g)
}

/// One-state machine over `{a, b}` accepting words with equally many `a`s and `b`s.
pub fn balance_dbca() -> DetBca {
    let alphabet = Alphabet::from_chars("ab").expect("static alphabet");
    let row = vec![
        BcaMove::new(0, vec![0]),
        BcaMove::new(0, vec![1]),
        BcaMove::new(0, vec![-1]),
        BcaMove::new(0, vec![0]),
    ];
    DetBca::new(alphabet, vec!["q1".into()], [0], 1, vec![row]).expect("static machine")
}

/// `{w | |w|_{aᵢ} = |w|_{bᵢ} for all i}` over `a1..at, b1..bt` with `t` counters.
pub fn eq_dbca(t: usize) -> Result<DetBca> {
    let alphabet = Alphabet::indexed_pairs(t)?;
    let unit = |i: usize, x: i64| {
        let mut u = vec![0; t];
        u[i] = x;
        u
    };
    let mut row = vec![BcaMove::new(0, vec![0; t])];
    row.extend((0..t).map(|i| BcaMove::new(0, unit(i, 1))));
    row.extend((0..t).map(|i| BcaMove::new(0, unit(i, -1))));
    row.push(BcaMove::new(0, vec![0; t]));
    DetBca::new(alphabet, vec!["q1".into()], [0], t, vec![row])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfa::gfa_value;
    use crate::languages::{LanguageId, LanguageTag};
    use num::Zero;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Over `{a,b,c}`: parity of `a`s in the state, counter `+2` per `b`,
    /// `−1` per `c`; accepts with an even number of `a`s.
    fn parity_machine() -> DetBca {
        let alphabet = Alphabet::from_chars("abc").unwrap();
        let row = |q: usize| {
            vec![
                BcaMove::new(q, vec![0]),
                BcaMove::new(1 - q, vec![0]),
                BcaMove::new(q, vec![2]),
                BcaMove::new(q, vec![-1]),
                BcaMove::new(q, vec![0]),
            ]
        };
        DetBca::new(
            alphabet,
            vec!["even".into(), "odd".into()],
            [0],
            1,
            vec![row(0), row(1)],
        )
        .unwrap()
    }

    fn plus_three() -> DetBca {
        let alphabet = Alphabet::from_chars("a").unwrap();
        let row = vec![
            BcaMove::new(0, vec![0]),
            BcaMove::new(0, vec![3]),
            BcaMove::new(0, vec![0]),
        ];
        DetBca::new(alphabet, vec!["q".into()], [0], 1, vec![row]).unwrap()
    }

    fn test_machines() -> Vec<DetBca> {
        vec![
            balance_dbca(),
            eq_dbca(2).unwrap(),
            parity_machine(),
            plus_three(),
        ]
    }

    #[test]
    fn balance_runs() {
        let m = balance_dbca();
        assert_eq!(
            run_dbca(&m, "ab").unwrap(),
            DbcaRun {
                final_state: 0,
                counters: vec![0],
                accepted: true
            }
        );
        assert_eq!(
            run_dbca(&m, "aab").unwrap(),
            DbcaRun {
                final_state: 0,
                counters: vec![1],
                accepted: false
            }
        );
        assert!(run_dbca(&m, "").unwrap().accepted);
        assert!(matches!(
            run_dbca(&m, "ac"),
            Err(Error::InvalidSymbol { position: 1, .. })
        ));
    }

    #[test]
    fn lsay_examples() {
        let m = build_lsay_nbca();
        for (w, expected) in [
            ("b", true),
            ("a", false),
            ("abba", true),
            ("", false),
            ("bb", true),
            ("bba", true),
        ] {
            assert_eq!(run_nbca(&m, w).unwrap(), expected, "{w:?}");
        }
    }

    #[test]
    fn lsay_matches_oracle() {
        let m = build_lsay_nbca();
        let lang = LanguageId::plain(LanguageTag::Say);
        for w in m.alphabet().words_up_to(10) {
            assert_eq!(
                run_nbca_word(&m, &w),
                lang.contains_word(&w),
                "{}",
                m.alphabet().render(&w)
            );
        }
    }

    fn enumerate_paths(m: &NondetBca, word: &[usize]) -> bool {
        fn go(m: &NondetBca, tape: &[TapeSymbol], q: usize, c: i64) -> bool {
            match tape.split_first() {
                None => c == 0 && m.accepting().contains(&q),
                Some((&sym, rest)) => m
                    .choices(q, sym)
                    .iter()
                    .any(|&(t, u)| go(m, rest, t, c + u)),
            }
        }
        go(m, &tape(word), 0, 0)
    }

    #[test]
    fn reachability_matches_path_enumeration() {
        let m = build_lsay_nbca();
        for w in m.alphabet().words_up_to(8) {
            assert_eq!(run_nbca_word(&m, &w), enumerate_paths(&m, &w));
        }
    }

    #[test]
    fn empty_choice_sets_kill_paths() {
        let alphabet = Alphabet::from_chars("a").unwrap();
        let delta = vec![vec![vec![(0, 0)], vec![], vec![(0, 0)]]];
        let m = NondetBca::new(alphabet, vec!["q".into()], [0], delta).unwrap();
        assert!(run_nbca(&m, "").unwrap());
        assert!(!run_nbca(&m, "a").unwrap());
    }

    #[test]
    fn normalize_examples() {
        let m = plus_three();
        let n = normalize_updates(&m);
        assert!(n.has_unit_updates());
        assert_eq!(n.states().len(), 3);
        for w in ["", "a", "aa", "aaa"] {
            assert_eq!(
                run_dbca(&n, w).unwrap().accepted,
                run_dbca(&m, w).unwrap().accepted
            );
        }
        assert!(!run_dbca(&n, "a").unwrap().accepted);
        assert_eq!(normalize_updates(&balance_dbca()), balance_dbca());
    }

    #[test]
    fn state_determination_of_balance() {
        let m = balance_dbca();
        assert!(!m.is_state_determined());
        let d = state_determine_updates(&m);
        assert!(d.is_state_determined());
        assert_eq!(d.states(), ["q1[0]", "q1[-1]", "q1[+1]"]);
        let again = state_determine_updates(&d);
        assert_eq!(again, d);
    }

    #[test]
    fn transformations_preserve_acceptance() {
        for m in test_machines() {
            let n = normalize_updates(&m);
            let d = state_determine_updates(&n);
            for w in m.alphabet().words_up_to(6) {
                let expected = run_dbca_word(&m, &w).accepted;
                assert_eq!(run_dbca_word(&n, &w).accepted, expected);
                assert_eq!(run_dbca_word(&d, &w).accepted, expected);
            }
        }
    }

    #[test]
    fn compile_examples() {
        let d = state_determine_updates(&balance_dbca());
        let g = compile_to_gfa(&d).unwrap();
        assert_eq!(gfa_value(&g, "ab").unwrap(), rat(0, 1));
        assert_eq!(gfa_value(&g, "aab").unwrap(), rat(1, 1));
        assert_eq!(gfa_value(&g, "b").unwrap(), rat(-1, 2));
        let g2 = complement_witness_gfa(&d).unwrap();
        assert_eq!(g2.states(), 16);
        assert_eq!(gfa_value(&g2, "ab").unwrap(), rat(0, 1));
        assert_eq!(gfa_value(&g2, "aab").unwrap(), rat(1, 1));
        assert_eq!(gfa_value(&g2, "b").unwrap(), rat(1, 4));
    }

    #[test]
    fn compile_rejects_unprepared_machines() {
        assert!(matches!(
            compile_to_gfa(&balance_dbca()),
            Err(Error::Construction(_))
        ));
        assert!(matches!(
            compile_to_gfa(&plus_three()),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn compiled_value_matches_counter_formula() {
        for m in test_machines() {
            let prepared = state_determine_updates(&normalize_updates(&m));
            let primes = first_primes(prepared.counters());
            let g = compile_to_gfa(&prepared).unwrap();
            let g2 = complement_witness_gfa(&prepared).unwrap();
            for w in m.alphabet().words_up_to(6) {
                let run = run_dbca_word(&prepared, &w);
                let expected = if prepared.accepting().contains(&run.final_state) {
                    primes
                        .iter()
                        .zip(&run.counters)
                        .fold(Rational::one(), |acc, (&p, &c)| {
                            acc * Rational::from_integer(p.into()).pow(c as i32)
                        })
                        - Rational::one()
                } else {
                    -Rational::one()
                };
                assert_eq!(g.value(&w).unwrap(), expected);
                let zero = g2.value(&w).unwrap().is_zero();
                assert_eq!(zero, run_dbca_word(&m, &w).accepted);
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(first_primes(6), [2, 3, 5, 7, 11, 13]);
    }

    fn random_machine() -> impl Strategy<Value = DetBca> {
        (1usize..=3, 1usize..=2, 1i64..=2).prop_flat_map(|(n, k, m)| {
            let mv =
                (0..n, proptest::collection::vec(-m..=m, k)).prop_map(|(t, u)| BcaMove::new(t, u));
            let table = proptest::collection::vec(proptest::collection::vec(mv, 4), n);
            let accepting = proptest::collection::vec(any::<bool>(), n);
            (table, accepting).prop_map(move |(delta, acc)| {
                let names = (0..n).map(|i| format!("q{i}")).collect();
                let accepting = acc.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i);
                DetBca::new(
                    Alphabet::from_chars("ab").unwrap(),
                    names,
                    accepting,
                    k,
                    delta,
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_machines_survive_the_pipeline(m in random_machine()) {
            let n = normalize_updates(&m);
            let d = state_determine_updates(&n);
            let g2 = complement_witness_any(&m).unwrap();
            for w in m.alphabet().words_up_to(6) {
                let expected = run_dbca_word(&m, &w).accepted;
                prop_assert_eq!(run_dbca_word(&n, &w).accepted, expected);
                prop_assert_eq!(run_dbca_word(&d, &w).accepted, expected);
                prop_assert_eq!(g2.value(&w).unwrap().is_zero(), expected);
            }
        }
    }
}
