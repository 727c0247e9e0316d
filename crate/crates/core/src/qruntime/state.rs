use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::error::Result;
use crate::numerics::{Amplitude, SparseVector, DROP_THRESHOLD};

use super::spec::Outcome;

/// A machine state paired with the head position (one-way) or counters (realtime).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub state: usize,
    pub coords: SmallVec<[i64; 2]>,
}

impl Config {
    pub fn new(state: usize, coords: impl IntoIterator<Item = i64>) -> Self {
        Self {
            state,
            coords: coords.into_iter().collect(),
        }
    }
}

/// Images of one configuration, grouped by register symbol.
type RegisterImages = BTreeMap<usize, Vec<(Config, Amplitude)>>;

/// Sparse density operator over configurations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuantumState {
    rho: BTreeMap<(Config, Config), Amplitude>,
}

/// Probability mass removed by a halting measurement during one step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Halted {
    pub accept: f64,
    pub reject: f64,
}

impl QuantumState {
    pub fn pure(config: Config) -> Self {
        Self::from_pure(&SparseVector::unit(config))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(psi: &SparseVector<Config, Amplitude>) -> Self {
        let mut rho = BTreeMap::new();
        for (a, x) in psi.iter() {
            for (b, y) in psi.iter() {
                rho.insert((a.clone(), b.clone()), x * y.conj());
            }
        }
        Self { rho }
    }

    pub fn get(&self, a: &Config, b: &Config) -> Amplitude {
        self.rho
            .get(&(a.clone(), b.clone()))
            .copied()
            .unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Config, &Config, &Amplitude)> {
        self.rho.iter().map(|((a, b), v)| (a, b, v))
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().values().sum()
    }

    /// Occupation probability of every configuration with nonzero weight.
    pub fn diagonal(&self) -> BTreeMap<Config, f64> {
        self.rho
            .iter()
            .filter(|((a, b), _)| a == b)
            .map(|((a, _), v)| (a.clone(), v.re))
            .collect()
    }

    /// Applies `ρ ↦ Σ_ω E_ω ρ E_ω†` where `column` gives `E_ω |c⟩` for every ω.
    ///
    /// Mass written with accept or reject register symbols is measured out
    /// and returned instead of being kept in the state.
    pub fn apply_channel<F, C>(&self, mut column: F, class: C) -> Result<(QuantumState, Halted)>
    where
        F: FnMut(&Config) -> Result<Vec<(usize, Config, Amplitude)>>,
        C: Fn(usize) -> Outcome,
    {
        let mut columns: BTreeMap<&Config, RegisterImages> = BTreeMap::new();
        for (a, b) in self.rho.keys() {
            for c in [a, b] {
                if !columns.contains_key(c) {
                    let mut by_register: RegisterImages = BTreeMap::new();
                    for (reg, target, amp) in column(c)? {
                        by_register.entry(reg).or_default().push((target, amp));
                    }
                    columns.insert(c, by_register);
                }
            }
        }
        let mut next: BTreeMap<(Config, Config), Amplitude> = BTreeMap::new();
        let mut halted = Halted::default();
        for ((a, b), x) in &self.rho {
            let (ca, cb) = (&columns[a], &columns[b]);
            for (reg, terms_a) in ca {
                let Some(terms_b) = cb.get(reg) else { continue };
                let outcome = class(*reg);
                for (ta, va) in terms_a {
                    let left = va * x;
                    for (tb, vb) in terms_b {
                        let v = left * vb.conj();
                        match outcome {
                            Outcome::Neutral => {
                                *next.entry((ta.clone(), tb.clone())).or_default() += v
                            }
                            Outcome::Accept if ta == tb => halted.accept += v.re,
                            Outcome::Reject if ta == tb => halted.reject += v.re,
                            _ => {}
                        }
                    }
                }
            }
        }
        next.retain(|_, v| v.norm() >= DROP_THRESHOLD);
        Ok((QuantumState { rho: next }, halted))
    }
}

/// Outcome probabilities of a quantum run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunResult {
    pub accept: f64,
    pub reject: f64,
    pub pending: f64,
    pub steps: usize,
    /// False when a one-way run hit its step cap with mass still pending.
    pub halted: bool,
}
