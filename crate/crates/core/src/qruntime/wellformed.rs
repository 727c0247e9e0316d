use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{tape, TapeSymbol};
use crate::numerics::{check_columns_orthonormal, Amplitude, SparseMap};

use super::spec::{QMachineSpec, QMode};
use super::state::Config;

/// Operators `E_ω` (indexed by register symbol) over a concrete configuration space.
#[derive(Clone, Debug)]
pub struct OperatorFamily {
    /// The tape symbol this family reads, for realtime machines.
    pub symbol: Option<TapeSymbol>,
    pub sources: Vec<Config>,
    pub operators: Vec<SparseMap<Config, Amplitude>>,
}

/// Every one-way source configuration `(q, x)` with `1 ≤ x ≤ |w̃|`.
fn oneway_sources(spec: &QMachineSpec, tape_len: usize) -> Vec<Config> {
    (0..spec.states().len())
        .flat_map(|q| (1..=tape_len as i64).map(move |x| Config::new(q, [x])))
        .collect()
}

/// Every realtime source `(q, v)` with counters in `[-bound, bound]^k`.
fn realtime_sources(spec: &QMachineSpec, bound: i64) -> Vec<Config> {
    let k = spec.counters();
    let mut vectors: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..k {
        vectors = vectors
            .into_iter()
            .flat_map(|v| (-bound..=bound).map(move |c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    (0..spec.states().len())
        .flat_map(|q| {
            vectors
                .iter()
                .map(move |v| Config::new(q, v.iter().copied()))
        })
        .collect()
}

fn build_family(
    spec: &QMachineSpec,
    symbol: Option<TapeSymbol>,
    sources: Vec<Config>,
    column: impl Fn(&Config) -> Vec<(usize, Config, Amplitude)>,
) -> OperatorFamily {
    let mut operators = vec![SparseMap::new(); spec.registers().len()];
    for source in &sources {
        for (reg, target, amp) in column(source) {
            operators[reg].add(target, source.clone(), amp);
        }
    }
    OperatorFamily {
        symbol,
        sources,
        operators,
    }
}

/// Materializes the transition operators for input `word`.
///
/// One-way machines get a single family with the tape baked into head
/// positions. Realtime machines get one family per tape square in the order
/// `¢, w₁, …, $`, over counters within `m·(|w|+2)`.
pub fn materialize(spec: &QMachineSpec, word: &[usize]) -> Vec<OperatorFamily> {
    let tape = tape(word);
    match spec.mode() {
        QMode::OneWay => {
            let sources = oneway_sources(spec, tape.len());
            vec![build_family(spec, None, sources, |c| {
                spec.oneway_column(c, tape[c.coords[0] as usize - 1])
            })]
        }
        QMode::Realtime { .. } => {
            let bound = spec.magnitude() * (word.len() as i64 + 2);
            tape.iter()
                .map(|&sym| {
                    build_family(spec, Some(sym), realtime_sources(spec, bound), |c| {
                        spec.realtime_column(c, sym)
                    })
                })
                .collect()
        }
    }
}

/// Two columns whose inner product deviates from the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct WfViolation {
    /// Rendered tape symbol being read.
    pub symbol: String,
    pub first: String,
    pub second: String,
    pub inner: Amplitude,
}

impl fmt::Display for WfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.second {
            write!(
                f,
                "column {} on {} has squared norm {:.12}",
                self.first, self.symbol, self.inner.re
            )
        } else {
            write!(
                f,
                "columns {} and {} on {} overlap by {:.3e}",
                self.first,
                self.second,
                self.symbol,
                self.inner.norm()
            )
        }
    }
}

/// Result of [`check_well_formed`]; both lists empty means well-formed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WellFormednessReport {
    /// Violations over the full configuration space.
    pub global: Vec<WfViolation>,
    /// Violations of the per-symbol check on source states alone.
    pub local: Vec<WfViolation>,
}

impl WellFormednessReport {
    pub fn is_empty(&self) -> bool {
        self.global.is_empty() && self.local.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum LocalKey {
    Source(usize),
    Target {
        state: usize,
        update: Vec<i64>,
        register: usize,
    },
}

/// Per-symbol check: columns indexed by source state, rows by `(target, update, ω)`.
pub fn check_local(spec: &QMachineSpec, tol: f64) -> Vec<WfViolation> {
    let mut out = Vec::new();
    for sym in spec.alphabet().tape_symbols() {
        let idx = spec.alphabet().tape_index(sym);
        let mut map = SparseMap::new();
        for (q, row) in spec.delta().iter().enumerate() {
            for t in &row[idx] {
                let key = LocalKey::Target {
                    state: t.target,
                    update: t.update.clone(),
                    register: t.register,
                };
                map.add(key, LocalKey::Source(q), t.amp.value());
            }
        }
        let sources: Vec<LocalKey> = (0..spec.states().len()).map(LocalKey::Source).collect();
        let name = |k: &LocalKey| match k {
            LocalKey::Source(q) => spec.states()[*q].name.clone(),
            LocalKey::Target { .. } => unreachable!("targets are never sources"),
        };
        for v in check_columns_orthonormal(&[map], &sources, tol).violations {
            out.push(WfViolation {
                symbol: spec.alphabet().render_tape(sym).to_string(),
                first: name(&v.first),
                second: name(&v.second),
                inner: v.inner,
            });
        }
    }
    out
}

/// Checks `Σ_ω E_ω† E_ω = I` on the configuration space for `word`, plus
/// the local per-symbol condition.
pub fn check_well_formed(spec: &QMachineSpec, word: &[usize], tol: f64) -> WellFormednessReport {
    let tape = tape(word);
    let mut global = Vec::new();
    let mut seen = BTreeSet::new();
    for family in materialize(spec, word) {
        if let Some(sym) = family.symbol {
            if !seen.insert(sym) {
                continue;
            }
        }
        let report = check_columns_orthonormal(&family.operators, &family.sources, tol);
        for v in report.violations {
            let symbol = match family.symbol {
                Some(sym) => sym,
                None => tape[v.first.coords[0] as usize - 1],
            };
            global.push(WfViolation {
                symbol: spec.alphabet().render_tape(symbol).to_string(),
                first: spec.render_config(&v.first),
                second: spec.render_config(&v.second),
                inner: v.inner,
            });
        }
    }
    WellFormednessReport {
        global,
        local: check_local(spec, tol),
    }
}
