use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::alphabet::{Alphabet, TapeSymbol};
use crate::error::{Error, Result};
use crate::numerics::{qft_amplitude, Amplitude, Rational};

use super::state::Config;

/// Machine family of a [`QMachineSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QMode {
    /// One-way QFA with a stay/right head and halting register outcomes.
    OneWay,
    /// Realtime QBCA with `counters` blind counters and a final measurement.
    Realtime { counters: usize },
}

/// Head motion attached to the state being entered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveTag {
    Stay,
    Right,
}

impl MoveTag {
    pub fn offset(self) -> i64 {
        match self {
            MoveTag::Stay => 0,
            MoveTag::Right => 1,
        }
    }
}

/// Class of a register symbol; one-way machines halt on accept/reject symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Accept,
    Reject,
    Neutral,
}

/// Transition amplitude kept in symbolic form until evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Amp {
    Exact {
        re: Rational,
        im: Rational,
    },
    /// `e^{2πi·j·l/n} / √n`.
    Qft {
        n: usize,
        j: i64,
        l: i64,
    },
}

impl Amp {
    pub fn one() -> Self {
        Amp::real(Rational::from_integer(1.into()))
    }

    pub fn real(re: Rational) -> Self {
        Amp::Exact {
            re,
            im: Rational::zero(),
        }
    }

    /// `1/√n`.
    pub fn inv_sqrt(n: usize) -> Self {
        Amp::Qft { n, j: 0, l: 0 }
    }

    pub fn qft(n: usize, j: i64, l: i64) -> Self {
        Amp::Qft { n, j, l }
    }

    pub fn value(&self) -> Amplitude {
        match self {
            Amp::Exact { re, im } => Amplitude::new(to_f64(re), to_f64(im)),
            Amp::Qft { n, j, l } => qft_amplitude(*n, *j, *l),
        }
    }
}

fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QState {
    pub name: String,
    pub tag: MoveTag,
    pub accepting: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterSymbol {
    pub name: String,
    pub class: Outcome,
}

/// One term `α (target, update, ω)` of `δ(q, σ̃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTransition {
    pub amp: Amp,
    pub target: usize,
    /// Counter update; empty for one-way machines.
    pub update: Vec<i64>,
    pub register: usize,
}

#[derive(Clone, Debug, PartialEq)]
struct NumTerm {
    amp: Amplitude,
    target: usize,
    update: SmallVec<[i64; 2]>,
    register: usize,
}

/// A total transition table for a one-way QFA or realtime QBCA.
///
/// State 0 is initial. `delta[q][tape_index]` lists the terms of `δ(q, σ̃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMachineSpec {
    mode: QMode,
    alphabet: Alphabet,
    states: Vec<QState>,
    registers: Vec<RegisterSymbol>,
    delta: Vec<Vec<Vec<QTransition>>>,
    numeric: Vec<Vec<Vec<NumTerm>>>,
}

impl QMachineSpec {
    pub fn new(
        mode: QMode,
        alphabet: Alphabet,
        states: Vec<QState>,
        registers: Vec<RegisterSymbol>,
        delta: Vec<Vec<Vec<QTransition>>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::construction("machine needs at least one state"));
        }
        unique(states.iter().map(|s| &s.name), "state")?;
        unique(registers.iter().map(|r| &r.name), "register symbol")?;
        let counters = match mode {
            QMode::OneWay => 0,
            QMode::Realtime { counters } => counters,
        };
        let width = alphabet.len() + 2;
        if delta.len() != states.len() {
            return Err(Error::construction(
                "one transition row per state is required",
            ));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != width {
                return Err(Error::construction(format!(
                    "state {:?} needs {width} symbol entries",
                    states[q].name
                )));
            }
            for (s, terms) in row.iter().enumerate() {
                if terms.is_empty() {
                    return Err(Error::construction(format!(
                        "transition for ({}, symbol #{s}) is missing",
                        states[q].name
                    )));
                }
                for t in terms {
                    if t.target >= states.len()
                        || t.register >= registers.len()
                        || t.update.len() != counters
                    {
                        return Err(Error::construction(format!(
                            "malformed transition out of {:?}",
                            states[q].name
                        )));
                    }
                    if !t.amp.value().is_finite() {
                        return Err(Error::construction("non-finite amplitude"));
                    }
                }
            }
        }
        let numeric = delta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|terms| {
                        terms
                            .iter()
                            .map(|t| NumTerm {
                                amp: t.amp.value(),
                                target: t.target,
                                update: t.update.iter().copied().collect(),
                                register: t.register,
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            mode,
            alphabet,
            states,
            registers,
            delta,
            numeric,
        })
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[QState] {
        &self.states
    }

    pub fn registers(&self) -> &[RegisterSymbol] {
        &self.registers
    }

    pub fn delta(&self) -> &[Vec<Vec<QTransition>>] {
        &self.delta
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn counters(&self) -> usize {
        match self.mode {
            QMode::OneWay => 0,
            QMode::Realtime { counters } => counters,
        }
    }

    /// Largest counter update magnitude, at least 1.
    pub fn magnitude(&self) -> i64 {
        self.delta
            .iter()
            .flatten()
            .flatten()
            .flat_map(|t| t.update.iter().map(|u| u.abs()))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    pub fn initial_config(&self) -> Config {
        match self.mode {
            QMode::OneWay => Config::new(0, [1]),
            QMode::Realtime { counters } => Config::new(0, vec![0; counters]),
        }
    }

    /// Image of a configuration under the realtime step for `symbol`.
    pub fn realtime_column(
        &self,
        config: &Config,
        symbol: TapeSymbol,
    ) -> Vec<(usize, Config, Amplitude)> {
        self.numeric[config.state][self.alphabet.tape_index(symbol)]
            .iter()
            .map(|t| {
                let coords = config
                    .coords
                    .iter()
                    .zip(&t.update)
                    .map(|(c, u)| c + u)
                    .collect();
                (
                    t.register,
                    Config {
                        state: t.target,
                        coords,
                    },
                    t.amp,
                )
            })
            .collect()
    }

    /// Image of a one-way configuration reading `symbol` at its head.
    pub fn oneway_column(
        &self,
        config: &Config,
        symbol: TapeSymbol,
    ) -> Vec<(usize, Config, Amplitude)> {
        let pos = config.coords[0];
        self.numeric[config.state][self.alphabet.tape_index(symbol)]
            .iter()
            .map(|t| {
                let next = pos + self.states[t.target].tag.offset();
                (t.register, Config::new(t.target, [next]), t.amp)
            })
            .collect()
    }

    pub fn render_config(&self, config: &Config) -> String {
        let coords: Vec<String> = config.coords.iter().map(i64::to_string).collect();
        match self.mode {
            QMode::OneWay => format!("{}@{}", self.states[config.state].name, coords.join(",")),
            QMode::Realtime { .. } => {
                format!("({}, {})", self.states[config.state].name, coords.join(","))
            }
        }
    }
}

fn unique<'a>(names: impl Iterator<Item = &'a String>, what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::construction(format!("duplicate {what} {n:?}")));
        }
    }
    Ok(())
}

/// Name of the absorbing state added by [`SpecBuilder::complete`].
pub const SINK: &str = "⊥";

/// Incremental construction of a [`QMachineSpec`] with table completion.
#[derive(Clone, Debug)]
pub struct SpecBuilder {
    mode: QMode,
    alphabet: Alphabet,
    states: Vec<QState>,
    state_index: HashMap<String, usize>,
    registers: Vec<RegisterSymbol>,
    register_index: HashMap<String, usize>,
    delta: BTreeMap<(usize, usize), Vec<QTransition>>,
}

impl SpecBuilder {
    pub fn new(mode: QMode, alphabet: Alphabet) -> Self {
        Self {
            mode,
            alphabet,
            states: Vec::new(),
            state_index: HashMap::new(),
            registers: Vec::new(),
            register_index: HashMap::new(),
            delta: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Adds a state, or returns the existing one with that name.
    pub fn state(&mut self, name: impl Into<String>, tag: MoveTag, accepting: bool) -> usize {
        let name = name.into();
        if let Some(&i) = self.state_index.get(&name) {
            return i;
        }
        self.states.push(QState {
            name: name.clone(),
            tag,
            accepting,
        });
        self.state_index.insert(name, self.states.len() - 1);
        self.states.len() - 1
    }

    /// Adds a register symbol, or returns the existing one with that name.
    pub fn register(&mut self, name: impl Into<String>, class: Outcome) -> usize {
        let name = name.into();
        if let Some(&i) = self.register_index.get(&name) {
            return i;
        }
        self.registers.push(RegisterSymbol {
            name: name.clone(),
            class,
        });
        self.register_index.insert(name, self.registers.len() - 1);
        self.registers.len() - 1
    }

    /// Appends the term `amp (target, update, register)` to `δ(source, symbol)`.
    pub fn add(
        &mut self,
        source: usize,
        symbol: TapeSymbol,
        amp: Amp,
        target: usize,
        update: Vec<i64>,
        register: usize,
    ) {
        let key = (source, self.alphabet.tape_index(symbol));
        self.delta.entry(key).or_default().push(QTransition {
            amp,
            target,
            update,
            register,
        });
    }

    /// One-way shorthand without counter updates.
    pub fn add_move(
        &mut self,
        source: usize,
        symbol: TapeSymbol,
        amp: Amp,
        target: usize,
        register: usize,
    ) {
        self.add(source, symbol, amp, target, Vec::new(), register);
    }

    /// Completes every missing `(q, σ̃)` with amplitude 1 into an absorbing
    /// sink, writing a register symbol reserved for that pair.
    pub fn complete(mut self) -> Result<QMachineSpec> {
        let counters = match self.mode {
            QMode::OneWay => 0,
            QMode::Realtime { counters } => counters,
        };
        let class = match self.mode {
            QMode::OneWay => Outcome::Reject,
            QMode::Realtime { .. } => Outcome::Neutral,
        };
        let symbols = self.alphabet.tape_symbols();
        let mut sink = None;
        let mut q = 0;
        while q < self.states.len() {
            for &sym in &symbols {
                let key = (q, self.alphabet.tape_index(sym));
                if self.delta.contains_key(&key) {
                    continue;
                }
                let s = *sink.get_or_insert(self.states.len());
                if s == self.states.len() {
                    self.state(SINK, MoveTag::Stay, false);
                }
                let reg = self.register(
                    format!(
                        "ω⊥[{},{}]",
                        self.states[q].name,
                        self.alphabet.render_tape(sym)
                    ),
                    class,
                );
                self.add(q, sym, Amp::one(), s, vec![0; counters], reg);
            }
            q += 1;
        }
        let width = symbols.len();
        let mut delta = vec![vec![Vec::new(); width]; self.states.len()];
        for ((q, s), terms) in self.delta {
            delta[q][s] = terms;
        }
        QMachineSpec::new(self.mode, self.alphabet, self.states, self.registers, delta)
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::OneWay => write!(f, "one-way QFA"),
            QMode::Realtime { counters } => write!(f, "realtime Q{counters}BCA"),
        }
    }
}
