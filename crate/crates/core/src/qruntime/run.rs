use crate::alphabet::{tape, TapeSymbol};
use crate::error::{Error, Result};

use super::spec::{QMachineSpec, QMode};
use super::state::{QuantumState, RunResult};

/// Whether the final realtime measurement also demands zero counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CounterAcceptance {
    #[default]
    RequireZero,
    Ignore,
}

/// Pending mass below which a one-way run counts as halted.
pub const HALT_EPS: f64 = 1e-12;

fn require_mode(spec: &QMachineSpec, realtime: bool) -> Result<()> {
    match (spec.mode(), realtime) {
        (QMode::Realtime { .. }, true) | (QMode::OneWay, false) => Ok(()),
        (mode, _) => Err(Error::usage(format!(
            "operation not available for a {mode}"
        ))),
    }
}

/// Symbol-by-symbol execution of a realtime machine.
#[derive(Clone, Debug)]
pub struct RealtimeRun<'a> {
    spec: &'a QMachineSpec,
    tape: Vec<TapeSymbol>,
    next: usize,
    bound: i64,
    state: QuantumState,
}

impl<'a> RealtimeRun<'a> {
    pub fn new(spec: &'a QMachineSpec, word: &[usize]) -> Result<Self> {
        require_mode(spec, true)?;
        check_word(spec, word)?;
        let bound = spec.magnitude() * (word.len() as i64 + 2);
        Ok(Self {
            spec,
            tape: tape(word),
            next: 0,
            bound,
            state: QuantumState::pure(spec.initial_config()),
        })
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    /// Symbols not yet read.
    pub fn remaining(&self) -> &[TapeSymbol] {
        &self.tape[self.next..]
    }

    /// Reads the next tape symbol; returns false once `$` has been read.
    pub fn step(&mut self) -> Result<bool> {
        let Some(&sym) = self.tape.get(self.next) else {
            return Ok(false);
        };
        let (spec, bound) = (self.spec, self.bound);
        let (state, _) = self.state.apply_channel(
            |c| {
                let col = spec.realtime_column(c, sym);
                match col
                    .iter()
                    .find(|(_, t, _)| t.coords.iter().any(|x| x.abs() > bound))
                {
                    Some((_, t, _)) => Err(Error::Runtime(format!(
                        "counter left the bound ±{bound} at {}",
                        spec.render_config(t)
                    ))),
                    None => Ok(col),
                }
            },
            |_| super::spec::Outcome::Neutral,
        )?;
        self.state = state;
        self.next += 1;
        Ok(self.next < self.tape.len())
    }

    /// Final measurement after the whole tape has been read.
    pub fn finish(mut self, counters: CounterAcceptance) -> Result<RunResult> {
        while self.step()? {}
        let steps = self.tape.len();
        let accept: f64 = self
            .state
            .diagonal()
            .iter()
            .filter(|(c, _)| self.spec.states()[c.state].accepting)
            .filter(|(c, _)| {
                counters == CounterAcceptance::Ignore || c.coords.iter().all(|&x| x == 0)
            })
            .map(|(_, p)| p)
            .sum();
        let total = self.state.trace();
        Ok(RunResult {
            accept,
            reject: total - accept,
            pending: 0.0,
            steps,
            halted: true,
        })
    }
}

fn check_word(spec: &QMachineSpec, word: &[usize]) -> Result<()> {
    match word.iter().position(|&s| s >= spec.alphabet().len()) {
        Some(position) => Err(Error::InvalidSymbol {
            position,
            found: format!("#{}", word[position]),
        }),
        None => Ok(()),
    }
}

pub fn run_realtime_word(
    spec: &QMachineSpec,
    word: &[usize],
    counters: CounterAcceptance,
) -> Result<RunResult> {
    RealtimeRun::new(spec, word)?.finish(counters)
}

pub fn run_realtime(
    spec: &QMachineSpec,
    input: &str,
    counters: CounterAcceptance,
) -> Result<RunResult> {
    run_realtime_word(spec, &spec.alphabet().tokenize(input)?, counters)
}

/// Step-by-step execution of a one-way machine with halting measurements.
#[derive(Clone, Debug)]
pub struct OneWayRun<'a> {
    spec: &'a QMachineSpec,
    tape: Vec<TapeSymbol>,
    state: QuantumState,
    accept: f64,
    reject: f64,
    steps: usize,
}

impl<'a> OneWayRun<'a> {
    pub fn new(spec: &'a QMachineSpec, word: &[usize]) -> Result<Self> {
        require_mode(spec, false)?;
        check_word(spec, word)?;
        Ok(Self {
            spec,
            tape: tape(word),
            state: QuantumState::pure(spec.initial_config()),
            accept: 0.0,
            reject: 0.0,
            steps: 0,
        })
    }

    /// `(|Q| + 2)(|w| + 2)`.
    pub fn default_step_cap(spec: &QMachineSpec, word_len: usize) -> usize {
        (spec.states().len() + 2) * (word_len + 2)
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    pub fn accept(&self) -> f64 {
        self.accept
    }

    pub fn reject(&self) -> f64 {
        self.reject
    }

    pub fn pending(&self) -> f64 {
        self.state.trace()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&mut self) -> Result<()> {
        let (spec, tape) = (self.spec, &self.tape);
        let (state, halted) = self.state.apply_channel(
            |c| {
                let pos = c.coords[0];
                let sym = usize::try_from(pos - 1)
                    .ok()
                    .and_then(|i| tape.get(i))
                    .ok_or_else(|| {
                        Error::Runtime(format!("head left the tape at {}", spec.render_config(c)))
                    })?;
                Ok(spec.oneway_column(c, *sym))
            },
            |reg| spec.registers()[reg].class,
        )?;
        self.state = state;
        self.accept += halted.accept;
        self.reject += halted.reject;
        self.steps += 1;
        Ok(())
    }

    pub fn run(mut self, step_cap: usize) -> Result<RunResult> {
        if step_cap == 0 {
            return Err(Error::usage("step cap must be at least 1"));
        }
        while self.steps < step_cap && self.pending() >= HALT_EPS {
            self.step()?;
        }
        let pending = self.pending();
        Ok(RunResult {
            accept: self.accept,
            reject: self.reject,
            pending,
            steps: self.steps,
            halted: pending < HALT_EPS,
        })
    }
}

pub fn run_oneway_word(
    spec: &QMachineSpec,
    word: &[usize],
    step_cap: Option<usize>,
) -> Result<RunResult> {
    let cap = step_cap.unwrap_or_else(|| OneWayRun::default_step_cap(spec, word.len()));
    OneWayRun::new(spec, word)?.run(cap)
}

pub fn run_oneway(spec: &QMachineSpec, input: &str, step_cap: Option<usize>) -> Result<RunResult> {
    run_oneway_word(spec, &spec.alphabet().tokenize(input)?, step_cap)
}

/// Runs either kind of quantum machine with its natural semantics.
pub fn run_quantum_word(
    spec: &QMachineSpec,
    word: &[usize],
    counters: CounterAcceptance,
    step_cap: Option<usize>,
) -> Result<RunResult> {
    match spec.mode() {
        QMode::OneWay => run_oneway_word(spec, word, step_cap),
        QMode::Realtime { .. } => run_realtime_word(spec, word, counters),
    }
}
