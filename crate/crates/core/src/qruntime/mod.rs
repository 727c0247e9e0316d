//! Quantum machines with a finite register: one-way QFAs that halt on
//! register outcomes, and realtime QBCAs measured once after `$`.
//!
//! Every step applies the channel `ρ ↦ Σ_ω E_ω ρ E_ω†`, where `E_ω` collects
//! the transitions that write `ω` to the register.

mod run;
mod spec;
mod state;
mod wellformed;

pub use run::{
    run_oneway, run_oneway_word, run_quantum_word, run_realtime, run_realtime_word,
    CounterAcceptance, OneWayRun, RealtimeRun, HALT_EPS,
};
pub use spec::{
    Amp, MoveTag, Outcome, QMachineSpec, QMode, QState, QTransition, RegisterSymbol, SpecBuilder,
    SINK,
};
pub use state::{Config, Halted, QuantumState, RunResult};
pub use wellformed::{
    check_local, check_well_formed, materialize, OperatorFamily, WellFormednessReport, WfViolation,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, TapeSymbol};
    use crate::numerics::Rational;

    fn half() -> Amp {
        Amp::real(Rational::new(1.into(), 2.into()))
    }

    /// One-way machine over `{a}`: a Hadamard-like split on `¢`, then each
    /// branch halts on the next symbol with its own outcome.
    fn splitter() -> QMachineSpec {
        let mut b = SpecBuilder::new(QMode::OneWay, Alphabet::from_chars("a").unwrap());
        let q0 = b.state("q0", MoveTag::Stay, false);
        let l = b.state("l", MoveTag::Right, false);
        let r = b.state("r", MoveTag::Right, false);
        let fin = b.state("f", MoveTag::Stay, false);
        let n = b.register("n", Outcome::Neutral);
        let acc = b.register("acc", Outcome::Accept);
        let rej = b.register("rej", Outcome::Reject);
        b.add_move(q0, TapeSymbol::LeftEnd, Amp::inv_sqrt(2), l, n);
        b.add_move(q0, TapeSymbol::LeftEnd, Amp::inv_sqrt(2), r, n);
        for sym in [TapeSymbol::Letter(0), TapeSymbol::RightEnd] {
            b.add_move(l, sym, Amp::one(), fin, acc);
            b.add_move(r, sym, Amp::one(), fin, rej);
        }
        b.complete().unwrap()
    }

    #[test]
    fn splitter_halts_with_half_each() {
        let spec = splitter();
        let r = run_oneway(&spec, "a", None).unwrap();
        assert!((r.accept - 0.5).abs() < 1e-12);
        assert!((r.reject - 0.5).abs() < 1e-12);
        assert!(r.halted);
        assert_eq!(r.steps, 2);
        assert!(check_well_formed(&spec, &[0, 0], 1e-9).is_empty());
    }

    #[test]
    fn completion_adds_sink_and_fresh_symbols() {
        let spec = splitter();
        assert_eq!(spec.states().last().unwrap().name, SINK);
        let fresh = spec
            .registers()
            .iter()
            .filter(|r| r.name.starts_with("ω⊥"))
            .count();
        // q0 misses a and $, f and the sink miss all three symbols, l and r miss ¢.
        assert_eq!(fresh, 2 + 3 + 3 + 1 + 1);
        assert!(spec
            .registers()
            .iter()
            .filter(|r| r.name.starts_with("ω⊥"))
            .all(|r| r.class == Outcome::Reject));
    }

    #[test]
    fn deleted_branch_is_reported() {
        let spec = splitter();
        let mut delta = spec.delta().to_vec();
        delta[0][0].pop();
        let broken = QMachineSpec::new(
            spec.mode(),
            spec.alphabet().clone(),
            spec.states().to_vec(),
            spec.registers().to_vec(),
            delta,
        )
        .unwrap();
        let report = check_well_formed(&broken, &[0], 1e-9);
        assert!(!report.is_empty());
        assert!(report
            .local
            .iter()
            .any(|v| v.first == "q0" && v.symbol == "¢"));
        assert!(report.global.iter().any(|v| v.first == "q0@1"));
    }

    #[test]
    fn identity_realtime_machine() {
        let mut b = SpecBuilder::new(
            QMode::Realtime { counters: 1 },
            Alphabet::from_chars("ab").unwrap(),
        );
        let q = b.state("q", MoveTag::Stay, true);
        let w = b.register("ω1", Outcome::Neutral);
        for sym in b.alphabet().tape_symbols() {
            b.add(q, sym, Amp::one(), q, vec![0], w);
        }
        let spec = b.complete().unwrap();
        assert_eq!(spec.states().len(), 1);
        assert!(check_well_formed(&spec, &[0, 1], 1e-9).is_empty());
        let r = run_realtime(&spec, "abba", CounterAcceptance::RequireZero).unwrap();
        assert!((r.accept - 1.0).abs() < 1e-12);
    }

    #[test]
    fn realtime_counter_measurement() {
        // Each a increments with amplitude 1/2 per branch of a 4-way split.
        let mut b = SpecBuilder::new(
            QMode::Realtime { counters: 1 },
            Alphabet::from_chars("a").unwrap(),
        );
        let q = b.state("q", MoveTag::Stay, true);
        let w: Vec<usize> = (0..4)
            .map(|i| b.register(format!("ω{i}"), Outcome::Neutral))
            .collect();
        b.add(q, TapeSymbol::LeftEnd, Amp::one(), q, vec![0], w[0]);
        b.add(q, TapeSymbol::RightEnd, Amp::one(), q, vec![0], w[0]);
        for (i, &reg) in w.iter().enumerate() {
            b.add(
                q,
                TapeSymbol::Letter(0),
                half(),
                q,
                vec![i64::from(i % 2 == 1)],
                reg,
            );
        }
        let spec = b.complete().unwrap();
        assert!(check_well_formed(&spec, &[0], 1e-9).is_empty());
        let zero = run_realtime(&spec, "a", CounterAcceptance::RequireZero).unwrap();
        let any = run_realtime(&spec, "a", CounterAcceptance::Ignore).unwrap();
        assert!((zero.accept - 0.5).abs() < 1e-12);
        assert!((any.accept - 1.0).abs() < 1e-12);
        assert!(run_oneway(&spec, "a", None).is_err());
    }
}
