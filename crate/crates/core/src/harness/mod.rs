//! Machine files, named builders, sweeps, well-formedness sweeps, BCA
//! compilation and claim verification, as used by the command-line tool.

mod builders;
mod claims;
mod eval;
mod machine_file;

use std::fmt;

use rayon::prelude::*;

pub use builders::{build, parse_params, BUILDERS};
pub use claims::{
    verify_claim, verify_file, BoundType, Claim, ClaimViolation, MachineRef, VerifyReport,
};
pub use eval::{
    convention_name, effective_conventions, evaluate, format_decimal, oracle_member, run_report,
    sweep, sweep_csv, sweep_words, CounterChoice, Evaluation, SweepOptions, SweepRow, CSV_HEADER,
    MAX_SWEEP_LEN,
};
pub use machine_file::{Machine, MachineDoc};

use crate::bca::{complement_witness_any, first_primes};
use crate::error::{Error, Result};
use crate::qruntime::{check_local, check_well_formed, QMachineSpec, WfViolation};

/// Well-formedness over every input up to a length.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WfSweepReport {
    pub inputs: usize,
    /// Violations of the input-independent per-symbol check.
    pub local: Vec<WfViolation>,
    /// Violations of the configuration-space check, with the input.
    pub global: Vec<(String, WfViolation)>,
}

impl WfSweepReport {
    pub fn passed(&self) -> bool {
        self.local.is_empty() && self.global.is_empty()
    }
}

impl fmt::Display for WfSweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 20;
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict}: {} inputs checked", self.inputs)?;
        for v in self.local.iter().take(SHOWN) {
            write!(f, "\n  local: {v}")?;
        }
        if self.local.len() > SHOWN {
            write!(
                f,
                "\n  ... {} more local violations",
                self.local.len() - SHOWN
            )?;
        }
        for (input, v) in self.global.iter().take(SHOWN) {
            write!(f, "\n  input {input:?}: {v}")?;
        }
        if self.global.len() > SHOWN {
            write!(f, "\n  ... {} more violations", self.global.len() - SHOWN)?;
        }
        Ok(())
    }
}

/// Runs the well-formedness check on every input of length at most `max_len`.
pub fn check_wf_sweep(spec: &QMachineSpec, max_len: usize, tol: f64) -> WfSweepReport {
    let words: Vec<Vec<usize>> = spec.alphabet().words_up_to(max_len).collect();
    let global = words
        .par_iter()
        .map(|w| {
            let input = spec.alphabet().render(w);
            check_well_formed(spec, w, tol)
                .global
                .into_iter()
                .map(move |v| (input.clone(), v))
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    WfSweepReport {
        inputs: words.len(),
        local: check_local(spec, tol),
        global,
    }
}

/// Compiles a deterministic BCA into its complement-witness GFA `G ⊗ G`,
/// returning the primes assigned to the counters in order.
pub fn compile_bca(doc: &MachineDoc) -> Result<(MachineDoc, Vec<u64>)> {
    match &doc.machine {
        Machine::Dbca(m) => {
            let g = complement_witness_any(m)?;
            Ok((
                MachineDoc::new(Machine::Gfa(g), doc.language),
                first_primes(m.counters()),
            ))
        }
        other => Err(Error::usage(format!(
            "compile-bca needs a deterministic BCA, got a {} machine",
            other.kind()
        ))),
    }
}
