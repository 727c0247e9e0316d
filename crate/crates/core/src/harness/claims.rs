//! Claim files: a machine, a language, an error-bound type and a sweep range.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::bca::complement_witness_any;
use crate::error::{Error, Result};
use crate::languages::LanguageId;
use crate::numerics::{format_rational, parse_rational, Rational, EPS_NUM};
use crate::qruntime::CounterAcceptance;

use super::builders::build;
use super::eval::{
    convention_name, effective_conventions, evaluate, oracle_member, sweep_words, CounterChoice,
    Evaluation,
};
use super::machine_file::{Machine, MachineDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundType {
    /// Members accepted with probability 1, non-members at most `bound`.
    OneSidedNegative,
    /// Members at least `1 − bound`, non-members at most `bound`.
    TwoSided,
    /// Positive value or probability exactly on members.
    NondetMode,
    /// Zero value exactly on members.
    ExactZeroComplement,
}

impl BoundType {
    fn needs_bound(self) -> bool {
        matches!(self, BoundType::OneSidedNegative | BoundType::TwoSided)
    }
}

/// Where a claim's machine comes from: a named builder or a machine file
/// (resolved relative to the claim file). `compile` replaces a deterministic
/// BCA by its complement-witness GFA.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builder: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub compile: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub name: String,
    pub machine: MachineRef,
    /// Language id such as `"upal"` or `"twin:2"`.
    pub language: String,
    pub bound_type: BoundType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    /// Sweep symbols; defaults to the machine alphabet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub max_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter_acceptance: Option<CounterChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_cap: Option<usize>,
}

impl Claim {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(EPS_NUM)
    }

    /// Conventions applied to realtime quantum machines; defaults to both.
    pub fn counter_choice(&self) -> CounterChoice {
        self.counter_acceptance.unwrap_or(CounterChoice::Both)
    }
}

impl MachineRef {
    pub fn resolve(&self, base_dir: &Path) -> Result<MachineDoc> {
        let doc = match (&self.builder, &self.file) {
            (Some(name), None) => build(name, &self.params)?,
            (None, Some(file)) => {
                if !self.params.is_empty() {
                    return Err(Error::parse("params only apply to builders"));
                }
                MachineDoc::load(&base_dir.join(file))?
            }
            _ => {
                return Err(Error::parse(
                    "machine reference needs exactly one of builder or file",
                ))
            }
        };
        if !self.compile {
            return Ok(doc);
        }
        match doc.machine {
            Machine::Dbca(m) => Ok(MachineDoc::new(
                Machine::Gfa(complement_witness_any(&m)?),
                doc.language,
            )),
            other => Err(Error::usage(format!(
                "only deterministic BCAs compile, got {}",
                other.kind()
            ))),
        }
    }
}

/// One input on which a claim fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimViolation {
    pub input: String,
    pub member: bool,
    /// Counter convention, for realtime quantum machines run under several.
    pub convention: Option<&'static str>,
    pub observed: String,
    pub expected: String,
}

impl fmt::Display for ClaimViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.member { "member" } else { "non-member" };
        write!(f, "{kind} {:?}", self.input)?;
        if let Some(c) = self.convention {
            write!(f, " [{c}]")?;
        }
        write!(f, ": got {}, expected {}", self.observed, self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub claim: String,
    pub inputs: usize,
    pub members: usize,
    pub conventions: Vec<&'static str>,
    pub violations: Vec<ClaimViolation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {} inputs ({} members)",
            self.claim, self.inputs, self.members
        )?;
        if self.conventions.len() > 1 {
            write!(f, " under {}", self.conventions.join(" and "))?;
        }
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

struct Judge {
    bound_type: BoundType,
    bound: Rational,
    bound_f64: f64,
    tol: f64,
}

impl Judge {
    /// `None` when `ev` satisfies the claim, else the expectation it misses.
    /// Exact evaluations are compared exactly; the tolerance applies to
    /// floating-point quantum runs only.
    fn check(&self, member: bool, ev: &Evaluation) -> Option<String> {
        let b = format_rational(&self.bound);
        match ev {
            Evaluation::Value(v) | Evaluation::Exact { accept: v, .. } => {
                let ok = match (self.bound_type, member) {
                    (BoundType::OneSidedNegative, true) => v.is_one(),
                    (BoundType::TwoSided, true) => *v >= Rational::one() - &self.bound,
                    (BoundType::OneSidedNegative | BoundType::TwoSided, false) => *v <= self.bound,
                    (BoundType::NondetMode, m) => v.is_positive() == m,
                    (BoundType::ExactZeroComplement, m) => v.is_zero() == m,
                };
                (!ok).then(|| self.expectation(member, &b, false))
            }
            Evaluation::Quantum(r) => {
                let x = r.accept;
                let ok = match (self.bound_type, member) {
                    (BoundType::OneSidedNegative, true) => x >= 1.0 - self.tol,
                    (BoundType::TwoSided, true) => x >= 1.0 - self.bound_f64 - self.tol,
                    (BoundType::OneSidedNegative | BoundType::TwoSided, false) => {
                        x <= self.bound_f64 + self.tol
                    }
                    (BoundType::NondetMode, m) => (x > self.tol) == m,
                    (BoundType::ExactZeroComplement, m) => (x.abs() <= self.tol) == m,
                };
                (!ok).then(|| self.expectation(member, &b, true))
            }
        }
    }

    fn expectation(&self, member: bool, b: &str, approx: bool) -> String {
        let tol = if approx {
            format!(" within {:e}", self.tol)
        } else {
            String::new()
        };
        match (self.bound_type, member) {
            (BoundType::OneSidedNegative, true) => format!("1{tol}"),
            (BoundType::TwoSided, true) => format!(">= 1 - {b}{tol}"),
            (BoundType::OneSidedNegative | BoundType::TwoSided, false) => format!("<= {b}{tol}"),
            (BoundType::NondetMode, true) => "> 0".into(),
            (BoundType::NondetMode, false) => "<= 0".into(),
            (BoundType::ExactZeroComplement, true) => "0".into(),
            (BoundType::ExactZeroComplement, false) => "nonzero".into(),
        }
    }
}

/// Sweeps every input of the claim's range and checks the bound.
pub fn verify_claim(claim: &Claim, base_dir: &Path) -> Result<VerifyReport> {
    let doc = claim.machine.resolve(base_dir)?;
    let machine = &doc.machine;
    let language: LanguageId = claim.language.parse()?;
    let bound = match (&claim.bound, claim.bound_type.needs_bound()) {
        (Some(b), _) => parse_rational(b)?,
        (None, true) => return Err(Error::parse(format!("claim {} needs a bound", claim.name))),
        (None, false) => Rational::zero(),
    };
    if claim.bound_type.needs_bound() {
        if !(bound.is_positive() && bound < Rational::one()) {
            return Err(Error::parse(format!(
                "bound of claim {} must lie in (0, 1)",
                claim.name
            )));
        }
        if matches!(machine, Machine::Gfa(_)) {
            return Err(Error::usage(
                "probability bounds do not apply to GFA values",
            ));
        }
    }
    let tol = claim.tolerance();
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::parse(
            "tolerance must be a finite non-negative number",
        ));
    }
    let judge = Judge {
        bound_type: claim.bound_type,
        bound_f64: bound.to_f64().unwrap_or(f64::NAN),
        bound,
        tol,
    };
    let alphabet = match &claim.alphabet {
        Some(symbols) => Alphabet::new(symbols.iter().cloned())?,
        None => machine.alphabet().clone(),
    };
    let conventions: Vec<CounterAcceptance> =
        effective_conventions(machine, claim.counter_choice());
    let labelled = conventions.len() > 1;
    let words = sweep_words(machine.alphabet(), &alphabet, claim.max_len)?;
    let results: Vec<(bool, Vec<ClaimViolation>)> = words
        .par_iter()
        .map(|(text, own, mapped)| {
            let member = oracle_member(&language, &alphabet, own);
            let mut found = Vec::new();
            for &c in &conventions {
                let ev = evaluate(machine, mapped, c, claim.step_cap)?;
                if let Some(expected) = judge.check(member, &ev) {
                    found.push(ClaimViolation {
                        input: text.clone(),
                        member,
                        convention: labelled.then(|| convention_name(c)),
                        observed: ev.render_accept(),
                        expected,
                    });
                }
            }
            Ok((member, found))
        })
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        claim: claim.name.clone(),
        inputs: words.len(),
        members: results.iter().filter(|(m, _)| *m).count(),
        conventions: conventions.iter().map(|&c| convention_name(c)).collect(),
        violations: results.into_iter().flat_map(|(_, v)| v).collect(),
    })
}

/// Loads and verifies a claim file.
pub fn verify_file(path: &Path) -> Result<VerifyReport> {
    let claim = Claim::load(path)?;
    verify_claim(&claim, path.parent().unwrap_or(Path::new(".")))
}
