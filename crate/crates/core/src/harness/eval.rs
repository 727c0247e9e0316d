//! Kind-independent evaluation, single runs and exhaustive sweeps.

use std::fmt::Write as _;
use std::str::FromStr;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::bca::{run_dbca_word, run_nbca_word};
use crate::error::{Error, Result};
use crate::languages::LanguageId;
use crate::multihead::{run_pkfa_word, run_rtp1bca_word};
use crate::numerics::{format_rational, Rational, DROP_THRESHOLD};
use crate::qruntime::{run_quantum_word, CounterAcceptance, QMode, RunResult};

use super::machine_file::Machine;

/// Longest sweep accepted without an explicit override.
pub const MAX_SWEEP_LEN: usize = 16;

/// Which counter-acceptance conventions to apply to realtime quantum machines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterChoice {
    #[default]
    RequireZero,
    Ignore,
    Both,
}

impl CounterChoice {
    pub fn conventions(self) -> Vec<CounterAcceptance> {
        match self {
            CounterChoice::RequireZero => vec![CounterAcceptance::RequireZero],
            CounterChoice::Ignore => vec![CounterAcceptance::Ignore],
            CounterChoice::Both => vec![CounterAcceptance::RequireZero, CounterAcceptance::Ignore],
        }
    }
}

impl FromStr for CounterChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "require-zero" => Ok(CounterChoice::RequireZero),
            "ignore" => Ok(CounterChoice::Ignore),
            "both" => Ok(CounterChoice::Both),
            _ => Err(Error::usage(format!(
                "unknown counter-acceptance convention {s:?}"
            ))),
        }
    }
}

pub fn convention_name(c: CounterAcceptance) -> &'static str {
    match c {
        CounterAcceptance::RequireZero => "require-zero",
        CounterAcceptance::Ignore => "ignore",
    }
}

/// Conventions that actually differ for `machine`: only realtime quantum
/// machines measure counters.
pub fn effective_conventions(machine: &Machine, choice: CounterChoice) -> Vec<CounterAcceptance> {
    match machine {
        Machine::Quantum(q) if matches!(q.mode(), QMode::Realtime { .. }) => choice.conventions(),
        _ => vec![CounterAcceptance::RequireZero],
    }
}

/// Outcome of running one machine on one word.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    /// GFA value.
    Value(Rational),
    /// Exact acceptance probability of a classical machine.
    Exact {
        accept: Rational,
        reject: Rational,
        pending: Rational,
    },
    Quantum(RunResult),
}

impl Evaluation {
    fn exact_bool(accepted: bool) -> Self {
        let (a, r) = if accepted {
            (Rational::one(), Rational::zero())
        } else {
            (Rational::zero(), Rational::one())
        };
        Evaluation::Exact {
            accept: a,
            reject: r,
            pending: Rational::zero(),
        }
    }

    /// Accept probability or GFA value, rendered for reports.
    pub fn render_accept(&self) -> String {
        match self {
            Evaluation::Value(v) | Evaluation::Exact { accept: v, .. } => format_rational(v),
            Evaluation::Quantum(r) => format_decimal(r.accept),
        }
    }

    /// `(accept, reject, pending)` columns; a GFA fills only the first.
    pub fn columns(&self) -> [String; 3] {
        match self {
            Evaluation::Value(v) => [format_rational(v), String::new(), String::new()],
            Evaluation::Exact {
                accept,
                reject,
                pending,
            } => [
                format_rational(accept),
                format_rational(reject),
                format_rational(pending),
            ],
            Evaluation::Quantum(r) => [
                format_decimal(r.accept),
                format_decimal(r.reject),
                format_decimal(r.pending),
            ],
        }
    }
}

/// Twelve significant digits with trailing zeros removed; values below the
/// drop threshold print as `0`.
pub fn format_decimal(x: f64) -> String {
    if x.abs() < DROP_THRESHOLD {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let precision = (11 - exponent).max(0) as usize;
    let text = format!("{x:.precision$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

/// Runs `machine` on `word`; `counters` only affects realtime quantum machines.
pub fn evaluate(
    machine: &Machine,
    word: &[usize],
    counters: CounterAcceptance,
    step_cap: Option<usize>,
) -> Result<Evaluation> {
    Ok(match machine {
        Machine::Gfa(g) => Evaluation::Value(g.value(word)?),
        Machine::Quantum(q) => Evaluation::Quantum(run_quantum_word(q, word, counters, step_cap)?),
        Machine::Dbca(m) => {
            check_word(machine, word)?;
            Evaluation::exact_bool(run_dbca_word(m, word).accepted)
        }
        Machine::Nbca(m) => {
            check_word(machine, word)?;
            Evaluation::exact_bool(run_nbca_word(m, word))
        }
        Machine::Pbca(m) => {
            let accept = run_rtp1bca_word(m, word)?;
            Evaluation::Exact {
                reject: Rational::one() - &accept,
                accept,
                pending: Rational::zero(),
            }
        }
        Machine::Pkfa(m) => {
            let r = run_pkfa_word(m, word, step_cap)?;
            Evaluation::Exact {
                accept: r.accept,
                reject: r.reject,
                pending: r.residue,
            }
        }
    })
}

fn check_word(machine: &Machine, word: &[usize]) -> Result<()> {
    match word.iter().position(|&s| s >= machine.alphabet().len()) {
        Some(position) => Err(Error::InvalidSymbol {
            position,
            found: format!("#{}", word[position]),
        }),
        None => Ok(()),
    }
}

/// Text printed by the `run` command.
pub fn run_report(
    machine: &Machine,
    input: &str,
    choice: CounterChoice,
    step_cap: Option<usize>,
) -> Result<String> {
    let word = machine.alphabet().tokenize(input)?;
    let conventions = effective_conventions(machine, choice);
    let labelled = conventions.len() > 1;
    let mut out = String::new();
    for c in conventions {
        let prefix = if labelled {
            format!("[{}] ", convention_name(c))
        } else {
            String::new()
        };
        match evaluate(machine, &word, c, step_cap)? {
            Evaluation::Value(v) => writeln!(out, "{prefix}{}", format_rational(&v)),
            ev @ Evaluation::Exact { .. } => {
                let [a, r, p] = ev.columns();
                writeln!(
                    out,
                    "{prefix}accept {a}\n{prefix}reject {r}\n{prefix}pending {p}"
                )
            }
            Evaluation::Quantum(r) => writeln!(
                out,
                "{prefix}accept {}\n{prefix}reject {}\n{prefix}pending {}\n{prefix}steps {}",
                format_decimal(r.accept),
                format_decimal(r.reject),
                format_decimal(r.pending),
                r.steps
            ),
        }
        .expect("writing to a String");
    }
    Ok(out)
}

/// One CSV row of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub input: String,
    pub accept: String,
    pub reject: String,
    pub pending: String,
    /// Oracle membership, when a language is known.
    pub member: Option<bool>,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Symbols to enumerate; defaults to the machine alphabet.
    pub alphabet: Option<Alphabet>,
    pub max_len: usize,
    pub language: Option<LanguageId>,
    pub counters: CounterAcceptance,
    pub step_cap: Option<usize>,
    /// Allows `max_len` beyond [`MAX_SWEEP_LEN`].
    pub force: bool,
}

/// Words of length at most `max_len` over `alphabet` as `(rendering, word,
/// word re-encoded over the machine alphabet)`.
pub fn sweep_words(
    machine_alphabet: &Alphabet,
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<Vec<(String, Word, Word)>> {
    let map: Vec<usize> =
        alphabet.symbols().iter().map(|s| machine_alphabet.require(s)).collect::<Result<Vec<_>>>().map_err(|_| {
            Error::usage(format!("sweep alphabet {alphabet} is not contained in the machine alphabet {machine_alphabet}"))
        })?;
    Ok(alphabet
        .words_up_to(max_len)
        .map(|w| {
            let mapped = w.iter().map(|&s| map[s]).collect();
            (alphabet.render(&w), w, mapped)
        })
        .collect())
}

/// Membership of a rendered sweep word; symbols outside the language
/// alphabet make the word a non-member.
pub fn oracle_member(language: &LanguageId, alphabet: &Alphabet, word: &[usize]) -> bool {
    let lang_alphabet = language.alphabet();
    let mapped: Option<Vec<usize>> = word
        .iter()
        .map(|&s| lang_alphabet.index_of(alphabet.symbol(s)))
        .collect();
    mapped.is_some_and(|w| language.contains_word(&w))
}

pub fn sweep(machine: &Machine, opts: &SweepOptions) -> Result<Vec<SweepRow>> {
    if opts.max_len > MAX_SWEEP_LEN && !opts.force {
        return Err(Error::usage(format!(
            "max length {} exceeds {MAX_SWEEP_LEN}; pass --force to run it",
            opts.max_len
        )));
    }
    let alphabet = opts
        .alphabet
        .clone()
        .unwrap_or_else(|| machine.alphabet().clone());
    sweep_words(machine.alphabet(), &alphabet, opts.max_len)?
        .par_iter()
        .map(|(text, own, mapped)| {
            let [accept, reject, pending] =
                evaluate(machine, mapped, opts.counters, opts.step_cap)?.columns();
            let member = opts
                .language
                .as_ref()
                .map(|l| oracle_member(l, &alphabet, own));
            Ok(SweepRow {
                input: text.clone(),
                accept,
                reject,
                pending,
                member,
            })
        })
        .collect()
}

pub const CSV_HEADER: &str = "input,accept,reject,pending,member";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let member = match r.member {
            Some(true) => "1",
            Some(false) => "0",
            None => "",
        };
        writeln!(
            out,
            "{},{},{},{},{member}",
            csv_field(&r.input),
            r.accept,
            r.reject,
            r.pending
        )
        .expect("writing to a String");
    }
    out
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_have_twelve_significant_digits() {
        assert_eq!(format_decimal(1.0), "1");
        assert_eq!(format_decimal(0.999_999_999_999_999), "1");
        assert_eq!(format_decimal(0.5), "0.5");
        assert_eq!(format_decimal(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_decimal(1e-17), "0");
        assert_eq!(format_decimal(-0.25), "-0.25");
    }

    #[test]
    fn counter_choice_parses_both_spellings() {
        assert_eq!(
            "require-zero".parse::<CounterChoice>().unwrap(),
            CounterChoice::RequireZero
        );
        assert_eq!(
            "require_zero".parse::<CounterChoice>().unwrap(),
            CounterChoice::RequireZero
        );
        assert_eq!(
            "both".parse::<CounterChoice>().unwrap().conventions().len(),
            2
        );
        assert!("zero".parse::<CounterChoice>().is_err());
    }
}
