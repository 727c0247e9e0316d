//! Named builders reachable from the command line and from claim files.

use std::collections::BTreeMap;

use crate::bca::{balance_dbca, build_lsay_nbca, eq_dbca};
use crate::constructions::{
    build_qft_interference, build_upal1_qfa, build_upal_qbca, build_upal_star_qbca,
    build_upal_t_qfa,
};
use crate::error::{Error, Result};
use crate::gfa::{build_lijk_gfa, build_lijk_plus_gfa, build_neq_gfa};
use crate::languages::{LanguageId, LanguageTag};
use crate::multihead::{
    binomial2, build_twin_dkfa, build_twin_p2fa, build_twin_pkfa, coin_pbca, simulate_bca_as_3fa,
    ProbBca,
};

use super::machine_file::{Machine, MachineDoc};

/// Builder name, required parameters, and a one-line description.
pub const BUILDERS: &[(&str, &[&str], &str)] = &[
    ("upal", &["n"], "realtime QBCA for a^n b^n"),
    ("upal_star", &["n"], "realtime QBCA for (a^n b^n)*"),
    ("upal1", &["n"], "one-way QFA for a^m b a^m"),
    (
        "upal_t",
        &["t", "n"],
        "one-way QFA for the t-block mirrored language",
    ),
    (
        "qft_interference",
        &["n"],
        "N paths meeting one QFT in a shared configuration",
    ),
    (
        "qft_staggered",
        &["n"],
        "N paths meeting one QFT at distinct counter values",
    ),
    (
        "lsay_nbca",
        &[],
        "nondeterministic BCA for mirrored b pairs",
    ),
    (
        "lijk_gfa",
        &[],
        "GFA positive exactly on a^i b^j c^k with distinct exponents",
    ),
    (
        "lijk_plus_gfa",
        &[],
        "GFA variant requiring nonempty blocks",
    ),
    (
        "neq_gfa",
        &["t"],
        "GFA positive exactly when every a_i count differs from b_i",
    ),
    (
        "twin_dkfa",
        &["k"],
        "deterministic k-head machine for twin(C(k,2))",
    ),
    (
        "twin_pkfa",
        &["k"],
        "probabilistic k-head machine for twin(2 C(k,2))",
    ),
    (
        "twin_p2fa",
        &["t"],
        "probabilistic 2-head machine for twin(t)",
    ),
    ("bal_dbca", &[], "deterministic BCA for |w|_a = |w|_b"),
    (
        "eq_dbca",
        &["t"],
        "deterministic t-counter BCA for equal a_i and b_i counts",
    ),
    (
        "bal_pbca",
        &[],
        "the balance machine as a probabilistic BCA",
    ),
    (
        "coin_pbca",
        &[],
        "probabilistic BCA incrementing with probability 1/2 per a",
    ),
    ("bal_3fa", &[], "three-head simulation of bal_pbca"),
    ("coin_3fa", &[], "three-head simulation of coin_pbca"),
];

/// Parses `key=value` arguments; keys are case-insensitive.
pub fn parse_params<S: AsRef<str>>(args: &[S]) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for arg in args {
        let arg = arg.as_ref();
        let (k, v) = arg
            .split_once('=')
            .ok_or_else(|| Error::usage(format!("expected key=value, got {arg:?}")))?;
        let v = v
            .trim()
            .parse()
            .map_err(|_| Error::usage(format!("parameter {k} must be a non-negative integer")))?;
        if out.insert(k.trim().to_lowercase(), v).is_some() {
            return Err(Error::usage(format!("parameter {k} given twice")));
        }
    }
    Ok(out)
}

/// Runs the builder `name` with `params`.
pub fn build(name: &str, params: &BTreeMap<String, usize>) -> Result<MachineDoc> {
    let lname = name.to_lowercase();
    let (_, required, _) = BUILDERS
        .iter()
        .find(|(n, _, _)| *n == lname)
        .ok_or_else(|| Error::usage(format!("unknown builder {name:?}")))?;
    let params: BTreeMap<String, usize> =
        params.iter().map(|(k, v)| (k.to_lowercase(), *v)).collect();
    if let Some(extra) = params.keys().find(|k| !required.contains(&k.as_str())) {
        return Err(Error::usage(format!(
            "builder {lname} takes no parameter {extra:?}"
        )));
    }
    let get = |key: &str| -> Result<usize> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::usage(format!("builder {lname} needs parameter {key}")))
    };
    let lang = |tag| Some(LanguageId::plain(tag));
    let lang_t = |tag, t| LanguageId::new(tag, Some(t)).map(Some);
    let (machine, language) = match lname.as_str() {
        "upal" => (
            Machine::Quantum(build_upal_qbca(get("n")?)?),
            lang(LanguageTag::Upal),
        ),
        "upal_star" => (
            Machine::Quantum(build_upal_star_qbca(get("n")?)?),
            lang(LanguageTag::UpalStar),
        ),
        "upal1" => (
            Machine::Quantum(build_upal1_qfa(get("n")?)?),
            lang_t(LanguageTag::UpalT, 1)?,
        ),
        "upal_t" => {
            let t = get("t")?;
            (
                Machine::Quantum(build_upal_t_qfa(t, get("n")?)?),
                lang_t(LanguageTag::UpalT, t)?,
            )
        }
        "qft_interference" => (
            Machine::Quantum(build_qft_interference(get("n")?, false)?),
            None,
        ),
        "qft_staggered" => (
            Machine::Quantum(build_qft_interference(get("n")?, true)?),
            None,
        ),
        "lsay_nbca" => (Machine::Nbca(build_lsay_nbca()), lang(LanguageTag::Say)),
        "lijk_gfa" => (Machine::Gfa(build_lijk_gfa()), lang(LanguageTag::Ijk)),
        "lijk_plus_gfa" => (Machine::Gfa(build_lijk_plus_gfa()), None),
        "neq_gfa" => {
            let t = get("t")?;
            (
                Machine::Gfa(build_neq_gfa(t)?),
                lang_t(LanguageTag::Neq, t)?,
            )
        }
        "twin_dkfa" => {
            let k = get("k")?;
            (
                Machine::Pkfa(build_twin_dkfa(k)?),
                lang_t(LanguageTag::Twin, binomial2(k))?,
            )
        }
        "twin_pkfa" => {
            let k = get("k")?;
            (
                Machine::Pkfa(build_twin_pkfa(k)?),
                lang_t(LanguageTag::Twin, 2 * binomial2(k))?,
            )
        }
        "twin_p2fa" => {
            let t = get("t")?;
            (
                Machine::Pkfa(build_twin_p2fa(t)?),
                lang_t(LanguageTag::Twin, t)?,
            )
        }
        "bal_dbca" => (Machine::Dbca(balance_dbca()), lang(LanguageTag::Bal)),
        "eq_dbca" => {
            let t = get("t")?;
            (Machine::Dbca(eq_dbca(t)?), lang_t(LanguageTag::Eq, t)?)
        }
        "bal_pbca" => (
            Machine::Pbca(ProbBca::from_dbca(&balance_dbca())?),
            lang(LanguageTag::Bal),
        ),
        "coin_pbca" => (Machine::Pbca(coin_pbca()), None),
        "bal_3fa" => {
            let m = simulate_bca_as_3fa(&ProbBca::from_dbca(&balance_dbca())?)?;
            (Machine::Pkfa(m), lang(LanguageTag::Bal))
        }
        "coin_3fa" => (Machine::Pkfa(simulate_bca_as_3fa(&coin_pbca())?), None),
        _ => unreachable!("every listed builder is handled"),
    };
    Ok(MachineDoc::new(machine, language))
}
