//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num::{One, Signed, Zero};
use rayon::prelude::*;

use qautomata::alphabet::{Alphabet, Word};
use qautomata::bca::{
    balance_dbca, build_lsay_nbca, complement_witness_any, eq_dbca, run_nbca_word,
};
use qautomata::constructions::{
    build_qft_interference, build_upal1_qfa, build_upal_qbca, build_upal_star_qbca,
    build_upal_t_qfa,
};
use qautomata::gfa::build_lijk_gfa;
use qautomata::harness::{
    build, check_wf_sweep, parse_params, sweep, sweep_csv, MachineDoc, SweepOptions, BUILDERS,
};
use qautomata::languages::{LanguageId, LanguageTag};
use qautomata::multihead::{
    build_twin_p2fa, build_twin_pkfa, coin_pbca, run_pkfa_word, run_rtp1bca_word,
    simulate_bca_as_3fa, OneWayKfa, ProbBca,
};
use qautomata::numerics::Rational;
use qautomata::qruntime::{
    run_oneway_word, run_realtime_word, Config, CounterAcceptance, QMachineSpec, RealtimeRun,
};

const TOL: f64 = 1e-9;
const CONVENTIONS: [CounterAcceptance; 2] =
    [CounterAcceptance::RequireZero, CounterAcceptance::Ignore];

type Outcome = Result<String, String>;

fn words(alphabet: &str, max_len: usize) -> Vec<Word> {
    Alphabet::from_chars(alphabet)
        .unwrap()
        .words_up_to(max_len)
        .collect()
}

fn render(alphabet: &str, w: &[usize]) -> String {
    Alphabet::from_chars(alphabet).unwrap().render(w)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Members accepted with probability at least `1 − TOL`, non-members at
/// most `bound + TOL`; returns the worst non-member acceptance.
fn one_sided(
    lang: LanguageId,
    max_len: usize,
    bound: f64,
    accept: impl Fn(&[usize]) -> Result<f64, String> + Sync,
) -> Result<f64, String> {
    let ws = words("ab", max_len);
    let results: Vec<(bool, f64, String)> = ws
        .par_iter()
        .map(|w| Ok((lang.contains_word(w), accept(w)?, render("ab", w))))
        .collect::<Result<_, String>>()?;
    let mut worst: f64 = 0.0;
    for (member, p, text) in results {
        if member {
            ensure(p >= 1.0 - TOL, || {
                format!("member {text:?} accepted with {p}")
            })?;
        } else {
            ensure(p <= bound + TOL, || {
                format!("non-member {text:?} accepted with {p} > {bound}")
            })?;
            worst = worst.max(p);
        }
    }
    // Adding 0.0 turns a -0.0 maximum into 0.0 for display.
    Ok(worst + 0.0)
}

fn realtime(spec: &QMachineSpec, w: &[usize], c: CounterAcceptance) -> Result<f64, String> {
    run_realtime_word(spec, w, c)
        .map(|r| r.accept)
        .map_err(|e| e.to_string())
}

fn oneway(spec: &QMachineSpec, w: &[usize]) -> Result<f64, String> {
    let r = run_oneway_word(spec, w, None).map_err(|e| e.to_string())?;
    ensure(r.halted, || {
        format!("run did not halt, pending {}", r.pending)
    })?;
    Ok(r.accept)
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn well_formedness() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        let machines = [
            ("upal", build_upal_qbca(n)),
            ("upal_star", build_upal_star_qbca(n)),
            ("upal1", build_upal1_qfa(n)),
            ("upal_t(2)", build_upal_t_qfa(2, n)),
        ];
        for (name, spec) in machines {
            let report = check_wf_sweep(&spec.map_err(err)?, 6, TOL);
            ensure(report.passed(), || format!("{name} N={n}: {report}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} machines well-formed on all 127 inputs of length <= 6"
    ))
}

fn upal_bound() -> Outcome {
    let mut worst = Vec::new();
    for n in 2..=4 {
        let spec = build_upal_qbca(n).map_err(err)?;
        for c in CONVENTIONS {
            let w = one_sided(
                LanguageId::plain(LanguageTag::Upal),
                12,
                1.0 / n as f64,
                |w| realtime(&spec, w, c),
            )
            .map_err(|e| format!("N={n} {c:?}: {e}"))?;
            worst.push(format!("N={n} {c:?} {w:.4}"));
        }
    }
    Ok(format!(
        "8191 inputs per run; worst non-member: {}",
        worst.join(", ")
    ))
}

fn upal_star_bound() -> Outcome {
    let mut worst = Vec::new();
    for n in 2..=3 {
        let spec = build_upal_star_qbca(n).map_err(err)?;
        for c in CONVENTIONS {
            let w = one_sided(
                LanguageId::plain(LanguageTag::UpalStar),
                11,
                1.0 / n as f64,
                |w| realtime(&spec, w, c),
            )
            .map_err(|e| format!("N={n} {c:?}: {e}"))?;
            worst.push(format!("N={n} {c:?} {w:.4}"));
        }
    }
    Ok(format!(
        "4095 inputs per run; worst non-member: {}",
        worst.join(", ")
    ))
}

fn upal1_bound() -> Outcome {
    let mut worst = Vec::new();
    for n in 2..=4 {
        let spec = build_upal1_qfa(n).map_err(err)?;
        let w = one_sided(
            LanguageId::with_t(LanguageTag::UpalT, 1),
            12,
            1.0 / n as f64,
            |w| oneway(&spec, w),
        )
        .map_err(|e| format!("N={n}: {e}"))?;
        worst.push(format!("N={n} {w:.4}"));
        for m in 0..=10usize {
            for k in 0..=10 - m {
                if m == k {
                    continue;
                }
                let word: Vec<usize> = [vec![0; m], vec![1], vec![0; k]].concat();
                let p = oneway(&spec, &word)?;
                ensure((p - 1.0 / n as f64).abs() <= TOL, || {
                    format!("N={n}: a^{m} b a^{k} accepted with {p}, expected 1/{n}")
                })?;
            }
        }
    }
    Ok(format!(
        "worst non-member: {}; a^m b a^n (m != n, m+n <= 10) at exactly 1/N",
        worst.join(", ")
    ))
}

fn upal_t_bound() -> Outcome {
    let mut worst = Vec::new();
    for n in 2..=3 {
        let spec = build_upal_t_qfa(2, n).map_err(err)?;
        let w = one_sided(
            LanguageId::with_t(LanguageTag::UpalT, 2),
            12,
            1.0 / n as f64,
            |w| oneway(&spec, w),
        )
        .map_err(|e| format!("t=2 N={n}: {e}"))?;
        worst.push(format!("N={n} {w:.4}"));
        let t1 = build_upal_t_qfa(1, n).map_err(err)?;
        let reference = build_upal1_qfa(n).map_err(err)?;
        for w in words("ab", 8) {
            let (p, q) = (oneway(&t1, &w)?, oneway(&reference, &w)?);
            ensure((p - q).abs() <= TOL, || {
                format!("t=1 N={n} on {:?}: {p} vs {q}", render("ab", &w))
            })?;
        }
    }
    Ok(format!(
        "t=2 worst non-member: {}; t=1 matches the single-block machine on 511 inputs",
        worst.join(", ")
    ))
}

fn lijk() -> Outcome {
    let g = build_lijk_gfa();
    let lang = LanguageId::plain(LanguageTag::Ijk);
    let ws = words("abc", 8);
    ws.par_iter().try_for_each(|w| {
        let v = g.value(w).map_err(err)?;
        ensure(v.is_positive() == lang.contains_word(w), || {
            format!(
                "{:?}: value {v} disagrees with membership",
                render("abc", w)
            )
        })
    })?;
    for i in 1..=5i64 {
        for j in 1..=5i64 {
            for k in 1..=5i64 {
                let w: Vec<usize> = [
                    vec![0; i as usize],
                    vec![1; j as usize],
                    vec![2; k as usize],
                ]
                .concat();
                let expected = (i - j).pow(2) * (i - k).pow(2) * (j - k).pow(2);
                let v = g.value(&w).map_err(err)?;
                ensure(v == Rational::from_integer(expected.into()), || {
                    format!("a^{i} b^{j} c^{k}: value {v}, expected {expected}")
                })?;
            }
        }
    }
    Ok(format!(
        "sign matches membership on {} inputs; closed form on 125 block words",
        ws.len()
    ))
}

fn compiled_bca() -> Outcome {
    let cases = [
        (
            "balance",
            balance_dbca(),
            LanguageId::plain(LanguageTag::Bal),
        ),
        (
            "two-pair equality",
            eq_dbca(2).map_err(err)?,
            LanguageId::with_t(LanguageTag::Eq, 2),
        ),
    ];
    let mut summary = Vec::new();
    for (name, m, lang) in cases {
        let g = complement_witness_any(&m).map_err(err)?;
        let ws: Vec<Word> = m.alphabet().words_up_to(8).collect();
        ws.par_iter().try_for_each(|w| {
            let v = g.value(w).map_err(err)?;
            ensure(
                v.is_zero() == lang.contains_word(w) && !v.is_negative(),
                || format!("{name} on {:?}: value {v}", m.alphabet().render(w)),
            )
        })?;
        summary.push(format!(
            "{name} ({} states, {} inputs)",
            g.states(),
            ws.len()
        ));
    }
    Ok(format!("zero exactly on members: {}", summary.join(", ")))
}

fn lsay() -> Outcome {
    let m = build_lsay_nbca();
    let lang = LanguageId::plain(LanguageTag::Say);
    let ws = words("ab", 12);
    ws.par_iter().try_for_each(|w| {
        ensure(run_nbca_word(&m, w) == lang.contains_word(w), || {
            format!("disagreement on {:?}", render("ab", w))
        })
    })?;
    Ok(format!("agrees with the oracle on {} inputs", ws.len()))
}

fn three_head_simulation() -> Outcome {
    let cases = [
        ("balance", ProbBca::from_dbca(&balance_dbca()).map_err(err)?),
        ("coin", coin_pbca()),
    ];
    let mut total = 0;
    for (name, m) in cases {
        let sim = simulate_bca_as_3fa(&m).map_err(err)?;
        let ws: Vec<Word> = m.alphabet().words_up_to(8).collect();
        ws.par_iter().try_for_each(|w| {
            let r = run_pkfa_word(&sim, w, None).map_err(err)?;
            let expected = run_rtp1bca_word(&m, w).map_err(err)?;
            ensure(r.accept == expected && r.residue.is_zero(), || {
                format!(
                    "{name} on {:?}: {} vs {expected}",
                    m.alphabet().render(w),
                    r.accept
                )
            })
        })?;
        total += ws.len();
    }
    Ok(format!("exact equality on {total} inputs"))
}

fn twin_bound(m: &OneWayKfa, lang: LanguageId, bound: Rational) -> Outcome {
    let ws = words("abc", 9);
    let results: Vec<(bool, Rational)> = ws
        .par_iter()
        .map(|w| {
            let r = run_pkfa_word(m, w, None).map_err(err)?;
            ensure(r.residue.is_zero(), || {
                format!("{:?} left residue", render("abc", w))
            })?;
            let member = lang.contains_word(w);
            if member {
                ensure(r.accept.is_one(), || {
                    format!("member {:?} accepted with {}", render("abc", w), r.accept)
                })?;
            } else {
                ensure(r.accept <= bound, || {
                    format!(
                        "non-member {:?} accepted with {}",
                        render("abc", w),
                        r.accept
                    )
                })?;
            }
            Ok((member, r.accept))
        })
        .collect::<Result<_, String>>()?;
    let members = results.iter().filter(|(m, _)| *m).count();
    let worst = results
        .iter()
        .filter(|(m, _)| !*m)
        .map(|(_, p)| p.clone())
        .max()
        .unwrap_or_default();
    Ok(format!(
        "{} inputs, {members} members at exactly 1, worst non-member {worst}",
        ws.len()
    ))
}

fn twin_pkfa() -> Outcome {
    twin_bound(
        &build_twin_pkfa(2).map_err(err)?,
        LanguageId::with_t(LanguageTag::Twin, 2),
        Rational::new(1.into(), 2.into()),
    )
}

fn twin_p2fa() -> Outcome {
    twin_bound(
        &build_twin_p2fa(2).map_err(err)?,
        LanguageId::with_t(LanguageTag::Twin, 2),
        Rational::new(1.into(), 2.into()),
    )
}

fn qft_suite() -> Outcome {
    for n in 2..=6usize {
        for staggered in [false, true] {
            let spec = build_qft_interference(n, staggered).map_err(err)?;
            let mut run = RealtimeRun::new(&spec, &[0]).map_err(err)?;
            run.step().map_err(err)?;
            run.step().map_err(err)?;
            let diag = run.state().diagonal();
            let prob = |l: usize, c: i64| {
                let q = spec.state_index(&format!("r{l}")).expect("target state");
                diag.get(&Config::new(q, [c])).copied().unwrap_or(0.0)
            };
            if staggered {
                for j in 1..=n as i64 {
                    for l in 1..=n {
                        let p = prob(l, j);
                        let expected = 1.0 / (n * n) as f64;
                        ensure((p - expected).abs() <= TOL, || {
                            format!("N={n} staggered: target r{l} at counter {j} carries {p}")
                        })?;
                    }
                }
            } else {
                let p = prob(n, 0);
                ensure((p - 1.0).abs() <= TOL, || {
                    format!("N={n}: distinguished target carries {p}")
                })?;
            }
        }
    }
    Ok("N = 2..6: shared configuration collapses onto the distinguished target; distinct ones give 1/N^2 each".into())
}

fn builder_param_sets() -> Vec<(&'static str, Vec<String>)> {
    let sets = |name: &'static str, list: &[&[&str]]| -> Vec<(&'static str, Vec<String>)> {
        list.iter()
            .map(|p| (name, p.iter().map(|s| s.to_string()).collect()))
            .collect()
    };
    let mut out = Vec::new();
    for (name, params, _) in BUILDERS {
        out.extend(match (*name, params.len()) {
            ("upal_t", _) => sets(name, &[&["t=1", "N=2"], &["t=2", "N=2"], &["t=2", "N=3"]]),
            ("twin_dkfa" | "twin_pkfa", _) => sets(name, &[&["k=2"], &["k=3"]]),
            ("twin_p2fa", _) => sets(name, &[&["t=1"], &["t=2"], &["t=3"]]),
            ("neq_gfa" | "eq_dbca", _) => sets(name, &[&["t=1"], &["t=2"]]),
            (_, 0) => sets(name, &[&[]]),
            (_, _) => sets(name, &[&["N=2"], &["N=3"], &["N=4"]]),
        });
    }
    out
}

fn infrastructure() -> Outcome {
    let mut docs = Vec::new();
    for (name, params) in builder_param_sets() {
        docs.push((
            format!("{name} {}", params.join(" ")),
            build(name, &parse_params(&params).map_err(err)?).map_err(err)?,
        ));
    }
    for (name, t) in [("bal", None), ("eq:2", Some(2))] {
        let m = match t {
            None => balance_dbca(),
            Some(t) => eq_dbca(t).map_err(err)?,
        };
        let g = complement_witness_any(&m).map_err(err)?;
        docs.push((
            format!("compiled {name}"),
            MachineDoc::new(qautomata::harness::Machine::Gfa(g), name.parse().ok()),
        ));
    }
    for (label, doc) in &docs {
        let first = doc.to_json().map_err(err)?;
        let reloaded = MachineDoc::from_json(&first).map_err(|e| format!("{label}: {e}"))?;
        ensure(&reloaded == doc, || {
            format!("{label}: reloaded machine differs")
        })?;
        ensure(reloaded.to_json().map_err(err)? == first, || {
            format!("{label}: round trip changed bytes")
        })?;
    }

    let upal = build("upal", &parse_params(&["N=3"]).map_err(err)?).map_err(err)?;
    let opts = SweepOptions {
        max_len: 8,
        language: upal.language,
        ..Default::default()
    };
    let a = sweep_csv(&sweep(&upal.machine, &opts).map_err(err)?);
    let b = sweep_csv(&sweep(&upal.machine, &opts).map_err(err)?);
    ensure(a == b, || "sweep output differs between runs".into())?;

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("claims");
    let mut claims: Vec<_> = std::fs::read_dir(&dir)
        .map_err(err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    claims.sort();
    let status = Command::new(env!("CARGO_BIN_EXE_qautomata"))
        .arg("verify")
        .args(&claims)
        .output()
        .map_err(err)?;
    ensure(status.status.code() == Some(0), || {
        format!(
            "verify exited with {:?}:\n{}",
            status.status.code(),
            String::from_utf8_lossy(&status.stdout)
        )
    })?;
    Ok(format!(
        "{} builder outputs round-trip byte-identically; sweep bytes stable; {} bundled claims verify",
        docs.len(),
        claims.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (
            "well-formedness of the quantum constructions",
            well_formedness,
        ),
        ("upal realtime machine, one-sided bound 1/N", upal_bound),
        ("upal star machine, one-sided bound 1/N", upal_star_bound),
        (
            "single-block one-way machine, bound and sharp value 1/N",
            upal1_bound,
        ),
        (
            "t-block one-way machine, bound 1/N and t=1 equivalence",
            upal_t_bound,
        ),
        ("ijk GFA positivity and closed form", lijk),
        ("compiled BCA complement witnesses", compiled_bca),
        ("say nondeterministic BCA against its oracle", lsay),
        (
            "three-head simulation of probabilistic BCAs",
            three_head_simulation,
        ),
        ("twin k-head machine, bound 1/2", twin_pkfa),
        ("twin two-head machine, bound 1 - 1/t", twin_p2fa),
        ("QFT interference suite", qft_suite),
        (
            "infrastructure: round trips, sweep determinism, bundled claims",
            infrastructure,
        ),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
