//! Builders for the quantum witness machines.
//!
//! All of them share one idea: split into `N` equal-amplitude paths whose
//! counters or head timings coincide exactly on members, then apply an
//! `N`-way QFT so that only the distinguished target survives when the paths
//! meet, and every target keeps weight `1/N²` when they do not.

use crate::alphabet::{Alphabet, TapeSymbol};
use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::qruntime::{Amp, MoveTag, Outcome, QMachineSpec, QMode, SpecBuilder};

const A: TapeSymbol = TapeSymbol::Letter(0);
const B: TapeSymbol = TapeSymbol::Letter(1);
const LEFT: TapeSymbol = TapeSymbol::LeftEnd;
const RIGHT: TapeSymbol = TapeSymbol::RightEnd;

/// One entry `source → amp · target` of a QFT fragment.
#[derive(Clone, Debug, PartialEq)]
pub struct QftEntry {
    pub source: usize,
    pub target: usize,
    pub amp: Amp,
}

/// Maps `sources[j-1]` to `(1/√N) Σ_l e^{2πi·j·l/N} targets[l-1]`; the last
/// target is the distinguished one.
pub fn qft_block(sources: &[usize], targets: &[usize], n: usize) -> Result<Vec<QftEntry>> {
    if n < 2 || sources.len() != n || targets.len() != n {
        return Err(Error::construction(format!(
            "QFT block needs {n} sources and targets (n >= 2), got {} and {}",
            sources.len(),
            targets.len()
        )));
    }
    Ok((1..=n)
        .flat_map(|j| {
            (1..=n).map(move |l| QftEntry {
                source: sources[j - 1],
                target: targets[l - 1],
                amp: Amp::qft(n, j as i64, l as i64),
            })
        })
        .collect())
}

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").expect("static alphabet")
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::usage(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

/// Shared skeleton of the realtime machines: main path, `path_j`, and the
/// final QFT on `$`.
struct UpalSkeleton {
    b: SpecBuilder,
    q: Vec<usize>,
    q_prime: Vec<usize>,
    w1: usize,
}

fn upal_skeleton(n: usize, registers: &[&str], rejecting_paths: usize) -> UpalSkeleton {
    let mut b = SpecBuilder::new(QMode::Realtime { counters: 1 }, ab());
    let q0 = b.state("q0", MoveTag::Stay, false);
    let a0 = b.state("a0", MoveTag::Stay, true);
    let r0 = b.state("r0", MoveTag::Stay, false);
    let mut q = Vec::new();
    let mut q_prime = Vec::new();
    let mut p = Vec::new();
    for j in 1..=n {
        q.push(b.state(format!("q{j}"), MoveTag::Stay, false));
        q_prime.push(b.state(format!("q'{j}"), MoveTag::Stay, false));
        p.push(b.state(format!("p{j}"), MoveTag::Stay, j == n));
        if j <= rejecting_paths {
            b.state(format!("r{j}"), MoveTag::Stay, false);
        }
    }
    let regs: Vec<usize> = registers
        .iter()
        .map(|r| b.register(*r, Outcome::Neutral))
        .collect();
    let (w1, w2, w_r) = (regs[0], regs[1], *regs.last().expect("registers"));

    b.add(q0, LEFT, Amp::one(), q0, vec![0], w1);
    for j in 1..=n {
        b.add(q0, A, Amp::inv_sqrt(n), q[j - 1], vec![j as i64], w1);
    }
    b.add(r0, A, Amp::one(), r0, vec![0], w_r);
    b.add(q0, B, Amp::one(), r0, vec![0], w1);
    b.add(r0, B, Amp::one(), r0, vec![0], w_r);
    b.add(q0, RIGHT, Amp::one(), a0, vec![0], w1);
    b.add(r0, RIGHT, Amp::one(), r0, vec![0], w_r);

    for j in 1..=n {
        let (qj, qpj, ji) = (q[j - 1], q_prime[j - 1], j as i64);
        b.add(qj, A, Amp::one(), qj, vec![ji], w2);
        b.add(qj, B, Amp::one(), qpj, vec![-ji], w1);
        b.add(qpj, B, Amp::one(), qpj, vec![-ji], w2);
        b.add(qj, RIGHT, Amp::one(), qj, vec![0], w1);
        for e in qft_block(&q_prime, &p, n)
            .expect("sizes match")
            .into_iter()
            .filter(|e| e.source == qpj)
        {
            b.add(qpj, RIGHT, e.amp, e.target, vec![0], w1);
        }
    }
    for j in 1..=rejecting_paths {
        let r = b.state(format!("r{j}"), MoveTag::Stay, false);
        for sym in [A, B, RIGHT] {
            b.add(r, sym, Amp::one(), r, vec![0], w_r);
        }
    }
    UpalSkeleton { b, q, q_prime, w1 }
}

/// Realtime one-counter machine for `{aⁿbⁿ}` with negative one-sided error `1/N`.
///
/// States `q₀, a₀, r₀` and `q_j, q'_j, p_j, r_j` for `1 ≤ j ≤ N`; accepting `a₀, p_N`.
pub fn build_upal_qbca(n: usize) -> Result<QMachineSpec> {
    check_n(n)?;
    let UpalSkeleton {
        mut b, q_prime, w1, ..
    } = upal_skeleton(n, &["ω1", "ω2", "ωr"], n);
    for j in 1..=n {
        let rj = b.state(format!("r{j}"), MoveTag::Stay, false);
        b.add(q_prime[j - 1], A, Amp::one(), rj, vec![j as i64], w1);
    }
    b.complete()
}

/// Realtime one-counter machine for `(aⁿbⁿ)*`: every block is checked by a
/// QFT on the first `a` after it, whose distinguished target re-splits.
pub fn build_upal_star_qbca(n: usize) -> Result<QMachineSpec> {
    check_n(n)?;
    let UpalSkeleton {
        mut b, q, q_prime, ..
    } = upal_skeleton(n, &["ω1", "ω2", "ω3", "ωr"], n - 1);
    let w3 = b.register("ω3", Outcome::Neutral);
    let resplit = Amp::real(Rational::new(1.into(), (n as i64).into()));
    for j in 1..=n {
        let qpj = q_prime[j - 1];
        for l in 1..n {
            let rl = b.state(format!("r{l}"), MoveTag::Stay, false);
            b.add(qpj, A, Amp::qft(n, j as i64, l as i64), rl, vec![0], w3);
        }
        for k in 1..=n {
            b.add(qpj, A, resplit.clone(), q[k - 1], vec![k as i64], w3);
        }
    }
    b.complete()
}

fn oneway_registers(b: &mut SpecBuilder) -> (usize, usize, usize) {
    let n = b.register("ωn", Outcome::Neutral);
    let a = b.register("ωa", Outcome::Accept);
    let r = b.register("ωr", Outcome::Reject);
    (n, a, r)
}

/// One-way QFA for `{aᵐbaᵐ}`.
///
/// Path `j` spends `j+1` steps on each `a` before the `b` and `N−j+2` after
/// it, so all paths reach `$` together exactly when both blocks match.
pub fn build_upal1_qfa(n: usize) -> Result<QMachineSpec> {
    check_n(n)?;
    let mut b = SpecBuilder::new(QMode::OneWay, ab());
    let q0 = b.state("q0", MoveTag::Stay, false);
    let finals: Vec<usize> = (1..=n)
        .map(|l| b.state(format!("q{l}"), MoveTag::Stay, false))
        .collect();
    let (wn, wa, wr) = oneway_registers(&mut b);
    let mut p1 = Vec::new();
    for j in 1..=n {
        let mut qs = vec![b.state(format!("q{j},1"), MoveTag::Right, false)];
        qs.extend((2..=j + 1).map(|k| b.state(format!("q{j},{k}"), MoveTag::Stay, false)));
        let mut ps = vec![b.state(format!("p{j},1"), MoveTag::Right, false)];
        ps.extend((2..=n - j + 2).map(|k| b.state(format!("p{j},{k}"), MoveTag::Stay, false)));

        b.add_move(q0, LEFT, Amp::inv_sqrt(n), qs[0], wn);
        for chain in [&qs, &ps] {
            for k in 0..chain.len() {
                b.add_move(chain[k], A, Amp::one(), chain[(k + 1) % chain.len()], wn);
            }
        }
        b.add_move(qs[0], B, Amp::one(), ps[0], wn);
        b.add_move(ps[0], B, Amp::one(), ps[0], wr);
        b.add_move(qs[0], RIGHT, Amp::one(), qs[1], wr);
        p1.push(ps[0]);
    }
    for e in qft_block(&p1, &finals, n)? {
        let reg = if e.target == finals[n - 1] { wa } else { wr };
        b.add_move(e.source, RIGHT, e.amp, e.target, reg);
    }
    b.complete()
}

fn index_name(idx: &[usize]) -> String {
    idx.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(".")
}

/// Every tuple in `{1..n}^k`, in lexicographic order.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|p| (1..=n).map(move |j| [p.clone(), vec![j]].concat()))
            .collect()
    })
}

/// One-way QFA for `L_upal(t)` with negative one-sided error `1/N`.
///
/// Path `(j₁,…,j_k)` handles the `k`-th block pair. Left of the middle `b` a
/// new index is appended at each `b`; right of it each `b` (and finally `$`)
/// runs a QFT over the last index whose distinguished target drops it.
pub fn build_upal_t_qfa(t: usize, n: usize) -> Result<QMachineSpec> {
    check_n(n)?;
    if t == 0 {
        return Err(Error::usage("t must be at least 1"));
    }
    let mut b = SpecBuilder::new(QMode::OneWay, ab());
    let q0 = b.state("q0", MoveTag::Stay, false);
    let (wn, wa, wr) = oneway_registers(&mut b);

    // Chains are created in a fixed order so state indices are reproducible.
    let chain = |b: &mut SpecBuilder, prefix: &str, idx: &[usize], len: usize| -> Vec<usize> {
        (1..=len)
            .map(|s| {
                let tag = if s == 1 {
                    MoveTag::Right
                } else {
                    MoveTag::Stay
                };
                b.state(format!("{prefix}{}:{s}", index_name(idx)), tag, false)
            })
            .collect()
    };
    let mut left = std::collections::BTreeMap::new();
    let mut right = std::collections::BTreeMap::new();
    for k in 1..=t {
        for idx in tuples(n, k) {
            let jk = idx[k - 1];
            left.insert(idx.clone(), chain(&mut b, "L", &idx, jk + 1));
            right.insert(idx.clone(), chain(&mut b, "R", &idx, n - jk + 2));
        }
    }
    let finals: Vec<usize> = (1..=n)
        .map(|l| b.state(format!("F{l}"), MoveTag::Stay, false))
        .collect();

    for j in 1..=n {
        b.add_move(q0, LEFT, Amp::inv_sqrt(n), left[&vec![j]][0], wn);
    }
    for k in 1..=t {
        for idx in tuples(n, k) {
            let (l, r) = (left[&idx].clone(), right[&idx].clone());
            for c in [&l, &r] {
                for s in 0..c.len() {
                    b.add_move(c[s], A, Amp::one(), c[(s + 1) % c.len()], wn);
                }
            }
            if k < t {
                for j in 1..=n {
                    let child = [idx.clone(), vec![j]].concat();
                    b.add_move(l[0], B, Amp::inv_sqrt(n), left[&child][0], wn);
                }
            } else {
                b.add_move(l[0], B, Amp::one(), r[0], wn);
            }
            b.add_move(l[0], RIGHT, Amp::one(), l[1], wr);
            if k == 1 {
                b.add_move(r[0], B, Amp::one(), r[0], wr);
            } else {
                b.add_move(r[0], RIGHT, Amp::one(), r[1], wr);
            }
        }
    }
    // Stage-closing QFTs on b, and the final one on $.
    for k in 2..=t {
        for prefix in tuples(n, k - 1) {
            let sources: Vec<usize> = (1..=n)
                .map(|j| right[&[prefix.clone(), vec![j]].concat()][0])
                .collect();
            let mut targets: Vec<usize> = (1..n)
                .map(|l| {
                    b.state(
                        format!("D{}:{l}", index_name(&prefix)),
                        MoveTag::Stay,
                        false,
                    )
                })
                .collect();
            targets.push(right[&prefix][0]);
            for e in qft_block(&sources, &targets, n)? {
                let reg = if e.target == targets[n - 1] { wn } else { wr };
                b.add_move(e.source, B, e.amp, e.target, reg);
            }
        }
    }
    let sources: Vec<usize> = (1..=n).map(|j| right[&vec![j]][0]).collect();
    for e in qft_block(&sources, &finals, n)? {
        let reg = if e.target == finals[n - 1] { wa } else { wr };
        b.add_move(e.source, RIGHT, e.amp, e.target, reg);
    }
    b.complete()
}

/// Realtime one-counter machine over `{a}` isolating a single QFT.
///
/// On `¢` the start state splits uniformly into `d_1..d_N`; on `a` each `d_j`
/// applies the QFT onto `r_1..r_N`. The paths share one configuration when
/// `staggered` is false, and otherwise sit at distinct counter values `j`.
pub fn build_qft_interference(n: usize, staggered: bool) -> Result<QMachineSpec> {
    check_n(n)?;
    let mut b = SpecBuilder::new(
        QMode::Realtime { counters: 1 },
        Alphabet::from_chars("a").expect("static alphabet"),
    );
    let start = b.state("s", MoveTag::Right, false);
    let d: Vec<usize> = (1..=n)
        .map(|j| b.state(format!("d{j}"), MoveTag::Right, false))
        .collect();
    let r: Vec<usize> = (1..=n)
        .map(|l| b.state(format!("r{l}"), MoveTag::Right, l == n))
        .collect();
    let w = b.register("ω", Outcome::Neutral);
    for (j, &dj) in d.iter().enumerate() {
        let update = if staggered { j as i64 + 1 } else { 0 };
        b.add(start, LEFT, Amp::inv_sqrt(n), dj, vec![update], w);
    }
    for e in qft_block(&d, &r, n)? {
        b.add(e.source, TapeSymbol::Letter(0), e.amp, e.target, vec![0], w);
    }
    for &q in &r {
        b.add(q, RIGHT, Amp::one(), q, vec![0], w);
    }
    b.complete()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Amplitude;
    use crate::qruntime::{check_well_formed, run_oneway, run_realtime, CounterAcceptance, SINK};

    const TOL: f64 = 1e-9;

    fn rt(spec: &QMachineSpec, w: &str, ca: CounterAcceptance) -> f64 {
        run_realtime(spec, w, ca).unwrap().accept
    }

    fn ow(spec: &QMachineSpec, w: &str) -> f64 {
        let r = run_oneway(spec, w, None).unwrap();
        assert!(r.halted, "{w:?} did not halt");
        r.accept
    }

    fn declared_states(spec: &QMachineSpec) -> usize {
        spec.states().iter().filter(|s| s.name != SINK).count()
    }

    #[test]
    fn qft_block_shape() {
        let block = qft_block(&[0, 1], &[2, 3], 2).unwrap();
        assert_eq!(block.len(), 4);
        let s = 0.5f64.sqrt();
        let find = |src, tgt| {
            block
                .iter()
                .find(|e| e.source == src && e.target == tgt)
                .unwrap()
                .amp
                .value()
        };
        assert!((find(0, 2) - Amplitude::new(-s, 0.0)).norm() < 1e-15);
        assert!((find(0, 3) - Amplitude::new(s, 0.0)).norm() < 1e-15);
        assert!((find(1, 2) - Amplitude::new(s, 0.0)).norm() < 1e-15);
        assert!(qft_block(&[0], &[1, 2], 2).is_err());
        for n in 2..6 {
            let src: Vec<usize> = (0..n).collect();
            let tgt: Vec<usize> = (n..2 * n).collect();
            let block = qft_block(&src, &tgt, n).unwrap();
            for s in &src {
                let norm: f64 = block
                    .iter()
                    .filter(|e| e.source == *s)
                    .map(|e| e.amp.value().norm_sqr())
                    .sum();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn upal_state_counts() {
        for n in 2..=4 {
            assert_eq!(declared_states(&build_upal_qbca(n).unwrap()), 3 + 4 * n);
            assert_eq!(
                declared_states(&build_upal_star_qbca(n).unwrap()),
                3 + 3 * n + (n - 1)
            );
        }
        assert!(build_upal_qbca(1).is_err());
    }

    #[test]
    fn upal_examples() {
        let m = build_upal_qbca(2).unwrap();
        for ca in [CounterAcceptance::RequireZero, CounterAcceptance::Ignore] {
            assert!((rt(&m, "", ca) - 1.0).abs() < TOL);
            assert!(rt(&m, "ba", ca).abs() < TOL);
            assert!((rt(&m, "aabb", ca) - 1.0).abs() < TOL);
            assert!(rt(&m, "abab", ca) <= 0.5 + TOL);
        }
        assert!((rt(&m, "aab", CounterAcceptance::Ignore) - 0.5).abs() < TOL);
        assert!(rt(&m, "aab", CounterAcceptance::RequireZero).abs() < TOL);
    }

    #[test]
    fn upal_star_examples() {
        for n in [2, 3] {
            let m = build_upal_star_qbca(n).unwrap();
            let ca = CounterAcceptance::RequireZero;
            assert!((rt(&m, "abab", ca) - 1.0).abs() < TOL);
            assert!((rt(&m, "ab", ca) - 1.0).abs() < TOL);
            assert!((rt(&m, "aabbab", ca) - 1.0).abs() < TOL);
            assert!(rt(&m, "aabab", ca) <= 1.0 / n as f64 + TOL);
        }
    }

    #[test]
    fn upal1_examples() {
        for n in [2, 3] {
            let m = build_upal1_qfa(n).unwrap();
            assert!((ow(&m, "b") - 1.0).abs() < TOL);
            assert!((ow(&m, "aabaa") - 1.0).abs() < TOL);
            assert!((ow(&m, "ab") - 1.0 / n as f64).abs() < TOL);
            assert!(ow(&m, "abab").abs() < TOL);
            assert!(ow(&m, "").abs() < TOL);
        }
        assert!((ow(&build_upal1_qfa(2).unwrap(), "aab") - 0.5).abs() < TOL);
        assert!((ow(&build_upal1_qfa(2).unwrap(), "aba") - 1.0).abs() < TOL);
    }

    #[test]
    fn upal_t_examples() {
        let m = build_upal_t_qfa(2, 2).unwrap();
        assert!((ow(&m, "abbba") - 1.0).abs() < TOL);
        assert!((ow(&m, "bbb") - 1.0).abs() < TOL);
        assert!((ow(&m, "aabababaa") - 1.0).abs() < TOL);
        assert!(ow(&m, "ababa") <= 0.5 + TOL);
        assert!(ow(&m, "aba").abs() < TOL);
    }

    #[test]
    fn builders_are_well_formed_on_short_inputs() {
        let words: Vec<Vec<usize>> = ab().words_up_to(3).collect();
        for n in [2, 3] {
            for spec in [
                build_upal_qbca(n).unwrap(),
                build_upal_star_qbca(n).unwrap(),
                build_upal1_qfa(n).unwrap(),
                build_upal_t_qfa(2, n).unwrap(),
            ] {
                for w in &words {
                    let report = check_well_formed(&spec, w, TOL);
                    assert!(report.is_empty(), "{report:?}");
                }
            }
        }
    }
}
