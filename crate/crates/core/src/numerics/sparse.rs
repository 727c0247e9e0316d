use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use num::{One, Zero};

use super::{Amplitude, Rational, DROP_THRESHOLD};

/// Scalar field of a sparse structure.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + Add<Output = Self> + Mul<Output = Self>
{
    /// Whether the value is dropped from sparse storage.
    fn is_negligible(&self) -> bool;
}

impl Scalar for Rational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Amplitude {
    fn is_negligible(&self) -> bool {
        self.norm() < DROP_THRESHOLD
    }
}

/// A finitely supported vector indexed by ordered keys. Never stores zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector<K, S> {
    entries: BTreeMap<K, S>,
}

impl<K: Ord + Clone, S: Scalar> Default for SparseVector<K, S> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> SparseVector<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.add_to(key, S::one());
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (K, S)>>(entries: I) -> Self {
        let mut v = Self::new();
        for (k, s) in entries {
            v.add_to(k, s);
        }
        v
    }

    /// Adds `value` to the entry at `key`, dropping it if the sum is negligible.
    pub fn add_to(&mut self, key: K, value: S) {
        use std::collections::btree_map::Entry;
        match self.entries.entry(key) {
            Entry::Vacant(slot) => {
                if !value.is_negligible() {
                    slot.insert(value);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + value;
                if sum.is_negligible() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, key: &K) -> Option<&S> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bilinear pairing `Σ_k self[k]·other[k]` (no conjugation).
    pub fn dot(&self, other: &Self) -> S {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .iter()
            .fold(S::zero(), |acc, (k, a)| match large.get(k) {
                Some(b) => acc + a.clone() * b.clone(),
                None => acc,
            })
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_entries(
            self.iter()
                .map(|(k, v)| (k.clone(), v.clone() * factor.clone())),
        )
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> SparseVector<K2, S> {
        SparseVector::from_entries(self.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// Kronecker product with composite keys.
    pub fn tensor<K2: Ord + Clone>(&self, other: &SparseVector<K2, S>) -> SparseVector<(K, K2), S> {
        let mut out = SparseVector::new();
        for (k1, a) in self.iter() {
            for (k2, b) in other.iter() {
                out.add_to((k1.clone(), k2.clone()), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for SparseVector<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}

/// A finitely supported linear map, stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMap<K, S> {
    columns: BTreeMap<K, SparseVector<K, S>>,
}

impl<K: Ord + Clone, S: Scalar> Default for SparseMap<K, S> {
    fn default() -> Self {
        Self {
            columns: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> SparseMap<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity<I: IntoIterator<Item = K>>(keys: I) -> Self {
        let mut m = Self::new();
        for k in keys {
            m.add(k.clone(), k, S::one());
        }
        m
    }

    /// Adds `value` to the entry `[target, source]`.
    pub fn add(&mut self, target: K, source: K, value: S) {
        let column = self.columns.entry(source.clone()).or_default();
        column.add_to(target, value);
        if column.is_empty() {
            self.columns.remove(&source);
        }
    }

    pub fn get(&self, target: &K, source: &K) -> Option<&S> {
        self.columns.get(source).and_then(|c| c.get(target))
    }

    pub fn column(&self, source: &K) -> Option<&SparseVector<K, S>> {
        self.columns.get(source)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&K, &SparseVector<K, S>)> {
        self.columns.iter()
    }

    /// All stored entries as `(target, source, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (&K, &K, &S)> {
        self.columns
            .iter()
            .flat_map(|(src, col)| col.iter().map(move |(t, v)| (t, src, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(SparseVector::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `result[j] = Σ_i self[j,i]·v[i]`.
    pub fn apply(&self, v: &SparseVector<K, S>) -> SparseVector<K, S> {
        let mut out = SparseVector::new();
        for (i, vi) in v.iter() {
            if let Some(col) = self.columns.get(i) {
                for (j, m) in col.iter() {
                    out.add_to(j.clone(), m.clone() * vi.clone());
                }
            }
        }
        out
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> SparseMap<K2, S> {
        let mut out = SparseMap::new();
        for (t, s, v) in self.entries() {
            out.add(f(t), f(s), v.clone());
        }
        out
    }

    /// Kronecker product with composite keys.
    pub fn tensor<K2: Ord + Clone>(&self, other: &SparseMap<K2, S>) -> SparseMap<(K, K2), S> {
        let mut out = SparseMap::new();
        for (t1, s1, a) in self.entries() {
            for (t2, s2, b) in other.entries() {
                out.add(
                    (t1.clone(), t2.clone()),
                    (s1.clone(), s2.clone()),
                    a.clone() * b.clone(),
                );
            }
        }
        out
    }
}

/// Two source columns whose stacked inner product deviates from δ.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnViolation<K> {
    pub first: K,
    pub second: K,
    /// Observed `Σ_ω ⟨E_ω e_first, E_ω e_second⟩`.
    pub inner: Amplitude,
}

/// Outcome of [`check_columns_orthonormal`]; empty means well-formed.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalityReport<K> {
    pub violations: Vec<ColumnViolation<K>>,
}

impl<K> OrthonormalityReport<K> {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the columns of the stacked family `maps`, restricted to
/// `sources`, form an orthonormal set: `Σ_ω E_ω† E_ω = I` on that space.
///
/// The Gram matrix is accumulated row by row, so the cost is the sum over
/// target rows of the squared row occupancy rather than quadratic in the
/// number of sources.
pub fn check_columns_orthonormal<K: Ord + Clone>(
    maps: &[SparseMap<K, Amplitude>],
    sources: &[K],
    tol: f64,
) -> OrthonormalityReport<K> {
    let index: BTreeMap<&K, usize> = sources
        .iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let keys: Vec<&K> = index.keys().copied().collect();

    let mut gram: BTreeMap<(usize, usize), Amplitude> = BTreeMap::new();
    for map in maps {
        let mut rows: BTreeMap<&K, Vec<(usize, Amplitude)>> = BTreeMap::new();
        for (target, source, value) in map.entries() {
            if let Some(&i) = index.get(source) {
                rows.entry(target).or_default().push((i, *value));
            }
        }
        for row in rows.values() {
            for (x, &(a, va)) in row.iter().enumerate() {
                for &(b, vb) in &row[x..] {
                    let (lo, hi, term) = if a <= b {
                        (a, b, va.conj() * vb)
                    } else {
                        (b, a, vb.conj() * va)
                    };
                    *gram.entry((lo, hi)).or_default() += term;
                }
            }
        }
    }

    let mut violations = Vec::new();
    for (i, key) in keys.iter().enumerate() {
        let diag = gram.get(&(i, i)).copied().unwrap_or_default();
        if (diag - Amplitude::new(1.0, 0.0)).norm() > tol {
            violations.push(ColumnViolation {
                first: (*key).clone(),
                second: (*key).clone(),
                inner: diag,
            });
        }
    }
    for (&(a, b), &value) in &gram {
        if a != b && value.norm() > tol {
            violations.push(ColumnViolation {
                first: keys[a].clone(),
                second: keys[b].clone(),
                inner: value,
            });
        }
    }
    OrthonormalityReport { violations }
}
