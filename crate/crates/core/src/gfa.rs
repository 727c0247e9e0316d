//! Generalized finite automata over the rationals.
//!
//! A GFA assigns every word the value `f · A_{w_n} ⋯ A_{w_1} · v₀`. Languages
//! in the nondeterministic-quantum class are exactly those for which some GFA
//! is positive on members and zero elsewhere; the builders here produce such
//! witnesses by multiplying simple counting automata together.

use num::{Signed, Zero};

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::numerics::{Rational, SparseMap, SparseVector};

#[derive(Clone, Debug, PartialEq)]
pub struct Gfa {
    alphabet: Alphabet,
    states: usize,
    transitions: Vec<SparseMap<usize, Rational>>,
    initial: SparseVector<usize, Rational>,
    final_row: SparseVector<usize, Rational>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl Gfa {
    /// Builds a GFA, checking that every matrix and vector fits `states`.
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        transitions: Vec<SparseMap<usize, Rational>>,
        initial: SparseVector<usize, Rational>,
        final_row: SparseVector<usize, Rational>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::construction("a GFA needs at least one state"));
        }
        if transitions.len() != alphabet.len() {
            return Err(Error::construction(format!(
                "{} transition matrices for {} symbols",
                transitions.len(),
                alphabet.len()
            )));
        }
        let in_range = |k: &usize| *k < states;
        for (sym, m) in transitions.iter().enumerate() {
            if !m.entries().all(|(t, s, _)| in_range(t) && in_range(s)) {
                return Err(Error::construction(format!(
                    "matrix for {:?} exceeds {states} states",
                    alphabet.symbol(sym)
                )));
            }
        }
        if !initial.keys().all(in_range) || !final_row.keys().all(in_range) {
            return Err(Error::construction(
                "initial or final vector exceeds the state count",
            ));
        }
        Ok(Self {
            alphabet,
            states,
            transitions,
            initial,
            final_row,
        })
    }

    /// The one-state GFA with constant value 1.
    pub fn constant_one(alphabet: Alphabet) -> Self {
        let transitions = vec![SparseMap::identity([0]); alphabet.len()];
        Self::new(
            alphabet,
            1,
            transitions,
            SparseVector::unit(0),
            SparseVector::unit(0),
        )
        .expect("well-formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn transition(&self, symbol: usize) -> &SparseMap<usize, Rational> {
        &self.transitions[symbol]
    }

    pub fn initial(&self) -> &SparseVector<usize, Rational> {
        &self.initial
    }

    pub fn final_row(&self) -> &SparseVector<usize, Rational> {
        &self.final_row
    }

    /// Exact value of a word given as symbol indices.
    pub fn value(&self, word: &[usize]) -> Result<Rational> {
        let mut v = self.initial.clone();
        for (position, &sym) in word.iter().enumerate() {
            let m = self
                .transitions
                .get(sym)
                .ok_or_else(|| Error::InvalidSymbol {
                    position,
                    found: format!("#{sym}"),
                })?;
            v = m.apply(&v);
        }
        Ok(v.dot(&self.final_row))
    }

    pub fn value_of(&self, input: &str) -> Result<Rational> {
        self.value(&self.alphabet.tokenize(input)?)
    }
}

/// `f_G(w)` for a textual input.
pub fn gfa_value(g: &Gfa, input: &str) -> Result<Rational> {
    g.value_of(input)
}

/// The product automaton with value `f_{G1}(w)·f_{G2}(w)`.
pub fn gfa_tensor(g1: &Gfa, g2: &Gfa) -> Result<Gfa> {
    if g1.alphabet != g2.alphabet {
        return Err(Error::construction(format!(
            "cannot tensor GFAs over {} and {}",
            g1.alphabet, g2.alphabet
        )));
    }
    let n2 = g2.states;
    let flat = |&(i, j): &(usize, usize)| i * n2 + j;
    let transitions = g1
        .transitions
        .iter()
        .zip(&g2.transitions)
        .map(|(a, b)| a.tensor(b).map_keys(flat))
        .collect();
    Gfa::new(
        g1.alphabet.clone(),
        g1.states * n2,
        transitions,
        g1.initial.tensor(&g2.initial).map_keys(flat),
        g1.final_row.tensor(&g2.final_row).map_keys(flat),
    )
}

/// Two-state GFA with value `|w|_plus − |w|_minus`; other symbols act as identity.
pub fn build_diff_gfa(plus: &str, minus: &str, alphabet: &Alphabet) -> Result<Gfa> {
    if plus == minus {
        return Err(Error::construction(
            "difference automaton needs two distinct symbols",
        ));
    }
    let p = alphabet.require(plus)?;
    let m = alphabet.require(minus)?;
    let transitions = (0..alphabet.len())
        .map(|sym| {
            let mut a = SparseMap::identity([0, 1]);
            if sym == p {
                a.add(0, 1, int(1));
            } else if sym == m {
                a.add(0, 1, int(-1));
            }
            a
        })
        .collect();
    Gfa::new(
        alphabet.clone(),
        2,
        transitions,
        SparseVector::unit(1),
        SparseVector::unit(0),
    )
}

fn block_indices(blocks: &[&str], alphabet: &Alphabet) -> Result<Vec<usize>> {
    if blocks.is_empty() {
        return Err(Error::construction("block list must be nonempty"));
    }
    let indices = blocks
        .iter()
        .map(|b| alphabet.require(b))
        .collect::<Result<Vec<_>>>()?;
    for (i, x) in indices.iter().enumerate() {
        if indices[..i].contains(x) {
            return Err(Error::construction(
                "block symbols must be pairwise distinct",
            ));
        }
    }
    Ok(indices)
}

/// Value 1 on `block₁⁺ ⋯ block_m⁺`, 0 otherwise; `m + 1` states.
pub fn build_form_gfa(blocks: &[&str], alphabet: &Alphabet) -> Result<Gfa> {
    let indices = block_indices(blocks, alphabet)?;
    let m = indices.len();
    let mut transitions = vec![SparseMap::new(); alphabet.len()];
    for (b, &sym) in indices.iter().enumerate() {
        transitions[sym].add(b + 1, b, int(1));
        transitions[sym].add(b + 1, b + 1, int(1));
    }
    Gfa::new(
        alphabet.clone(),
        m + 1,
        transitions,
        SparseVector::unit(0),
        SparseVector::unit(m),
    )
}

/// Value 1 on `block₁* ⋯ block_m*`, 0 otherwise; `m` states.
///
/// State `i` records that the last symbol read belongs to block `i`.
pub fn build_star_form_gfa(blocks: &[&str], alphabet: &Alphabet) -> Result<Gfa> {
    let indices = block_indices(blocks, alphabet)?;
    let m = indices.len();
    let mut transitions = vec![SparseMap::new(); alphabet.len()];
    for (b, &sym) in indices.iter().enumerate() {
        for from in 0..=b {
            transitions[sym].add(b, from, int(1));
        }
    }
    let all_ones = (0..m).map(|i| (i, int(1))).collect();
    Gfa::new(
        alphabet.clone(),
        m,
        transitions,
        SparseVector::unit(0),
        all_ones,
    )
}

fn squared(g: &Gfa) -> Result<Gfa> {
    gfa_tensor(g, g)
}

fn abc() -> Alphabet {
    Alphabet::from_chars("abc").expect("static alphabet")
}

/// GFA for `{aⁱbʲcᵏ | i,j,k pairwise distinct, 0 ≤ i,j,k}`.
///
/// Value `(i−j)²(i−k)²(j−k)²` on `a*b*c*` and 0 elsewhere.
pub fn build_lijk_gfa() -> Gfa {
    lijk_with_form(build_star_form_gfa(&["a", "b", "c"], &abc()).expect("static blocks"))
}

/// The same product with the `a⁺b⁺c⁺` form factor. It is zero on members
/// with an empty block such as `bcc`.
pub fn build_lijk_plus_gfa() -> Gfa {
    lijk_with_form(build_form_gfa(&["a", "b", "c"], &abc()).expect("static blocks"))
}

fn lijk_with_form(form: Gfa) -> Gfa {
    let alphabet = abc();
    let diff = |p, m| {
        squared(&build_diff_gfa(p, m, &alphabet).expect("static symbols")).expect("same alphabet")
    };
    [diff("a", "b"), diff("a", "c"), diff("b", "c")]
        .iter()
        .try_fold(form, |acc, g| gfa_tensor(&acc, g))
        .expect("same alphabet")
}

/// GFA with value `Π_i (|w|_{aᵢ} − |w|_{bᵢ})²` over `a1..at, b1..bt`.
pub fn build_neq_gfa(t: usize) -> Result<Gfa> {
    let alphabet = Alphabet::indexed_pairs(t)?;
    (1..=t).try_fold(Gfa::constant_one(alphabet.clone()), |acc, i| {
        let d = build_diff_gfa(&format!("a{i}"), &format!("b{i}"), &alphabet)?;
        gfa_tensor(&acc, &squared(&d)?)
    })
}

/// Nondeterministic-mode decision: member iff the value is strictly positive.
pub fn nqal_decide(g: &Gfa, input: &str) -> Result<bool> {
    Ok(gfa_value(g, input)?.is_positive())
}

/// Exact-zero decision used for complement witnesses.
pub fn is_zero_value(g: &Gfa, word: &Word) -> Result<bool> {
    Ok(g.value(word)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::{LanguageId, LanguageTag};
    use proptest::prelude::*;

    fn value(g: &Gfa, w: &str) -> Rational {
        gfa_value(g, w).unwrap()
    }

    fn g_ab() -> Gfa {
        build_diff_gfa("a", "b", &abc()).unwrap()
    }

    #[test]
    fn difference_automaton_values() {
        assert_eq!(value(&g_ab(), "aab"), int(1));
        assert_eq!(value(&g_ab(), ""), int(0));
        assert_eq!(value(&g_ab(), "abb"), int(-1));
        assert_eq!(value(&g_ab(), "abcabca"), int(1));
        assert_eq!(value(&g_ab(), "ccc"), int(0));
        assert!(build_diff_gfa("a", "a", &abc()).is_err());
    }

    #[test]
    fn printed_difference_matrices() {
        let g = g_ab();
        let expect = |sym: usize, entries: [[i64; 2]; 2]| {
            for (r, row) in entries.iter().enumerate() {
                for (c, &e) in row.iter().enumerate() {
                    let got = g.transition(sym).get(&r, &c).cloned().unwrap_or_default();
                    assert_eq!(got, int(e), "symbol {sym} entry ({r},{c})");
                }
            }
        };
        expect(0, [[1, 1], [0, 1]]);
        expect(1, [[1, -1], [0, 1]]);
        expect(2, [[1, 0], [0, 1]]);
    }

    #[test]
    fn printed_form_matrices_golden() {
        // The 4-state a⁺b⁺c⁺ automaton: A_a, A_b, A_c as zero-one matrices.
        let g = build_form_gfa(&["a", "b", "c"], &abc()).unwrap();
        let golden: [&[(usize, usize)]; 3] =
            [&[(1, 0), (1, 1)], &[(2, 1), (2, 2)], &[(3, 2), (3, 3)]];
        for (sym, ones) in golden.iter().enumerate() {
            for r in 0..4 {
                for c in 0..4 {
                    let expected = if ones.contains(&(r, c)) {
                        int(1)
                    } else {
                        int(0)
                    };
                    let got = g.transition(sym).get(&r, &c).cloned().unwrap_or_default();
                    assert_eq!(got, expected);
                }
            }
        }
        assert_eq!(g.initial(), &SparseVector::unit(0));
        assert_eq!(g.final_row(), &SparseVector::unit(3));
    }

    #[test]
    fn form_automaton_values() {
        let g = build_form_gfa(&["a", "b", "c"], &abc()).unwrap();
        assert_eq!(value(&g, "abc"), int(1));
        assert_eq!(value(&g, "aabbcc"), int(1));
        assert_eq!(value(&g, "acb"), int(0));
        assert_eq!(value(&g, ""), int(0));
        assert_eq!(value(&g, "cba"), int(0));
        assert_eq!(value(&g, "bc"), int(0));
        let star = build_star_form_gfa(&["a", "b", "c"], &abc()).unwrap();
        assert_eq!(value(&star, "bc"), int(1));
        assert_eq!(value(&star, ""), int(1));
        assert_eq!(value(&star, "cba"), int(0));
    }

    #[test]
    fn tensor_examples() {
        let sq = gfa_tensor(&g_ab(), &g_ab()).unwrap();
        assert_eq!(value(&sq, "aab"), int(1));
        assert_eq!(value(&sq, "abb"), int(1));
        assert_eq!(value(&sq, "aaab"), int(4));
        let with_one = gfa_tensor(&g_ab(), &Gfa::constant_one(abc())).unwrap();
        for w in ["", "a", "abbb", "cab"] {
            assert_eq!(value(&with_one, w), value(&g_ab(), w));
        }
        let other = build_diff_gfa("a", "b", &Alphabet::from_chars("ab").unwrap()).unwrap();
        assert!(gfa_tensor(&g_ab(), &other).is_err());
    }

    #[test]
    fn lijk_examples() {
        let g = build_lijk_gfa();
        assert_eq!(value(&g, "abbccc"), int(4));
        assert_eq!(value(&g, "aabbcc"), int(0));
        assert_eq!(value(&g, "ba"), int(0));
        assert!(nqal_decide(&g, "abbccc").unwrap());
        assert!(!nqal_decide(&g, "aabbcc").unwrap());
        assert!(!nqal_decide(&g, "").unwrap());
        // (0-1)²(0-2)²(1-2)² for the member with an empty a-block.
        assert_eq!(value(&g, "bcc"), int(4));
        assert_eq!(value(&build_lijk_plus_gfa(), "bcc"), int(0));
        assert_eq!(value(&build_lijk_plus_gfa(), "abbccc"), int(4));
    }

    #[test]
    fn lijk_matches_oracle_and_closed_form() {
        let g = build_lijk_gfa();
        let lang = LanguageId::plain(LanguageTag::Ijk);
        for w in abc().words_up_to(6) {
            assert_eq!(g.value(&w).unwrap().is_positive(), lang.contains_word(&w));
        }
        for i in 1..=4i64 {
            for j in 1..=4i64 {
                for k in 1..=4i64 {
                    let w =
                        "a".repeat(i as usize) + &"b".repeat(j as usize) + &"c".repeat(k as usize);
                    let expected = (i - j).pow(2) * (i - k).pow(2) * (j - k).pow(2);
                    assert_eq!(value(&g, &w), int(expected));
                }
            }
        }
    }

    #[test]
    fn neq_examples() {
        let g1 = build_neq_gfa(1).unwrap();
        assert_eq!(value(&g1, "a1a1b1"), int(1));
        assert_eq!(value(&g1, "a1b1"), int(0));
        let g2 = build_neq_gfa(2).unwrap();
        assert_eq!(value(&g2, "a1a2a2b2"), int(1));
        assert_eq!(value(&g2, "a1a1a2b2b2b2"), int(16));
        assert_eq!(g2.states(), 16);
        let lang = LanguageId::with_t(LanguageTag::Neq, 2);
        for w in lang.alphabet().words_up_to(5) {
            assert_eq!(g2.value(&w).unwrap().is_positive(), lang.contains_word(&w));
        }
    }

    #[test]
    fn invalid_symbols_name_their_position() {
        match gfa_value(&g_ab(), "abd") {
            Err(Error::InvalidSymbol { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn difference_matches_direct_counting() {
        let g = g_ab();
        for w in abc().words_up_to(8) {
            let a = w.iter().filter(|&&s| s == 0).count() as i64;
            let b = w.iter().filter(|&&s| s == 1).count() as i64;
            assert_eq!(g.value(&w).unwrap(), int(a - b));
        }
    }

    fn small_gfa() -> impl Strategy<Value = Gfa> {
        (1usize..=3).prop_flat_map(|n| {
            let entry = (0..n, 0..n, -2i64..=2);
            let matrix = proptest::collection::vec(entry.clone(), 0..6);
            let vector = proptest::collection::vec((0..n, -2i64..=2), 0..3);
            (Just(n), matrix.clone(), matrix, vector.clone(), vector).prop_map(
                |(n, ma, mb, v, f)| {
                    let mk = |es: Vec<(usize, usize, i64)>| {
                        let mut m = SparseMap::new();
                        for (t, s, x) in es {
                            m.add(t, s, int(x));
                        }
                        m
                    };
                    let vec =
                        |es: Vec<(usize, i64)>| es.into_iter().map(|(k, x)| (k, int(x))).collect();
                    Gfa::new(
                        Alphabet::from_chars("ab").unwrap(),
                        n,
                        vec![mk(ma), mk(mb)],
                        vec(v),
                        vec(f),
                    )
                    .unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn tensor_multiplies_values(g1 in small_gfa(), g2 in small_gfa()) {
            let g = gfa_tensor(&g1, &g2).unwrap();
            for w in g1.alphabet().words_up_to(6) {
                prop_assert_eq!(g.value(&w).unwrap(), g1.value(&w).unwrap() * g2.value(&w).unwrap());
            }
        }
    }
}
