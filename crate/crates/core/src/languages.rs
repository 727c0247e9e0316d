//! Reference membership oracles, checked directly from each language's
//! definition and kept independent of every machine in this crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LanguageTag {
    /// `{aⁿbⁿ | n ≥ 0}`
    Upal,
    /// Kleene star of `Upal`.
    UpalStar,
    /// `{aⁱbʲcᵏ | i ≠ j, i ≠ k, j ≠ k, 0 ≤ i,j,k}`
    Ijk,
    /// Strings with two `b`s at mirrored positions (possibly the same one).
    Say,
    /// Every `aᵢ` count equals the matching `bᵢ` count.
    Eq,
    /// Every `aᵢ` count differs from the matching `bᵢ` count.
    Neq,
    /// `a^{n1} b ⋯ b a^{nt} b a^{nt} b ⋯ b a^{n1}`, `nᵢ ≥ 0`.
    UpalT,
    /// As `UpalT` with every `nᵢ > 0`.
    UpalTStrict,
    /// `w1 c ⋯ c wt c wt c ⋯ c w1` over `{a,b}`.
    Twin,
    /// `|w|_a > |w|_b > 0`
    Gt,
    /// `|w|_a = |w|_b`
    Bal,
    /// Every `aᵢ` count exceeds the matching `bᵢ` count.
    GtT,
}

impl LanguageTag {
    pub fn name(self) -> &'static str {
        match self {
            LanguageTag::Upal => "upal",
            LanguageTag::UpalStar => "upal_star",
            LanguageTag::Ijk => "ijk",
            LanguageTag::Say => "say",
            LanguageTag::Eq => "eq",
            LanguageTag::Neq => "neq",
            LanguageTag::UpalT => "upal_t",
            LanguageTag::UpalTStrict => "upal_t_strict",
            LanguageTag::Twin => "twin",
            LanguageTag::Gt => "gt",
            LanguageTag::Bal => "bal",
            LanguageTag::GtT => "gt_t",
        }
    }

    pub fn needs_parameter(self) -> bool {
        matches!(
            self,
            LanguageTag::Eq
                | LanguageTag::Neq
                | LanguageTag::UpalT
                | LanguageTag::UpalTStrict
                | LanguageTag::Twin
                | LanguageTag::GtT
        )
    }

    const ALL: [LanguageTag; 12] = [
        LanguageTag::Upal,
        LanguageTag::UpalStar,
        LanguageTag::Ijk,
        LanguageTag::Say,
        LanguageTag::Eq,
        LanguageTag::Neq,
        LanguageTag::UpalT,
        LanguageTag::UpalTStrict,
        LanguageTag::Twin,
        LanguageTag::Gt,
        LanguageTag::GtT,
        LanguageTag::Bal,
    ];
}

/// A language family plus its parameter, when the family has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLanguageId")]
pub struct LanguageId {
    pub tag: LanguageTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

#[derive(Deserialize)]
struct RawLanguageId {
    tag: LanguageTag,
    #[serde(default)]
    t: Option<usize>,
}

impl TryFrom<RawLanguageId> for LanguageId {
    type Error = Error;

    fn try_from(raw: RawLanguageId) -> Result<Self> {
        LanguageId::new(raw.tag, raw.t)
    }
}

impl LanguageId {
    pub fn new(tag: LanguageTag, t: Option<usize>) -> Result<Self> {
        match (tag.needs_parameter(), t) {
            (true, Some(t)) if t >= 1 => Ok(Self { tag, t: Some(t) }),
            (true, _) => Err(Error::usage(format!(
                "language {} needs a parameter t >= 1",
                tag.name()
            ))),
            (false, None) => Ok(Self { tag, t: None }),
            (false, Some(_)) => Err(Error::usage(format!(
                "language {} takes no parameter",
                tag.name()
            ))),
        }
    }

    pub fn plain(tag: LanguageTag) -> Self {
        Self::new(tag, None).expect("parameterless language")
    }

    pub fn with_t(tag: LanguageTag, t: usize) -> Self {
        Self::new(tag, Some(t)).expect("parameterized language")
    }

    fn param(&self) -> usize {
        self.t.unwrap_or(0)
    }

    /// The alphabet the language is declared over.
    pub fn alphabet(&self) -> Alphabet {
        let chars = |s: &str| Alphabet::from_chars(s).expect("static alphabet");
        match self.tag {
            LanguageTag::Upal
            | LanguageTag::UpalStar
            | LanguageTag::Say
            | LanguageTag::UpalT
            | LanguageTag::UpalTStrict
            | LanguageTag::Gt
            | LanguageTag::Bal => chars("ab"),
            LanguageTag::Ijk | LanguageTag::Twin => chars("abc"),
            LanguageTag::Eq | LanguageTag::Neq | LanguageTag::GtT => {
                Alphabet::indexed_pairs(self.param()).expect("t >= 1")
            }
        }
    }

    /// Membership of a textual input.
    pub fn contains(&self, input: &str) -> Result<bool> {
        let word = self.alphabet().tokenize(input)?;
        Ok(self.contains_word(&word))
    }

    /// Membership of a word over [`LanguageId::alphabet`].
    pub fn contains_word(&self, w: &[usize]) -> bool {
        const A: usize = 0;
        const B: usize = 1;
        const C: usize = 2;
        let t = self.param();
        match self.tag {
            LanguageTag::Upal => is_upal(w),
            LanguageTag::UpalStar => is_upal_star(w),
            LanguageTag::Ijk => {
                if w.windows(2).any(|p| p[0] > p[1]) {
                    return false;
                }
                let (i, j, k) = (count(w, A), count(w, B), count(w, C));
                i != j && i != k && j != k
            }
            LanguageTag::Say => {
                let n = w.len();
                (0..n).any(|i| w[i] == B && w[n - 1 - i] == B)
            }
            LanguageTag::Eq => (0..t).all(|i| count(w, i) == count(w, t + i)),
            LanguageTag::Neq => (0..t).all(|i| count(w, i) != count(w, t + i)),
            LanguageTag::GtT => (0..t).all(|i| count(w, i) > count(w, t + i)),
            LanguageTag::Bal => count(w, A) == count(w, B),
            LanguageTag::Gt => {
                let (a, b) = (count(w, A), count(w, B));
                a > b && b > 0
            }
            LanguageTag::UpalT | LanguageTag::UpalTStrict => {
                let blocks: Vec<usize> = w.split(|&s| s == B).map(<[usize]>::len).collect();
                if blocks.len() != 2 * t {
                    return false;
                }
                let mirrored = (0..t).all(|i| blocks[i] == blocks[2 * t - 1 - i]);
                mirrored && (self.tag == LanguageTag::UpalT || blocks.iter().all(|&n| n > 0))
            }
            LanguageTag::Twin => {
                let blocks: Vec<&[usize]> = w.split(|&s| s == C).collect();
                blocks.len() == 2 * t && (0..t).all(|i| blocks[i] == blocks[2 * t - 1 - i])
            }
        }
    }
}

fn count(w: &[usize], symbol: usize) -> usize {
    w.iter().filter(|&&s| s == symbol).count()
}

fn is_upal(w: &[usize]) -> bool {
    let n = w.len();
    n.is_multiple_of(2) && w[..n / 2].iter().all(|&s| s == 0) && w[n / 2..].iter().all(|&s| s == 1)
}

/// Concatenation of nonempty `aⁿbⁿ` blocks; the decomposition into maximal
/// `a⁺b⁺` runs is unique.
fn is_upal_star(w: &[usize]) -> bool {
    let mut i = 0;
    while i < w.len() {
        let a_start = i;
        while i < w.len() && w[i] == 0 {
            i += 1;
        }
        let a_len = i - a_start;
        let b_start = i;
        while i < w.len() && w[i] == 1 {
            i += 1;
        }
        let b_len = i - b_start;
        if a_len == 0 || a_len != b_len {
            return false;
        }
    }
    true
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            Some(t) => write!(f, "{}:{}", self.tag.name(), t),
            None => f.write_str(self.tag.name()),
        }
    }
}

impl FromStr for LanguageId {
    type Err = Error;

    /// Parses `"upal"` or `"twin:2"`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, t) = match s.split_once(':') {
            Some((name, t)) => {
                let t = t
                    .parse()
                    .map_err(|_| Error::parse(format!("bad language parameter in {s:?}")))?;
                (name, Some(t))
            }
            None => (s, None),
        };
        let tag = LanguageTag::ALL
            .into_iter()
            .find(|tag| tag.name() == name)
            .ok_or_else(|| Error::parse(format!("unknown language {name:?}")))?;
        LanguageId::new(tag, t)
    }
}

/// Exact membership of `input` in the language `id`.
pub fn oracle(id: LanguageId, input: &str) -> Result<bool> {
    id.contains(input)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn member(id: &str, w: &str) -> bool {
        oracle(id.parse().unwrap(), w).unwrap()
    }

    #[test]
    fn spot_checks() {
        assert!(member("ijk", "abbccc"));
        assert!(!member("ijk", "aabbcc"));
        assert!(member("ijk", "bcc"));
        assert!(!member("ijk", "acb"));
        assert!(member("upal_star", ""));
        assert!(member("upal_star", "aabbab"));
        assert!(!member("upal_star", "abba"));
        assert!(member("say", "bb"));
        assert!(member("say", "b"));
        assert!(member("say", "abba"));
        assert!(!member("say", "a"));
        assert!(!member("say", ""));
        assert!(member("upal", ""));
        assert!(member("upal", "aabb"));
        assert!(!member("upal", "abab"));
        assert!(member("upal_t:2", "abbba"));
        assert!(!member("upal_t:2", "ababa"));
        assert!(member("upal_t:1", "b"));
        assert!(!member("upal_t_strict:1", "b"));
        assert!(member("twin:1", "abcab"));
        assert!(!member("twin:1", "abcba"));
        assert!(member("twin:1", "c"));
        assert!(member("twin:2", "acbcbca"));
        assert!(!member("twin:2", "acbcbcb"));
        assert!(member("eq:2", "a1b1a2b2"));
        assert!(member("neq:1", "a1a1b1"));
        assert!(!member("neq:1", "a1b1"));
        assert!(member("neq:2", "a1a2a2b2"));
        assert!(member("gt", "aab"));
        assert!(!member("gt", "aa"));
        assert!(member("gt_t:1", "a1"));
    }

    #[test]
    fn alphabet_violations_are_errors() {
        assert!(oracle("upal".parse().unwrap(), "abc").is_err());
        assert!("twin".parse::<LanguageId>().is_err());
        assert!("upal:2".parse::<LanguageId>().is_err());
        assert!("nope".parse::<LanguageId>().is_err());
    }

    fn upal_star_dp(w: &[usize]) -> bool {
        // ok[i]: prefix of length i is a concatenation of aⁿbⁿ blocks (n ≥ 1).
        let n = w.len();
        let mut ok = vec![false; n + 1];
        ok[0] = true;
        for end in 1..=n {
            for start in 0..end {
                if ok[start] && (end - start) % 2 == 0 && is_upal(&w[start..end]) {
                    ok[end] = true;
                    break;
                }
            }
        }
        ok[n]
    }

    fn upal_star_naive(w: &[usize]) -> bool {
        w.is_empty()
            || (1..=w.len()).any(|cut| {
                let head = &w[..cut];
                head.len().is_multiple_of(2) && is_upal(head) && upal_star_naive(&w[cut..])
            })
    }

    #[test]
    fn upal_star_agrees_with_dp_and_recursive_split() {
        let id = LanguageId::plain(LanguageTag::UpalStar);
        for w in id.alphabet().words_up_to(14) {
            let expected = upal_star_dp(&w);
            assert_eq!(id.contains_word(&w), expected);
            if w.len() <= 10 {
                assert_eq!(upal_star_naive(&w), expected);
            }
        }
    }

    /// `∃ u1,u2,v1,v2: w = u1 b u2 = v1 b v2 ∧ |u1| = |v2|`, quantifiers spelled out.
    fn say_literal(w: &[usize]) -> bool {
        let n = w.len();
        (0..n).any(|u1| w[u1] == 1 && (0..n).any(|v1| w[v1] == 1 && u1 == n - v1 - 1))
    }

    #[test]
    fn say_agrees_with_literal_definition() {
        let id = LanguageId::plain(LanguageTag::Say);
        for w in id.alphabet().words_up_to(12) {
            assert_eq!(id.contains_word(&w), say_literal(&w));
        }
    }

    #[test]
    fn strict_upal_t_is_a_subset() {
        for t in 1..=3 {
            let loose = LanguageId::with_t(LanguageTag::UpalT, t);
            let strict = LanguageId::with_t(LanguageTag::UpalTStrict, t);
            for w in loose.alphabet().words_up_to(12) {
                if strict.contains_word(&w) {
                    assert!(loose.contains_word(&w));
                }
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["upal", "twin:3", "upal_t_strict:2", "gt_t:1"] {
            assert_eq!(s.parse::<LanguageId>().unwrap().to_string(), s);
        }
    }
}
