//! Input alphabets, words and end-marked tapes.
//!
//! Symbols are arbitrary non-empty strings (`"a"`, `"b1"`, ...). A word is a
//! sequence of symbol indices into its alphabet. Textual inputs are split
//! into symbols by greedy longest match, so `"a1a10"` over `{a1, a10}`
//! tokenizes as `a1 a10`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rendering of the left end-marker.
pub const LEFT_END: &str = "¢";
/// Rendering of the right end-marker.
pub const RIGHT_END: &str = "$";

/// A word over an [`Alphabet`], stored as symbol indices.
pub type Word = Vec<usize>;

/// An ordered, duplicate-free list of input symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::construction("alphabet must be nonempty"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(LEFT_END) || s.contains(RIGHT_END) {
                return Err(Error::construction(format!(
                    "illegal alphabet symbol {s:?}"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(Error::construction(format!(
                    "duplicate alphabet symbol {s:?}"
                )));
            }
        }
        Ok(Self { symbols })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    /// The rendered alphabet `a1..at, b1..bt` used by the counting languages.
    pub fn indexed_pairs(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::usage("indexed alphabet needs t >= 1"));
        }
        let a = (1..=t).map(|i| format!("a{i}"));
        let b = (1..=t).map(|i| format!("b{i}"));
        Self::new(a.chain(b))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// Index of `symbol`, or an error naming the symbol.
    pub fn require(&self, symbol: &str) -> Result<usize> {
        self.index_of(symbol)
            .ok_or_else(|| Error::construction(format!("symbol {symbol:?} is not in the alphabet")))
    }

    /// Splits `input` into symbols by greedy longest match.
    pub fn tokenize(&self, input: &str) -> Result<Word> {
        let mut word = Vec::new();
        let mut rest = input;
        let mut offset = 0;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    word.push(i);
                    rest = &rest[s.len()..];
                    offset += s.chars().count();
                }
                None => {
                    let found = rest.chars().next().map(String::from).unwrap_or_default();
                    return Err(Error::InvalidSymbol {
                        position: offset,
                        found,
                    });
                }
            }
        }
        Ok(word)
    }

    pub fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i].as_str()).collect()
    }

    /// Renders a tape symbol, including the end-markers.
    pub fn render_tape(&self, symbol: TapeSymbol) -> &str {
        match symbol {
            TapeSymbol::LeftEnd => LEFT_END,
            TapeSymbol::RightEnd => RIGHT_END,
            TapeSymbol::Letter(i) => &self.symbols[i],
        }
    }

    /// Parses a rendered tape symbol.
    pub fn parse_tape(&self, text: &str) -> Result<TapeSymbol> {
        match text {
            LEFT_END => Ok(TapeSymbol::LeftEnd),
            RIGHT_END => Ok(TapeSymbol::RightEnd),
            other => self
                .index_of(other)
                .map(TapeSymbol::Letter)
                .ok_or_else(|| Error::parse(format!("unknown tape symbol {other:?}"))),
        }
    }

    /// All tape symbols in the order ¢, letters, $.
    pub fn tape_symbols(&self) -> Vec<TapeSymbol> {
        let mut out = Vec::with_capacity(self.len() + 2);
        out.push(TapeSymbol::LeftEnd);
        out.extend((0..self.len()).map(TapeSymbol::Letter));
        out.push(TapeSymbol::RightEnd);
        out
    }

    /// Dense index of a tape symbol: ¢ is 0, letters follow, $ is last.
    pub fn tape_index(&self, symbol: TapeSymbol) -> usize {
        match symbol {
            TapeSymbol::LeftEnd => 0,
            TapeSymbol::Letter(i) => i + 1,
            TapeSymbol::RightEnd => self.len() + 1,
        }
    }

    /// Every word of length at most `max_len`, in length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> WordsUpTo {
        WordsUpTo {
            radix: self.len(),
            max_len,
            current: Some(Vec::new()),
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(symbols: Vec<String>) -> Result<Self> {
        Alphabet::new(symbols)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(alphabet: Alphabet) -> Self {
        alphabet.symbols
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

/// A square of the input tape `¢ w $`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeSymbol {
    LeftEnd,
    Letter(usize),
    RightEnd,
}

/// The tape `¢ w $`; square `x` (1-based) is `tape[x - 1]`.
pub fn tape(word: &[usize]) -> Vec<TapeSymbol> {
    let mut out = Vec::with_capacity(word.len() + 2);
    out.push(TapeSymbol::LeftEnd);
    out.extend(word.iter().map(|&i| TapeSymbol::Letter(i)));
    out.push(TapeSymbol::RightEnd);
    out
}

/// Iterator behind [`Alphabet::words_up_to`].
#[derive(Clone, Debug)]
pub struct WordsUpTo {
    radix: usize,
    max_len: usize,
    current: Option<Word>,
}

impl Iterator for WordsUpTo {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                if next.len() < self.max_len {
                    next = vec![0; next.len() + 1];
                    self.current = Some(next);
                }
                break;
            }
            i -= 1;
            if next[i] + 1 < self.radix {
                next[i] += 1;
                for digit in next.iter_mut().skip(i + 1) {
                    *digit = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
