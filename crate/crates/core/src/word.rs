use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One letter of a word: `A` indexes `u`, `B` indexes the conjugate `ū`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn bar(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A finite word over `{a, b}` indexing the tensor power `u^α`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `a^k`, the orthogonal word of length `k`.
    pub fn all_a(k: usize) -> Self {
        Word(vec![Letter::A; k])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_a(&self) -> bool {
        self.0.iter().all(|&l| l == Letter::A)
    }

    /// Letterwise bar `a ↔ b`.
    pub fn bar(&self) -> Word {
        Word(self.0.iter().map(|l| l.bar()).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }
}

/// `γ_k = abab…` with `k` letters.
pub fn gamma(k: usize) -> Word {
    Word((0..k).map(|i| if i % 2 == 0 { Letter::A } else { Letter::B }).collect())
}

/// `δ_k = baba…` with `k` letters.
pub fn delta(k: usize) -> Word {
    gamma(k).bar()
}

/// All words of length `k`, in lexicographic order.
pub fn all_words(k: usize) -> Vec<Word> {
    (0..1usize << k)
        .map(|mask| {
            Word(
                (0..k)
                    .map(|i| if mask >> (k - 1 - i) & 1 == 1 { Letter::B } else { Letter::A })
                    .collect(),
            )
        })
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: String = self.0.iter().map(|l| l.as_char()).collect();
        s.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
