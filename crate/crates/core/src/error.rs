use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter {0:?}: words are over the alphabet {{a, b}}")]
    InvalidLetter(char),

    #[error("point {point} out of range for a diagram with {total} points")]
    PointOutOfRange { point: usize, total: usize },

    #[error("not a perfect matching: point {0} is covered {1} times")]
    NotPerfect(usize, usize),

    #[error("matching crosses: pairs {0:?} and {1:?}")]
    Crossing((usize, usize), (usize, usize)),

    #[error("word mismatch in composition: lower word {lower} differs from upper word {upper}")]
    WordMismatch { lower: Word, upper: Word },

    #[error("diagram with {points} points exceeds the cap of {cap} points")]
    CapExceeded { points: usize, cap: usize },

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("orthogonal category requires all-a words, got ({0}, {1})")]
    NotOrthogonal(Word, Word),

    #[error("category kind mismatch: {0}")]
    KindMismatch(String),

    #[error("colorability violation while embedding {0}")]
    Colorability(String),

    #[error("unknown category id {0:?} (expected one of o, h, s, s-prime, u, k, p)")]
    UnknownCategory(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("generators do not generate the group ({generated} of {order} elements reached)")]
    NonGenerating { generated: usize, order: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
