//! The pebble-position encoding.
//!
//! A word `a1 … ak` is replicated into `k + 2` segments, one per possible
//! pebble position:
//!
//! ```text
//! a1 … ak <  > a1* a2 … ak <  > a1 a2* … ak <  …  > a1 … ak* <  > a1 … ak
//! ```
//!
//! Segment `p` (for `1 ≤ p ≤ k`) marks its `p`-th letter with a box. The
//! opening `>` belongs to the segment it opens and the closing `<` to the
//! segment it closes, so inside segment `p` the stopper `>` sits at
//! within-segment position 0 and `<` at `k + 1`, mirroring the endmarkers of
//! the original tape. Positions here are 0-based over the token sequence,
//! without the endmarkers a tape adds around it.

use thiserror::Error;

use crate::automaton::{Symbol, TapeSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("position {position} is outside an encoded word of {len} tokens")]
    OutOfRange { position: usize, len: usize },
    #[error("only plain letters can be encoded, found {0}")]
    NotPlain(TapeSymbol),
}

/// An encoded word together with its segment map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedWord {
    tokens: Vec<TapeSymbol>,
    segments: Vec<usize>,
    source_length: usize,
}

impl EncodedWord {
    pub fn tokens(&self) -> &[TapeSymbol] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<TapeSymbol> {
        self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    pub fn segment_count(&self) -> usize {
        self.source_length + 2
    }

    pub fn segment_of(&self, position: usize) -> Result<usize, EncodingError> {
        self.segments
            .get(position)
            .copied()
            .ok_or(EncodingError::OutOfRange {
                position,
                len: self.tokens.len(),
            })
    }

    /// Token positions `[start, end)` of a segment.
    pub fn segment_range(&self, segment: usize) -> Option<std::ops::Range<usize>> {
        let start = self.segments.iter().position(|&s| s == segment)?;
        let end = self.segments.iter().rposition(|&s| s == segment)? + 1;
        Some(start..end)
    }
}

/// Number of tokens in the encoding of a word of length `k`.
pub fn encoded_len(k: usize) -> usize {
    k * k + 4 * k + 2
}

pub fn encode(word: &[Symbol]) -> EncodedWord {
    let k = word.len();
    let mut tokens = Vec::with_capacity(encoded_len(k));
    let mut segments = Vec::with_capacity(encoded_len(k));
    for p in 0..=k + 1 {
        if p > 0 {
            tokens.push(TapeSymbol::LeftStopper);
            segments.push(p);
        }
        for (i, a) in word.iter().enumerate() {
            tokens.push(if i + 1 == p {
                TapeSymbol::Boxed(a.clone())
            } else {
                TapeSymbol::Plain(a.clone())
            });
            segments.push(p);
        }
        if p <= k {
            tokens.push(TapeSymbol::RightStopper);
            segments.push(p);
        }
    }
    EncodedWord {
        tokens,
        segments,
        source_length: k,
    }
}

/// Encodes a word given as tape symbols; every symbol must be plain.
pub fn encode_tape(word: &[TapeSymbol]) -> Result<EncodedWord, EncodingError> {
    let letters = word
        .iter()
        .map(|s| match s {
            TapeSymbol::Plain(a) => Ok(a.clone()),
            other => Err(EncodingError::NotPlain(other.clone())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(encode(&letters))
}

/// True iff `tokens` is the encoding of some word.
pub fn is_valid_image(tokens: &[TapeSymbol]) -> bool {
    let Some(first_stop) = tokens.iter().position(|t| *t == TapeSymbol::RightStopper) else {
        return false;
    };
    let source: Option<Vec<Symbol>> = tokens[..first_stop]
        .iter()
        .map(|t| match t {
            TapeSymbol::Plain(a) => Some(a.clone()),
            _ => None,
        })
        .collect();
    match source {
        Some(w) => encoded_len(w.len()) == tokens.len() && encode(&w).tokens == tokens,
        None => false,
    }
}

/// Space-separated token rendering.
pub fn format_tokens(tokens: &[TapeSymbol]) -> String {
    tokens
        .iter()
        .map(TapeSymbol::token)
        .collect::<Vec<_>>()
        .join(" ")
}
