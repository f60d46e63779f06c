//! Packed binary strings and the Mirkin distance.
//!
//! Positions are 1-indexed in every public method. Internally bits are
//! packed most-significant-first into `u64` words, so comparing the word
//! vectors of two equal-length strings is lexicographic comparison.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[inline]
fn locate(pos: usize) -> (usize, u64) {
    let i = pos - 1;
    (i / WORD, 1u64 << (WORD - 1 - i % WORD))
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        Self::zeros(len).complement()
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            len += 1;
            if b {
                let (w, mask) = locate(len);
                words[w] |= mask;
            }
        }
        BitString { len, words }
    }

    /// The low `len` bits of `value`, position 1 taken from bit `len - 1`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        Self::from_bits((0..len).map(|i| (value >> (len - 1 - i)) & 1 == 1))
    }

    /// Inverse of [`BitString::from_u64`]; `None` for strings longer than 64.
    pub fn to_u64(&self) -> Option<u64> {
        if self.len > WORD {
            return None;
        }
        if self.len == 0 {
            return Some(0);
        }
        Some(self.words[0] >> (WORD - self.len))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at 1-indexed `pos`, or `None` outside `1..=len`.
    #[inline]
    pub fn get(&self, pos: usize) -> Option<bool> {
        if pos == 0 || pos > self.len {
            return None;
        }
        let (w, mask) = locate(pos);
        Some(self.words[w] & mask != 0)
    }

    /// Bit at 1-indexed `pos`. Panics outside `1..=len`.
    #[inline]
    pub fn bit(&self, pos: usize) -> bool {
        self.get(pos)
            .unwrap_or_else(|| panic!("position {pos} out of range 1..={}", self.len))
    }

    pub fn set(&mut self, pos: usize, value: bool) -> Result<()> {
        if pos == 0 || pos > self.len {
            return Err(Error::PositionOutOfRange { pos, len: self.len });
        }
        let (w, mask) = locate(pos);
        if value {
            self.words[w] |= mask;
        } else {
            self.words[w] &= !mask;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |p| self.bit(p + 1))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.len % WORD;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= !0u64 << (WORD - tail);
            }
        }
        BitString {
            len: self.len,
            words,
        }
    }

    pub fn concat(&self, other: &BitString) -> Self {
        Self::from_bits(self.iter().chain(other.iter()))
    }

    /// The substring from `from` to `to`, both inclusive and 1-indexed.
    pub fn slice(&self, from: usize, to: usize) -> Result<Self> {
        if from == 0 || from > self.len + 1 {
            return Err(Error::PositionOutOfRange {
                pos: from,
                len: self.len,
            });
        }
        if to > self.len || to + 1 < from {
            return Err(Error::PositionOutOfRange {
                pos: to,
                len: self.len,
            });
        }
        Ok(Self::from_bits((from..=to).map(|p| self.bit(p))))
    }

    /// `self[1..pos-1] ∘ frag ∘ self[pos..]`, for `1 <= pos <= len + 1`.
    pub fn insert(&self, frag: &BitString, pos: usize) -> Result<Self> {
        if pos == 0 || pos > self.len + 1 {
            return Err(Error::PositionOutOfRange { pos, len: self.len });
        }
        let head = (1..pos).map(|p| self.bit(p));
        let tail = (pos..=self.len).map(|p| self.bit(p));
        Ok(Self::from_bits(head.chain(frag.iter()).chain(tail)))
    }

    /// Removes `count` positions starting at `pos`.
    pub fn remove(&self, pos: usize, count: usize) -> Result<Self> {
        if pos == 0 || pos + count > self.len + 1 {
            return Err(Error::PositionOutOfRange { pos, len: self.len });
        }
        Ok(Self::from_bits(
            (1..=self.len)
                .filter(|&p| p < pos || p >= pos + count)
                .map(|p| self.bit(p)),
        ))
    }
}

impl Ord for BitString {
    /// Shorter strings first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::parse(
                        1,
                        format!("invalid character {other:?} at column {}", i + 1),
                    ))
                }
            }
        }
        Ok(Self::from_bits(bits))
    }
}

fn check_lengths(s: &BitString, t: &BitString) -> Result<()> {
    if s.len != t.len {
        return Err(Error::LengthMismatch {
            left: s.len,
            right: t.len,
        });
    }
    Ok(())
}

/// Number of positions where `s` and `t` differ.
pub fn hamming(s: &BitString, t: &BitString) -> Result<usize> {
    check_lengths(s, t)?;
    Ok(s.words
        .iter()
        .zip(&t.words)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}

/// Mirkin distance `d·(n−d)` with `d` the Hamming distance.
pub fn mirkin_pair(s: &BitString, t: &BitString) -> Result<u64> {
    let d = hamming(s, t)? as u64;
    let n = s.len as u64;
    d.checked_mul(n - d)
        .ok_or_else(|| Error::overflow("mirkin_pair"))
}
