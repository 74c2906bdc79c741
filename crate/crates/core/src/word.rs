//! Finite binary words, bit-packed.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`. A set bit is the spacer symbol `1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    bits: BitVec<u64, Lsb0>,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Word {
            bits: BitVec::with_capacity(capacity),
        }
    }

    /// Builds a word from raw symbols, rejecting anything other than 0 and 1.
    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        let mut w = Word::with_capacity(symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            if s > 1 {
                return Err(Error::InvalidParameter(format!(
                    "symbol {s} at position {i} is not binary"
                )));
            }
            w.push(s);
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Symbol at `i` (0 or 1). Panics when out of range.
    pub fn get(&self, i: usize) -> u8 {
        self.bits[i] as u8
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        self.bits.iter().by_vals().map(|b| b as u8)
    }

    pub fn push(&mut self, symbol: u8) {
        debug_assert!(symbol <= 1);
        self.bits.push(symbol == 1);
    }

    /// Appends `count` copies of `symbol`.
    pub fn push_run(&mut self, symbol: u8, count: usize) {
        let new_len = self.bits.len() + count;
        self.bits.resize(new_len, symbol == 1);
    }

    pub fn append(&mut self, other: &Word) {
        self.bits.extend_from_bitslice(&other.bits);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut w = Word::with_capacity(self.len() * times);
        for _ in 0..times {
            w.append(self);
        }
        w
    }

    /// The factor of length `len` starting at `start`.
    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word {
            bits: self.bits[start..start + len].to_bitvec(),
        }
    }

    pub fn suffix(&self, len: usize) -> Word {
        self.slice(self.len() - len, len)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        prefix.len() <= self.len() && self.bits[..prefix.len()] == prefix.bits
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        suffix.len() <= self.len() && self.bits[self.len() - suffix.len()..] == suffix.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.count_zeros()
    }

    /// Number of trailing `1` symbols.
    pub fn trailing_ones(&self) -> usize {
        self.bits.trailing_ones()
    }

    /// Number of (possibly overlapping) occurrences of `pattern`.
    pub fn occurrences(&self, pattern: &Word) -> usize {
        if pattern.is_empty() || pattern.len() > self.len() {
            return 0;
        }
        let m = pattern.len();
        self.bits
            .windows(m)
            .filter(|w| *w == pattern.bits.as_bitslice())
            .count()
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => w.push(0),
                '1' => w.push(1),
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "character {c:?} at position {i} is not binary"
                    )))
                }
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits.iter().by_vals() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 64 {
            write!(f, "Word(\"{self}\")")
        } else {
            write!(f, "Word(len={}, prefix=\"{}\")", self.len(), self.slice(0, 32))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "0101001010".parse().unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w.to_string(), "0101001010");
        assert_eq!(w.count_zeros(), 6);
        assert!("012".parse::<Word>().is_err());
        assert!(Word::from_symbols(&[0, 1, 2]).is_err());
    }

    #[test]
    fn prefix_suffix_and_slices() {
        let w: Word = "01011010".parse().unwrap();
        assert!(w.starts_with(&"010".parse().unwrap()));
        assert!(w.ends_with(&"010".parse().unwrap()));
        assert!(!w.ends_with(&"110".parse().unwrap()));
        assert_eq!(w.slice(2, 3).to_string(), "011");
        assert_eq!(w.suffix(2).to_string(), "10");
        let t: Word = "011".parse().unwrap();
        assert_eq!(t.trailing_ones(), 2);
    }

    #[test]
    fn runs_and_repeats() {
        let mut w: Word = "0".parse().unwrap();
        w.push_run(1, 3);
        assert_eq!(w.to_string(), "0111");
        assert_eq!(w.repeat(2).to_string(), "01110111");
        let pat: Word = "11".parse().unwrap();
        assert_eq!(w.repeat(2).occurrences(&pat), 4);
    }
}
