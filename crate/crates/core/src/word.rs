//! Binary words of length `n <= 64`.
//!
//! Coordinate 1 is the leftmost character of the literal and the most
//! significant bit of the `n`-bit field, so `"000011"` is the integer 3 and
//! has ones in coordinates 5 and 6.

use std::fmt;
use std::ops::{Add, BitXor};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_LEN: u32 = 64;

#[inline]
pub(crate) fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub(crate) fn parity(bits: u64) -> u32 {
    bits.count_ones() & 1
}

/// A vector of GF(2)^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryWord {
    bits: u64,
    len: u32,
}

impl BinaryWord {
    pub fn new(bits: u64, len: u32) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::Shape(format!("word length {len} not in 1..=64")));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::Shape(format!("value {bits:#x} does not fit in {len} bits")));
        }
        Ok(BinaryWord { bits, len })
    }

    /// Unchecked constructor for internal hot paths; masks off stray bits.
    #[inline]
    pub(crate) fn from_raw(bits: u64, len: u32) -> Self {
        BinaryWord { bits: bits & low_mask(len), len }
    }

    pub fn zero(len: u32) -> Self {
        BinaryWord::from_raw(0, len)
    }

    pub fn ones(len: u32) -> Self {
        BinaryWord::from_raw(u64::MAX, len)
    }

    /// The word with a single one in coordinate `coord` (1-based).
    pub fn unit(coord: u32, len: u32) -> Result<Self> {
        if coord == 0 || coord > len {
            return Err(Error::Index { index: coord as usize, max: len as usize });
        }
        Ok(BinaryWord::from_raw(1u64 << (len - coord), len))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.len
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn parity(self) -> u32 {
        parity(self.bits)
    }

    /// Value of coordinate `coord` (1-based).
    pub fn coord(self, coord: u32) -> bool {
        debug_assert!(coord >= 1 && coord <= self.len);
        (self.bits >> (self.len - coord)) & 1 == 1
    }

    pub fn distance(self, other: BinaryWord) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    pub fn complement(self) -> Self {
        BinaryWord::from_raw(!self.bits, self.len)
    }

    /// Concatenation: `self` occupies the leading coordinates.
    pub fn concat(self, tail: BinaryWord) -> Result<Self> {
        let len = self.len + tail.len;
        if len > MAX_LEN {
            return Err(Error::Shape(format!("concatenated length {len} exceeds 64")));
        }
        Ok(BinaryWord::from_raw((self.bits << tail.len) | tail.bits, len))
    }

    /// Parses a fixed-width binary literal or a `0x` hex literal of width `len`.
    pub fn parse(s: &str, len: u32) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let bits = u64::from_str_radix(hex, 16)
                .map_err(|e| Error::Parse(format!("bad hex word {s:?}: {e}")))?;
            return BinaryWord::new(bits, len);
        }
        if s.len() != len as usize {
            return Err(Error::Parse(format!("word {s:?} does not have length {len}")));
        }
        BinaryWord::parse_binary(s)
    }

    /// Parses a binary literal, taking the length from the literal itself.
    pub fn parse_binary(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_LEN as usize {
            return Err(Error::Parse(format!("binary word {s:?} must have 1..=64 symbols")));
        }
        let mut bits = 0u64;
        for ch in s.chars() {
            bits <<= 1;
            match ch {
                '0' => {}
                '1' => bits |= 1,
                _ => return Err(Error::Parse(format!("unexpected symbol {ch:?} in word {s:?}"))),
            }
        }
        Ok(BinaryWord { bits, len: s.len() as u32 })
    }
}

impl Add for BinaryWord {
    type Output = BinaryWord;

    fn add(self, rhs: BinaryWord) -> BinaryWord {
        debug_assert_eq!(self.len, rhs.len);
        BinaryWord { bits: self.bits ^ rhs.bits, len: self.len }
    }
}

impl BitXor for BinaryWord {
    type Output = BinaryWord;

    fn bitxor(self, rhs: BinaryWord) -> BinaryWord {
        debug_assert_eq!(self.len, rhs.len);
        BinaryWord { bits: self.bits ^ rhs.bits, len: self.len }
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.len as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_coordinates() {
        let w = BinaryWord::parse("000011", 6).unwrap();
        assert_eq!(w.bits(), 3);
        assert!(w.coord(5) && w.coord(6) && !w.coord(1));
        assert_eq!(w.to_string(), "000011");
        assert_eq!(BinaryWord::parse("0x03", 6).unwrap(), w);
        assert_eq!(BinaryWord::unit(1, 6).unwrap().to_string(), "100000");
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(BinaryWord::parse("0012", 4).is_err());
        assert!(BinaryWord::parse("001", 4).is_err());
        assert!(BinaryWord::parse("0x1f", 4).is_err());
        assert!(BinaryWord::new(0, 65).is_err());
    }

    #[test]
    fn concat_puts_head_first() {
        let x = BinaryWord::parse("110", 3).unwrap();
        let y = BinaryWord::parse("001", 3).unwrap();
        assert_eq!(x.concat(y).unwrap().to_string(), "110001");
    }

    proptest! {
        #[test]
        fn xor_is_a_group(a in any::<u64>(), b in any::<u64>(), n in 1u32..=64) {
            let x = BinaryWord::from_raw(a, n);
            let y = BinaryWord::from_raw(b, n);
            prop_assert_eq!(x + x, BinaryWord::zero(n));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x + y).weight(), x.distance(y));
            prop_assert_eq!(x.parity(), x.weight() % 2);
            prop_assert_eq!(BinaryWord::parse(&x.to_string(), n).unwrap(), x);
        }
    }
}
