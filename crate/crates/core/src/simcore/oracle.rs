use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Immutable black-box bit string `X = (x_0, ..., x_{N-1})`.
///
/// Lookups outside `0..N` answer 0, which keeps the oracle gate a
/// permutation when the index register has spare values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitOracle {
    bits: Vec<bool>,
}

impl BitOracle {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(domain("oracle needs at least one bit"));
        }
        Ok(BitOracle { bits })
    }

    /// Parses a string such as `"0100"`; the leftmost character is `x_0`.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(domain(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    /// Bit `j` of `mask` becomes `x_j`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(domain("mask form supports at most 64 bits"));
        }
        Self::new((0..n).map(|j| mask >> j & 1 == 1).collect())
    }

    /// `width`-bit binary encoding of `value`, most significant bit at position 0.
    pub fn from_integer(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > 64 || (width < 64 && value >> width != 0) {
            return Err(domain(format!("{value} does not fit in {width} bits")));
        }
        Self::new((0..width).map(|p| value >> (width - 1 - p) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, j: usize) -> bool {
        self.bits[j]
    }

    /// `x_j`, or 0 for indices past the end.
    pub fn query(&self, j: u64) -> bool {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.bits.get(j).copied())
            .unwrap_or(false)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Hamming weight `|X|`.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Inverse of [`BitOracle::from_integer`].
    pub fn to_integer(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| acc << 1 | b as u64)
    }
}

impl fmt::Display for BitOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_is_left_to_right() {
        let x = BitOracle::parse("0110").unwrap();
        assert!(!x.bit(0) && x.bit(1) && x.bit(2) && !x.bit(3));
        assert_eq!(x.to_string(), "0110");
        assert_eq!(x.weight(), 2);
    }

    #[test]
    fn out_of_range_queries_read_zero() {
        let x = BitOracle::parse("111").unwrap();
        assert!(x.query(2));
        assert!(!x.query(3));
        assert!(!x.query(u64::MAX));
    }

    #[test]
    fn integer_round_trip_is_msb_first() {
        let y = BitOracle::from_integer(0b0100, 4).unwrap();
        assert_eq!(y.to_string(), "0100");
        assert_eq!(y.to_integer(), 4);
        assert!(BitOracle::from_integer(16, 4).is_err());
    }

    #[test]
    fn rejects_empty_and_junk() {
        assert!(BitOracle::new(vec![]).is_err());
        assert!(BitOracle::parse("01x").is_err());
    }
}
