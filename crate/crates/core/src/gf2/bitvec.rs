//! Packed vectors over GF(2).
//!
//! Bit `i` of a vector lives in word `i / 64` at position `i % 64`. Every
//! constructor and mutator keeps the bits past `len` cleared, so word-level
//! population counts never see garbage.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Branch-free SWAR population count; the reference for `u64::count_ones`.
#[inline]
pub fn popcount_portable(mut x: u64) -> u32 {
    x -= (x >> 1) & 0x5555_5555_5555_5555;
    x = (x & 0x3333_3333_3333_3333) + ((x >> 2) & 0x3333_3333_3333_3333);
    x = (x + (x >> 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    (x.wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32
}

/// Population count routed to the hardware instruction when the target has one.
#[inline(always)]
pub fn popcount(x: u64) -> u32 {
    x.count_ones()
}

/// A length-`n` vector over GF(2). Doubles as the indicator of a subset of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    /// Builds a vector from 0-indexed positions. Panics on an out-of-range index.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i);
        }
        v
    }

    /// Low `len` bits of `word`; `len` must be at most 64.
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD_BITS, "from_word needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word;
            v.mask_tail();
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The whole vector as one word, when it fits.
    pub fn as_word(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|&w| popcount(w) as usize).sum()
    }

    /// Hamming weight computed with the portable fallback only.
    pub fn weight_portable(&self) -> usize {
        self.words
            .iter()
            .map(|&w| popcount_portable(w) as usize)
            .sum()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// Coordinatewise XOR.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    /// `wt(self restricted to mask)`, i.e. `|supp(self) ∩ mask|`.
    pub fn project_weight(&self, mask: &Self) -> Result<usize> {
        self.check_len(mask)?;
        Ok(self.and_weight(mask))
    }

    /// XOR in place; lengths are the caller's responsibility.
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[inline]
    pub fn or_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    #[inline]
    pub fn and_weight(&self, other: &Self) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| popcount(a & b) as usize)
            .sum()
    }

    pub fn and(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| a & b)
                .collect(),
        }
    }

    /// Complement within `[len]`.
    pub fn complement(&self) -> Self {
        let mut out = Self {
            len: self.len,
            words: self.words.iter().map(|&w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    /// Positions of set bits, ascending, 0-indexed.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones_iter().next()
    }

    /// Keeps only the listed coordinates, in the given order.
    pub fn select(&self, coords: &[usize]) -> Self {
        Self::from_indices(
            coords.len(),
            coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| self.get(c))
                .map(|(i, _)| i),
        )
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Parses a string of `0`/`1` characters, coordinate 1 leftmost.
impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i),
                other => {
                    return Err(Error::parse(
                        1,
                        i + 1,
                        format!("expected '0' or '1', found {other:?}"),
                    ))
                }
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(bv("000").weight(), 0);
        assert_eq!(bv("1011").weight(), 3);
        assert_eq!(BitVector::zeros(0).weight(), 0);
    }

    #[test]
    fn add_examples() {
        let c = bv("10110");
        assert!(c.add(&c).unwrap().is_zero());
        assert_eq!(bv("110").add(&bv("011")).unwrap(), bv("101"));
        assert!(matches!(
            bv("11").add(&bv("110")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn project_weight_examples() {
        let c = bv("111");
        let s = BitVector::from_indices(3, [1, 2]);
        assert_eq!(c.project_weight(&s).unwrap(), 2);
        assert_eq!(c.project_weight(&BitVector::zeros(3)).unwrap(), 0);
        assert_eq!(c.project_weight(&BitVector::ones(3)).unwrap(), 3);
    }

    #[test]
    fn ones_and_complement_respect_tail() {
        for len in [1, 63, 64, 65, 130] {
            let v = BitVector::ones(len);
            assert_eq!(v.weight(), len);
            assert!(v.complement().is_zero());
            assert_eq!(BitVector::zeros(len).complement(), v);
        }
    }

    #[test]
    fn parse_rejects_other_characters() {
        let err = "1x1".parse::<BitVector>().unwrap_err();
        assert!(matches!(err, Error::Parse { column: 2, .. }));
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
        (0usize..300).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
    }

    proptest! {
        #[test]
        fn weight_matches_bit_loop(bits in proptest::collection::vec(any::<bool>(), 512)) {
            let v = BitVector::from_bools(&bits);
            let naive = bits.iter().filter(|&&b| b).count();
            prop_assert_eq!(v.weight(), naive);
            prop_assert_eq!(v.weight_portable(), naive);
        }

        #[test]
        fn popcount_paths_agree(x in any::<u64>()) {
            prop_assert_eq!(popcount(x), popcount_portable(x));
        }

        #[test]
        fn xor_weight_identity((a, b) in arb_pair()) {
            let u = BitVector::from_bools(&a);
            let v = BitVector::from_bools(&b);
            let lhs = u.add(&v).unwrap().weight();
            let rhs = u.weight() + v.weight() - 2 * u.project_weight(&v).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_parse_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
            let v = BitVector::from_bools(&bits);
            prop_assert_eq!(v.to_string().parse::<BitVector>().unwrap(), v);
        }
    }
}
