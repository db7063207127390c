//! Single-word fast paths for codes of length at most 63, where a subset of
//! `[n]` is a `u64` mask and a constraint check is two popcounts.

use super::{gray, LinearCode};
use crate::error::{Error, Result};

/// Largest length the packed routines accept; `2^n` must fit an index.
pub const PACKED_MAX_N: usize = 63;

/// Nonzero codewords with their weights, in Gray order.
#[derive(Clone, Debug)]
pub(crate) struct PackedCode {
    pub n: usize,
    pub words: Vec<(u64, u32)>,
}

impl PackedCode {
    pub fn new(code: &LinearCode) -> Result<Self> {
        if code.len() > PACKED_MAX_N {
            return Err(Error::LengthTooLarge {
                n: code.len(),
                cap: PACKED_MAX_N,
            });
        }
        let words = code
            .codewords()?
            .filter(|c| !c.is_zero())
            .map(|c| {
                let w = c.as_word().expect("n <= 63 fits one word");
                (w, w.count_ones())
            })
            .collect();
        Ok(Self {
            n: code.len(),
            words,
        })
    }

    /// Same words reordered lightest first; a violation tends to show up early
    /// there. Only for callers that don't report which codeword failed.
    pub fn lightest_first(mut self) -> Self {
        self.words.sort_by_key(|&(_, w)| w);
        self
    }

    /// `q·wt(c ∧ s) ≥ p·wt(c)` for every stored codeword.
    #[inline]
    pub fn passes(&self, s: u64, p: u64, q: u64) -> bool {
        self.words
            .iter()
            .all(|&(c, w)| q * u64::from((c & s).count_ones()) >= p * u64::from(w))
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            u64::MAX >> (64 - self.n)
        }
    }
}

/// Subset mask at Gray index `i` of the census walk over `2^n`.
#[inline]
pub(crate) fn subset_at(i: u64) -> u64 {
    gray(i)
}

pub(crate) fn check_packed_len(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(PACKED_MAX_N);
    if n > cap {
        return Err(Error::LengthTooLarge { n, cap });
    }
    Ok(())
}

/// All `m`-subsets of `{0..n}` as masks, in lexicographic order of their
/// sorted index tuples (`{0,1} < {0,2} < {1,2}`).
///
/// Coordinate `i` is placed on bit `n-1-i`, where lex order becomes
/// decreasing numeric order; that walk is the complement of Gosper's
/// increasing walk over `(n-m)`-subsets. Masks are mapped back before
/// being yielded.
pub struct LexSubsets {
    n: usize,
    full: u64,
    // complement mask in reversed bit order; `None` once exhausted
    next_rev_complement: Option<u64>,
}

impl LexSubsets {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n <= PACKED_MAX_N, "LexSubsets supports n <= 63");
        let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let next = if m > n {
            None
        } else {
            Some(if n - m == 0 {
                0
            } else {
                u64::MAX >> (64 - (n - m))
            })
        };
        Self {
            n,
            full,
            next_rev_complement: next,
        }
    }

    fn reverse(&self, x: u64) -> u64 {
        if self.n == 0 {
            0
        } else {
            x.reverse_bits() >> (64 - self.n)
        }
    }
}

impl Iterator for LexSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let y = self.next_rev_complement?;
        let rev_mask = self.full & !y;
        self.next_rev_complement = if y == 0 {
            None
        } else {
            // Gosper's hack: next larger integer with the same popcount.
            let c = y & y.wrapping_neg();
            let r = y + c;
            let nxt = (((r ^ y) >> 2) / c) | r;
            (nxt <= self.full && r != 0).then_some(nxt)
        };
        Some(self.reverse(rev_mask))
    }
}
