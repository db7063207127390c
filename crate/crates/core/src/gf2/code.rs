//! Binary linear codes given by a generator matrix.

use rand::Rng;

use super::matrix::{row_reduce, Gf2Matrix};
use super::BitVector;
use crate::error::{Error, Result};

/// Default cap on `k` for any operation that enumerates all `2^k` codewords.
pub const DEFAULT_MAX_K: usize = 28;

/// A linear code `C ⊆ F₂ⁿ` with its reduced basis cached at construction.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    generators: Gf2Matrix,
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
    max_k: usize,
}

/// Canonical representative of the coset `v + C`: the reduction of `v`
/// against the basis, restricted to the non-pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    pub canonical: BitVector,
}

impl LinearCode {
    pub fn new(generators: Gf2Matrix) -> Self {
        let rr = row_reduce(&generators);
        Self {
            n: generators.cols(),
            generators,
            basis: rr.basis,
            pivots: rr.pivots,
            max_k: DEFAULT_MAX_K,
        }
    }

    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        Ok(Self::new(Gf2Matrix::new(n, rows)?))
    }

    /// Parses each row from a `0`/`1` string. Handy in tests.
    pub fn from_strs(n: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse())
            .collect::<Result<Vec<BitVector>>>()?;
        Self::from_rows(n, rows)
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(n: usize) -> Self {
        Self::new(Gf2Matrix::empty(n))
    }

    /// All of `F₂ⁿ`.
    pub fn full(n: usize) -> Self {
        Self::new(Gf2Matrix::identity(n))
    }

    /// The `[n, 1]` repetition code.
    pub fn repetition(n: usize) -> Self {
        let rows = if n == 0 {
            vec![]
        } else {
            vec![BitVector::ones(n)]
        };
        Self::from_rows(n, rows).expect("rows have length n")
    }

    /// Even-weight code of length `n`, dimension `n - 1`.
    pub fn even_weight(n: usize) -> Self {
        let rows = (1..n).map(|i| BitVector::from_indices(n, [0, i])).collect();
        Self::from_rows(n, rows).expect("rows have length n")
    }

    /// The `[7, 4]` Hamming code in systematic form.
    pub fn hamming_7_4() -> Self {
        Self::from_strs(7, &["1000110", "0100101", "0010011", "0001111"]).expect("well-formed rows")
    }

    /// `k` uniformly random generator rows; the rank may come out below `k`.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let rows = (0..k)
            .map(|_| BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>())))
            .collect();
        Self::from_rows(n, rows).expect("rows have length n")
    }

    /// Overrides the cap on `k` for full codeword enumeration.
    pub fn with_enumeration_cap(mut self, max_k: usize) -> Self {
        self.max_k = max_k;
        self
    }

    pub fn enumeration_cap(&self) -> usize {
        self.max_k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension `k` (rank of the generators).
    #[inline]
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &Gf2Matrix {
        &self.generators
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the result is zero on every pivot column.
    pub fn reduce(&self, v: &BitVector) -> Result<BitVector> {
        self.check_len(v)?;
        let mut r = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn coset_label(&self, v: &BitVector) -> Result<CosetLabel> {
        let reduced = self.reduce(v)?;
        let free: Vec<usize> = self.free_columns();
        Ok(CosetLabel {
            canonical: reduced.select(&free),
        })
    }

    /// Columns that are not pivots, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivots.iter().peekable();
        (0..self.n)
            .filter(|&c| {
                if pivots.peek() == Some(&&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Every coordinate lies in the support of some codeword.
    pub fn is_nondegenerate(&self) -> bool {
        let mut covered = BitVector::zeros(self.n);
        for row in &self.basis {
            covered.or_assign(row);
        }
        covered.weight() == self.n
    }

    fn check_cap(&self) -> Result<()> {
        let k = self.dimension();
        if k > self.max_k || k >= 64 {
            return Err(Error::DimensionTooLarge {
                k,
                cap: self.max_k.min(63),
            });
        }
        Ok(())
    }

    /// All `2^k` codewords in Gray-code order over basis combinations.
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        self.check_cap()?;
        Ok(Codewords::new(
            &self.basis,
            self.n,
            0,
            1u64 << self.dimension(),
        ))
    }

    /// Codewords with Gray index in `start..end`, for splitting work into
    /// independent streams.
    pub fn codewords_range(&self, start: u64, end: u64) -> Result<Codewords<'_>> {
        self.check_cap()?;
        let total = 1u64 << self.dimension();
        Ok(Codewords::new(
            &self.basis,
            self.n,
            start.min(total),
            end.min(total),
        ))
    }

    pub fn codeword_list(&self) -> Result<Vec<BitVector>> {
        Ok(self.codewords()?.collect())
    }

    /// Restriction of the code to `coords` (in that order): project every
    /// generator and reduce again. The dimension can drop.
    pub fn project(&self, coords: &[usize]) -> LinearCode {
        let rows = self
            .generators
            .rows()
            .iter()
            .map(|g| g.select(coords))
            .collect();
        LinearCode::from_rows(coords.len(), rows)
            .expect("projected rows share a length")
            .with_enumeration_cap(self.max_k)
    }
}

/// Gray-code stream of codewords; consecutive items differ by one basis row.
pub struct Codewords<'a> {
    basis: &'a [BitVector],
    current: BitVector,
    index: u64,
    end: u64,
}

/// `i`-th Gray code.
#[inline]
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

impl<'a> Codewords<'a> {
    fn new(basis: &'a [BitVector], n: usize, start: u64, end: u64) -> Self {
        let mut current = BitVector::zeros(n);
        let g = gray(start);
        for (j, row) in basis.iter().enumerate() {
            if (g >> j) & 1 == 1 {
                current.xor_assign(row);
            }
        }
        Self {
            basis,
            current,
            index: start,
            end,
        }
    }

    /// Gray index of the next codeword to be yielded.
    pub fn position(&self) -> u64 {
        self.index
    }
}

impl Iterator for Codewords<'_> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.index >= self.end {
            return None;
        }
        let out = self.current.clone();
        self.index += 1;
        if self.index < self.end {
            let j = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[j]);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords<'_> {}
