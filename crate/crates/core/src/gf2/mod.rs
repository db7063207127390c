//! GF(2) vectors, matrices, and linear codes.

mod bitvec;
mod code;
mod matrix;
pub(crate) mod packed;

pub use bitvec::{popcount, popcount_portable, BitVector};
pub use code::{gray, Codewords, CosetLabel, LinearCode, DEFAULT_MAX_K};
pub use matrix::{row_reduce, Gf2Matrix, RowReduced};
pub use packed::LexSubsets;

/// Hamming weight of `v`.
pub fn weight(v: &BitVector) -> usize {
    v.weight()
}

/// Coordinatewise XOR of two equal-length vectors.
pub fn add(u: &BitVector, v: &BitVector) -> crate::Result<BitVector> {
    u.add(v)
}

/// `wt(c_S)`: weight of `c` restricted to the coordinates in `s`.
pub fn project_weight(c: &BitVector, s: &BitVector) -> crate::Result<usize> {
    c.project_weight(s)
}
