use super::BitVector;
use crate::error::{Error, Result};

/// Rows of equal length over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Output of [`row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduced {
    /// Nonzero rows of the reduced row-echelon form, ordered by pivot.
    pub basis: Vec<BitVector>,
    /// Pivot column of each basis row, strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Gf2Matrix {
    pub fn new(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        Self {
            cols: size,
            rows: (0..size)
                .map(|i| BitVector::from_indices(size, [i]))
                .collect(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }
}

/// Gauss-Jordan elimination. The pivot of each step is the smallest column
/// index not yet eliminated, so the result is the unique RREF of the row space.
pub fn row_reduce(m: &Gf2Matrix) -> RowReduced {
    let mut rows: Vec<BitVector> = m.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    RowReduced {
        basis: rows,
        pivots,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&str]) -> Gf2Matrix {
        let rows: Vec<BitVector> = rows.iter().map(|r| r.parse().unwrap()).collect();
        Gf2Matrix::new(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        for k in 0..10 {
            let rr = row_reduce(&Gf2Matrix::identity(k));
            assert_eq!(rr.rank, k);
            assert_eq!(rr.pivots, (0..k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn dependent_rows() {
        let rr = row_reduce(&matrix(&["110", "011", "101"]));
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.pivots, vec![0, 1]);
        assert_eq!(rr.basis[0].to_string(), "101");
        assert_eq!(rr.basis[1].to_string(), "011");
    }

    #[test]
    fn zero_rows_are_dropped() {
        let rr = row_reduce(&matrix(&["000", "000"]));
        assert_eq!(rr.rank, 0);
        assert!(rr.basis.is_empty());
    }

    #[test]
    fn mismatched_rows_rejected() {
        let rows = vec!["11".parse().unwrap(), "111".parse().unwrap()];
        assert!(Gf2Matrix::new(2, rows).is_err());
    }
}
