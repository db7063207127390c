use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Threshold `α = p/q ∈ [0, 1]`, kept exact and gcd-reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    p: u64,
    q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Alpha {
    pub const ZERO: Alpha = Alpha { p: 0, q: 1 };
    pub const HALF: Alpha = Alpha { p: 1, q: 2 };
    pub const ONE: Alpha = Alpha { p: 1, q: 1 };

    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("alpha denominator must be positive".into()));
        }
        if p > q {
            return Err(Error::Domain(format!("alpha {p}/{q} exceeds 1")));
        }
        // keep q·wt and p·wt far from overflow for any wt below 2^32
        if q > u32::MAX as u64 {
            return Err(Error::Domain(format!("alpha denominator {q} too large")));
        }
        let g = gcd(p, q).max(1);
        Ok(Self { p: p / g, q: q / g })
    }

    /// `1 - 2^{-ℓ}`, the threshold reached after `ℓ` halving rounds.
    pub fn one_minus_pow2(ell: u32) -> Result<Self> {
        if ell == 0 || ell > 31 {
            return Err(Error::Domain(format!("ell must be in 1..=31, got {ell}")));
        }
        let q = 1u64 << ell;
        Self::new(q - 1, q)
    }

    /// `2^{-ℓ}`.
    pub fn pow2_inverse(ell: u32) -> Result<Self> {
        if ell > 31 {
            return Err(Error::Domain(format!("ell must be at most 31, got {ell}")));
        }
        Self::new(1, 1u64 << ell)
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    /// `1 - α`.
    pub fn complement(&self) -> Self {
        Self {
            p: self.q - self.p,
            q: self.q,
        }
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `projected ≥ α·total`, evaluated as `q·projected ≥ p·total`.
    #[inline]
    pub fn admits(&self, projected: usize, total: usize) -> bool {
        self.q as u128 * projected as u128 >= self.p as u128 * total as u128
    }

    /// `projected ≤ α·total`.
    #[inline]
    pub fn caps(&self, projected: usize, total: usize) -> bool {
        self.q as u128 * projected as u128 <= self.p as u128 * total as u128
    }

    pub fn at_most_half(&self) -> bool {
        2 * self.p <= self.q
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Accepts `p/q` or a bare integer (`0`, `1`).
impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse alpha {s:?}; expected p/q"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
            None => Self::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
