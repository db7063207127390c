//! Closed-form size budgets for small sparsifiers.

use std::f64::consts::LN_2;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `γ = √(ln 2 / 2)`.
pub fn gamma() -> f64 {
    (LN_2 / 2.0).sqrt()
}

/// `c = √(ln 2)·(1 + √2) = γ / (1 - 1/√2)`.
pub fn c_const() -> f64 {
    LN_2.sqrt() * (1.0 + 2f64.sqrt())
}

/// Binary entropy, with `H(0) = H(1) = 0`.
pub fn entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "entropy argument {x} outside [0, 1]"
        )));
    }
    let term = |t: f64| if t <= 0.0 { 0.0 } else { -t * t.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// `ε = √(ln 2 / 2 · k/n)`; zero for the empty code length.
pub fn epsilon_closed(n: usize, k: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (LN_2 / 2.0 * k as f64 / n as f64).sqrt()
}

/// `⌊n(1/2 + ε)⌋`, clamped to `n`.
pub fn small_budget(n: usize, k: usize) -> usize {
    let raw = n as f64 * (0.5 + epsilon_closed(n, k));
    (raw.floor() as usize).min(n)
}

/// `(1 - 2^{-ℓ})·n + c·√(nk)`.
pub fn big_alpha_budget(n: usize, k: usize, ell: u32) -> f64 {
    (1.0 - 0.5f64.powi(ell as i32)) * n as f64 + c_const() * ((n * k) as f64).sqrt()
}

/// Root of `H(1/2 - ε) = target` on `(0, 1/2)` by bisection, for `target ∈ (0, 1)`.
fn entropy_gap_root(target: f64) -> Option<f64> {
    if !(target > 0.0 && target < 1.0) {
        return None;
    }
    // H(1/2 - ε) falls from 1 to 0 as ε goes from 0 to 1/2
    let f = |e: f64| entropy(0.5 - e).expect("in domain") - target;
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    /// `1 - k/n`.
    pub entropy_gap: f64,
    pub epsilon_closed: f64,
    pub epsilon_root: Option<f64>,
    pub gamma: f64,
    pub c_const: f64,
    /// `n(1/2 + ε)` with the closed-form `ε`, clamped to `n`.
    pub budget_small: f64,
    /// `⌊budget_small⌋`, the integer size constraint.
    pub budget_small_int: usize,
    /// `2^{n-k}`, the guaranteed number of 1/2-sparsifiers.
    #[serde(serialize_with = "serialize_big")]
    pub census_lower_bound: BigUint,
}

fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl BoundsReport {
    pub fn budget_big_alpha(&self, ell: u32) -> f64 {
        big_alpha_budget(self.n, self.k, ell)
    }
}

/// All closed-form quantities for a code of length `n` and dimension `k`.
pub fn bounds_for(n: usize, k: usize) -> Result<BoundsReport> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "bounds need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let entropy_gap = 1.0 - k as f64 / n as f64;
    let epsilon = epsilon_closed(n, k);
    let budget_small = (n as f64 * (0.5 + epsilon)).min(n as f64);
    Ok(BoundsReport {
        n,
        k,
        entropy_gap,
        epsilon_closed: epsilon,
        epsilon_root: entropy_gap_root(entropy_gap),
        gamma: gamma(),
        c_const: c_const(),
        budget_small,
        budget_small_int: small_budget(n, k),
        census_lower_bound: BigUint::from(1u8) << (n - k),
    })
}
