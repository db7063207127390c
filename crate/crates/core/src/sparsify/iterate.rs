//! Iterated halving: repeatedly take a small 1/2-sparsifier of the code
//! restricted to the coordinates not yet chosen. After `ℓ` rounds the union
//! is a `(1 - 2^{-ℓ})`-sparsifier of the original code.

use serde::Serialize;

use super::bounds::{big_alpha_budget, gamma};
use super::census::{generator_witness, small_sparsifier_search, SearchOptions};
use super::{verify, Alpha};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, LinearCode};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Round {
    pub round: usize,
    /// 0-indexed coordinates of the original code chosen this round.
    pub chosen: Vec<usize>,
    /// Size of the sparsifier found before padding.
    pub found_size: usize,
    /// Coordinates left after this round (`n_r`).
    pub remaining: usize,
    /// Dimension of the code this round sparsified.
    pub input_dimension: usize,
    /// Dimension of the projected code left for the next round.
    pub dimension: usize,
    /// `n_{r-1}/2 + γ·√(n_{r-1}·k)`.
    pub round_budget: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationTrace {
    pub n: usize,
    pub k: usize,
    pub rounds: Vec<Round>,
    #[serde(serialize_with = "crate::serde_set")]
    pub final_set: BitVector,
    pub alpha: Alpha,
    /// `(1 - 2^{-ℓ})·n + c·√(nk)`.
    pub budget: f64,
}

impl IterationTrace {
    /// Integer size the final set is held to: `⌊budget⌋` when `k ≥ 1`, and
    /// `⌈(1 - 2^{-ℓ})n⌉` for the zero code, where padding to `⌈n_{r-1}/2⌉`
    /// is the only thing that grows the set.
    pub fn size_limit(&self) -> usize {
        if self.k == 0 {
            let q = self.alpha.denom() as usize;
            (self.alpha.numer() as usize * self.n).div_ceil(q)
        } else {
            self.budget.floor() as usize
        }
    }
}

pub fn iterated_sparsifier(
    code: &LinearCode,
    ell: u32,
    opts: &SearchOptions,
) -> Result<IterationTrace> {
    let alpha = Alpha::one_minus_pow2(ell)?;
    let n = code.len();
    let k = code.dimension();

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut current = code.clone();
    let mut rounds = Vec::with_capacity(ell as usize);
    let mut final_set = BitVector::zeros(n);

    for r in 1..=ell as usize {
        let n_prev = remaining.len();
        let round_opts = SearchOptions {
            seed: opts.seed.wrapping_add(r as u64 - 1),
            ..*opts
        };
        let found = small_sparsifier_search(&current, &round_opts)?.ok_or_else(|| {
            Error::NotFound(format!(
                "round {r}: heuristic search found no 1/2-sparsifier within budget after {} restarts",
                opts.restarts
            ))
        })?;
        let found_size = found.weight();

        // pad with the lowest unused local coordinates up to ⌈n_{r-1}/2⌉
        let mut local = found;
        let target = n_prev.div_ceil(2);
        let mut next_free = 0;
        while local.weight() < target {
            while local.get(next_free) {
                next_free += 1;
            }
            local.set(next_free);
        }

        let chosen: Vec<usize> = local.ones_iter().map(|i| remaining[i]).collect();
        for &c in &chosen {
            final_set.set(c);
        }
        let keep: Vec<usize> = (0..n_prev).filter(|&i| !local.get(i)).collect();
        let input_dimension = current.dimension();
        current = current.project(&keep);
        remaining = keep.iter().map(|&i| remaining[i]).collect();

        rounds.push(Round {
            round: r,
            chosen,
            found_size,
            remaining: remaining.len(),
            input_dimension,
            dimension: current.dimension(),
            round_budget: 0.5 * n_prev as f64 + gamma() * ((n_prev * k) as f64).sqrt(),
        });
    }

    let trace = IterationTrace {
        n,
        k,
        rounds,
        final_set,
        alpha,
        budget: big_alpha_budget(n, k, ell),
    };

    let verdict = verify(code, &trace.final_set, alpha)?;
    if !verdict.pass {
        let v = verdict
            .violation
            .expect("failed verdict carries a violation");
        return Err(Error::violation(
            format!("iterated set is not a {alpha}-sparsifier"),
            format!(
                "{{\"code\":{},\"set\":\"{}\",\"codeword\":\"{}\"}}",
                generator_witness(code),
                trace.final_set,
                v.codeword
            ),
        ));
    }
    let size = trace.final_set.weight();
    if size > trace.size_limit() {
        return Err(Error::violation(
            format!(
                "iterated set has size {size} above the limit {}",
                trace.size_limit()
            ),
            format!(
                "{{\"code\":{},\"set\":\"{}\"}}",
                generator_witness(code),
                trace.final_set
            ),
        ));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsify::census::SearchMode;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_trace(code: &LinearCode, t: &IterationTrace) {
        let mut seen = BitVector::zeros(code.len());
        let mut n_prev = code.len();
        for round in &t.rounds {
            for &c in &round.chosen {
                assert!(!seen.get(c), "rounds overlap at {c}");
                seen.set(c);
            }
            assert_eq!(round.remaining, n_prev - round.chosen.len());
            assert!(2 * round.remaining <= n_prev);
            assert!(round.dimension <= t.k && round.input_dimension <= t.k);
            n_prev = round.remaining;
        }
        assert_eq!(seen, t.final_set);
        assert!(verify(code, &t.final_set, t.alpha).unwrap().pass);
    }

    #[test]
    fn repetition_two_rounds() {
        let rep = LinearCode::repetition(3);
        let t = iterated_sparsifier(&rep, 2, &SearchOptions::default()).unwrap();
        assert_eq!(t.rounds[0].chosen, vec![0, 1]);
        assert_eq!(t.rounds[0].dimension, 1);
        assert_eq!(t.rounds[1].chosen, vec![2]);
        assert_eq!(t.final_set, BitVector::ones(3));
        assert_eq!(t.alpha.to_string(), "3/4");
        check_trace(&rep, &t);
    }

    #[test]
    fn one_round_is_search_plus_padding() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let code = LinearCode::random(14, 3, &mut rng);
            let t = iterated_sparsifier(&code, 1, &SearchOptions::default()).unwrap();
            let mut s = small_sparsifier_search(&code, &SearchOptions::default())
                .unwrap()
                .unwrap();
            let mut i = 0;
            while s.weight() < 7 {
                if !s.get(i) {
                    s.set(i);
                }
                i += 1;
            }
            assert_eq!(t.final_set, s);
        }
    }

    #[test]
    fn random_codes_hold_every_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..4 {
            let code = LinearCode::random(24, 5, &mut rng);
            let t = iterated_sparsifier(&code, 2, &SearchOptions::default()).unwrap();
            check_trace(&code, &t);
            assert!(t.final_set.weight() as f64 <= t.budget);
        }
    }

    #[test]
    fn heuristic_mode_and_zero_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let code = LinearCode::random(30, 3, &mut rng);
        let o = SearchOptions {
            mode: SearchMode::Heuristic,
            restarts: 2000,
            seed: rng.gen(),
            ..Default::default()
        };
        let t = iterated_sparsifier(&code, 3, &o).unwrap();
        check_trace(&code, &t);

        let zero = LinearCode::zero(5);
        let t = iterated_sparsifier(&zero, 1, &SearchOptions::default()).unwrap();
        assert_eq!(t.final_set.weight(), 3);
        assert_eq!(t.size_limit(), 3);
    }

    #[test]
    fn ell_zero_is_rejected() {
        assert!(
            iterated_sparsifier(&LinearCode::repetition(3), 0, &SearchOptions::default()).is_err()
        );
    }
}
