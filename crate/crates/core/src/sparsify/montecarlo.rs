use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::census::run_in_pool;
use super::Alpha;
use crate::error::Result;
use crate::gf2::packed::{PackedCode, PACKED_MAX_N};
use crate::gf2::{BitVector, LinearCode};

/// Trials per independent random stream. Block `b` always draws from stream
/// `b` of the seeded generator, so the result is fixed by `(seed, trials)`
/// whatever the thread count.
pub const TRIALS_PER_BLOCK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Fraction of uniformly random subsets that are `α`-sparsifiers.
pub fn monte_carlo_density(
    code: &LinearCode,
    trials: u64,
    alpha: Alpha,
    seed: u64,
    threads: Option<usize>,
) -> Result<DensityEstimate> {
    let n = code.len();
    let blocks = trials.div_ceil(TRIALS_PER_BLOCK);
    let block_len = |b: u64| TRIALS_PER_BLOCK.min(trials - b * TRIALS_PER_BLOCK);

    let hits = if n <= PACKED_MAX_N {
        let packed = PackedCode::new(code)?;
        let full = packed.full_mask();
        let (p, q) = (alpha.numer(), alpha.denom());
        run_in_pool(threads, || {
            (0..blocks)
                .into_par_iter()
                .map(|b| {
                    let mut rng = block_rng(seed, b);
                    (0..block_len(b))
                        .filter(|_| packed.passes(rng.gen::<u64>() & full, p, q))
                        .count() as u64
                })
                .sum()
        })
    } else {
        let words = code.codeword_list()?;
        run_in_pool(threads, || {
            (0..blocks)
                .into_par_iter()
                .map(|b| {
                    let mut rng = block_rng(seed, b);
                    (0..block_len(b))
                        .filter(|_| {
                            let s =
                                BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()));
                            words
                                .iter()
                                .all(|c| alpha.admits(c.and_weight(&s), c.weight()))
                        })
                        .count() as u64
                })
                .sum()
        })
    };

    Ok(DensityEstimate {
        hits,
        trials,
        estimate: if trials == 0 {
            0.0
        } else {
            hits as f64 / trials as f64
        },
    })
}
