//! Hitting sets and the search for proper sparsifiers
//! (`α·wt(c) ≤ wt(c_S) < wt(c)` for every nonzero codeword).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::packed::{subset_at, PACKED_MAX_N};
use crate::gf2::{BitVector, LinearCode};
use crate::sparsify::Alpha;

/// Independent greedy passes made by [`disjoint_hitting_sets`]; the best is kept.
pub const GREEDY_PASSES: u64 = 16;

fn nonzero_words(code: &LinearCode) -> Result<Vec<BitVector>> {
    Ok(code.codewords()?.filter(|c| !c.is_zero()).collect())
}

fn hits_all(words: &[BitVector], s: &BitVector) -> bool {
    words.iter().all(|c| c.and_weight(s) > 0)
}

/// True iff every nonzero codeword meets `s`.
pub fn is_hitting_set(code: &LinearCode, s: &BitVector) -> Result<bool> {
    if s.len() != code.len() {
        return Err(Error::LengthMismatch {
            expected: code.len(),
            found: s.len(),
        });
    }
    Ok(hits_all(&nonzero_words(code)?, s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingSetReport {
    #[serde(serialize_with = "crate::serde_sets")]
    pub sets: Vec<BitVector>,
    pub d: usize,
}

/// Greedy packing of pairwise-disjoint minimal hitting sets.
///
/// Each set is grown from the coordinates still available, always taking
/// the coordinate that meets the most uncovered codewords (random
/// tie-break), then pruned to be minimal. Extraction stops once the
/// leftover coordinates no longer hit every codeword. `d` is a lower bound
/// on the true maximum. The zero code has no nonzero codeword to hit and
/// gets `d = 0`.
pub fn disjoint_hitting_sets(code: &LinearCode, seed: u64) -> Result<HittingSetReport> {
    let words = nonzero_words(code)?;
    if words.is_empty() {
        return Ok(HittingSetReport { sets: vec![], d: 0 });
    }
    let mut best: Vec<BitVector> = Vec::new();
    for pass in 0..GREEDY_PASSES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(pass);
        let sets = greedy_pass(&words, code.len(), &mut rng);
        if sets.len() > best.len() {
            best = sets;
        }
    }
    Ok(HittingSetReport {
        d: best.len(),
        sets: best,
    })
}

fn greedy_pass(words: &[BitVector], n: usize, rng: &mut ChaCha8Rng) -> Vec<BitVector> {
    let mut available = BitVector::ones(n);
    let mut sets = Vec::new();
    while hits_all(words, &available) {
        let mut chosen = BitVector::zeros(n);
        let mut uncovered: Vec<&BitVector> = words.iter().collect();
        while let Some(first) = uncovered.first() {
            let candidates: Vec<usize> = first.and(&available).to_indices();
            let score = |i: usize| uncovered.iter().filter(|c| c.get(i)).count();
            let top = candidates
                .iter()
                .map(|&i| score(i))
                .max()
                .expect("available set hits");
            let ties: Vec<usize> = candidates
                .into_iter()
                .filter(|&i| score(i) == top)
                .collect();
            let pick = *ties.choose(rng).expect("nonempty");
            chosen.set(pick);
            uncovered.retain(|c| !c.get(pick));
        }
        let mut order = chosen.to_indices();
        order.shuffle(rng);
        for i in order {
            chosen.clear(i);
            if !hits_all(words, &chosen) {
                chosen.set(i);
            }
        }
        for i in chosen.ones_iter() {
            available.clear(i);
        }
        sets.push(chosen);
    }
    sets
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperSearch {
    #[serde(serialize_with = "serialize_opt_set")]
    pub witness: Option<BitVector>,
    /// Every subset was examined, so `witness = None` proves nonexistence.
    pub exhaustive: bool,
    pub examined: u64,
}

fn serialize_opt_set<S: serde::Serializer>(
    v: &Option<BitVector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => crate::serde_set(b, s),
        None => s.serialize_none(),
    }
}

fn is_proper(words: &[BitVector], s: &BitVector, alpha: Alpha) -> bool {
    words.iter().all(|c| {
        let (wt, ws) = (c.weight(), c.and_weight(s));
        alpha.admits(ws, wt) && ws < wt
    })
}

/// Looks for `S` with `α·wt(c) ≤ wt(c_S) < wt(c)` for every nonzero `c`.
///
/// Exhaustive over all `2^n` subsets (Gray order) when `n ≤ max_n`;
/// otherwise `trials` seeded uniform samples.
pub fn proper_sparsifier_search(
    code: &LinearCode,
    alpha: Alpha,
    trials: u64,
    seed: u64,
    max_n: usize,
) -> Result<ProperSearch> {
    let n = code.len();
    let words = nonzero_words(code)?;
    if n <= max_n.min(PACKED_MAX_N) {
        let packed: Vec<(u64, u32)> = words
            .iter()
            .map(|c| {
                let w = c.as_word().expect("n <= 63");
                (w, w.count_ones())
            })
            .collect();
        let (p, q) = (alpha.numer(), alpha.denom());
        let total = 1u64 << n;
        for i in 0..total {
            let s = subset_at(i);
            let ok = packed.iter().all(|&(c, w)| {
                let ws = (c & s).count_ones();
                q * u64::from(ws) >= p * u64::from(w) && ws < w
            });
            if ok {
                return Ok(ProperSearch {
                    witness: Some(BitVector::from_word(n, s)),
                    exhaustive: true,
                    examined: i + 1,
                });
            }
        }
        return Ok(ProperSearch {
            witness: None,
            exhaustive: true,
            examined: total,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let s = BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()));
        if is_proper(&words, &s, alpha) {
            return Ok(ProperSearch {
                witness: Some(s),
                exhaustive: false,
                examined: t + 1,
            });
        }
    }
    Ok(ProperSearch {
        witness: None,
        exhaustive: false,
        examined: trials,
    })
}
