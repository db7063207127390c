//! Exhaustive enumeration over all subsets of `[n]`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::small_budget;
use super::local::maximize_with;
use super::Alpha;
use crate::error::{Error, Result};
use crate::gf2::packed::{check_packed_len, subset_at, PackedCode};
use crate::gf2::{BitVector, LexSubsets, LinearCode};

/// Default cap on `n` for anything that walks all `2^n` subsets.
pub const DEFAULT_MAX_N: usize = 28;

/// Knobs for exhaustive walks. `chunks` fixes how the `2^n` range is split;
/// results never depend on it or on `threads`.
#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub max_n: usize,
    pub threads: Option<usize>,
    pub chunks: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            threads: None,
            chunks: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub k: usize,
    pub alpha: Alpha,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub count: u64,
    /// `2^{n-k}`.
    #[serde(serialize_with = "crate::serde_decimal")]
    pub lower_bound: u64,
    pub size_histogram: BTreeMap<usize, u64>,
    pub min_size: Option<usize>,
    pub exhaustive: bool,
}

impl CensusReport {
    /// `size,count` rows with a header line.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("size,count\n");
        for (size, count) in &self.size_histogram {
            out.push_str(&format!("{size},{count}\n"));
        }
        out
    }
}

#[derive(Clone)]
struct Tally {
    count: u64,
    by_size: [u64; 64],
}

impl Tally {
    fn empty() -> Self {
        Self {
            count: 0,
            by_size: [0; 64],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.count += other.count;
        for (a, b) in self.by_size.iter_mut().zip(other.by_size) {
            *a += b;
        }
        self
    }
}

pub(crate) fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Splits `0..total` into `chunks` contiguous ranges.
pub(crate) fn chunk_ranges(total: u64, chunks: u64) -> Vec<(u64, u64)> {
    let chunks = chunks.clamp(1, total.max(1));
    let step = total.div_ceil(chunks);
    (0..chunks)
        .map(|i| (i * step, ((i + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Counts every `S ⊆ [n]` with `wt(c_S) ≥ α·wt(c)` for all codewords.
///
/// Subsets are visited in Gray order and each codeword scan stops at the
/// first violation: `O(2^n · 2^k)` popcounts in the worst case. For
/// `α ≤ 1/2` a count below `2^{n-k}` is reported as a theorem violation.
pub fn count_sparsifiers(
    code: &LinearCode,
    alpha: Alpha,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let n = code.len();
    check_packed_len(n, opts.max_n)?;
    let packed = PackedCode::new(code)?.lightest_first();
    let (p, q) = (alpha.numer(), alpha.denom());
    let total = 1u64 << n;
    let chunks = opts.chunks.unwrap_or(256) as u64;
    let ranges = chunk_ranges(total, chunks);

    let tally = run_in_pool(opts.threads, || {
        ranges
            .par_iter()
            .map(|&(start, end)| {
                let mut t = Tally::empty();
                for i in start..end {
                    let s = subset_at(i);
                    if packed.passes(s, p, q) {
                        t.count += 1;
                        t.by_size[s.count_ones() as usize] += 1;
                    }
                }
                t
            })
            .reduce(Tally::empty, Tally::merge)
    });

    let size_histogram: BTreeMap<usize, u64> = tally
        .by_size
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| (s, c))
        .collect();
    let k = code.dimension();
    let report = CensusReport {
        n,
        k,
        alpha,
        count: tally.count,
        lower_bound: 1u64 << (n - k),
        min_size: size_histogram.keys().next().copied(),
        size_histogram,
        exhaustive: true,
    };
    if alpha.at_most_half() && report.count < report.lower_bound {
        return Err(Error::violation(
            format!(
                "code with n={n}, k={k} has {} {alpha}-sparsifiers, fewer than 2^(n-k) = {}",
                report.count, report.lower_bound
            ),
            generator_witness(code),
        ));
    }
    Ok(report)
}

pub(crate) fn generator_witness(code: &LinearCode) -> String {
    let rows: Vec<String> = code.basis().iter().map(|r| format!("\"{r}\"")).collect();
    format!("{{\"n\":{},\"basis\":[{}]}}", code.len(), rows.join(","))
}

/// The smallest `α`-sparsifier: sizes ascending, lexicographic within a size.
pub fn min_sparsifier(code: &LinearCode, alpha: Alpha, max_n: usize) -> Result<(BitVector, usize)> {
    let n = code.len();
    check_packed_len(n, max_n)?;
    let packed = PackedCode::new(code)?.lightest_first();
    let (p, q) = (alpha.numer(), alpha.denom());
    for m in 0..=n {
        if let Some(s) = LexSubsets::new(n, m).find(|&s| packed.passes(s, p, q)) {
            return Ok((BitVector::from_word(n, s), m));
        }
    }
    // [n] itself always qualifies for α ≤ 1
    Err(Error::violation(
        format!("no {alpha}-sparsifier found, not even [n]"),
        generator_witness(code),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Heuristic,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SearchMode::Exact),
            "heuristic" => Ok(SearchMode::Heuristic),
            other => Err(Error::Domain(format!(
                "mode must be exact or heuristic, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub restarts: usize,
    pub seed: u64,
    pub max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            mode: SearchMode::Exact,
            restarts: 256,
            seed: 0,
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// Finds a 1/2-sparsifier of size at most `⌊n(1/2 + ε)⌋`, `ε = √(ln2/2 · k/n)`.
///
/// Exact mode returns the minimum-size sparsifier and treats one above the
/// budget as a theorem violation. Heuristic mode maximizes random starting
/// sets within their cosets and returns `None` if no restart lands within
/// budget; it never certifies nonexistence.
pub fn small_sparsifier_search(
    code: &LinearCode,
    opts: &SearchOptions,
) -> Result<Option<BitVector>> {
    let n = code.len();
    let k = code.dimension();
    let budget = small_budget(n, k);
    if k == 0 {
        return Ok(Some(BitVector::zeros(n)));
    }
    match opts.mode {
        SearchMode::Exact => {
            let (s, size) = min_sparsifier(code, Alpha::HALF, opts.max_n)?;
            if size > budget {
                return Err(Error::violation(
                    format!(
                        "smallest 1/2-sparsifier has size {size} > budget {budget} (n={n}, k={k})"
                    ),
                    generator_witness(code),
                ));
            }
            Ok(Some(s))
        }
        SearchMode::Heuristic => {
            let words = code.codeword_list()?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.restarts {
                let start = BitVector::from_indices(n, (0..n).filter(|_| rng.gen::<bool>()));
                let s = maximize_with(&words, &start);
                if s.weight() <= budget {
                    return Ok(Some(s));
                }
            }
            Ok(None)
        }
    }
}
