//! Unweighted one-sided `α`-sparsifiers: sets `S ⊆ [n]` with
//! `wt(c_S) ≥ α·wt(c)` for every codeword `c`.

mod alpha;
pub mod bounds;
mod census;
mod iterate;
mod local;
mod montecarlo;

pub use alpha::Alpha;
pub use bounds::{bounds_for, entropy, BoundsReport};
pub use census::{
    count_sparsifiers, min_sparsifier, small_sparsifier_search, CensusOptions, CensusReport,
    SearchMode, SearchOptions, DEFAULT_MAX_N,
};
pub use iterate::{iterated_sparsifier, IterationTrace, Round};
pub use local::{coset_maximize, improve_once, verify, Verdict, Violation};
pub use montecarlo::{monte_carlo_density, DensityEstimate, TRIALS_PER_BLOCK};
