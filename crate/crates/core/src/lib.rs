//! Unweighted one-sided sparsifiers of binary linear codes, and thin
//! subgraphs through the cut space of a graph.
//!
//! Every pass/fail decision is made in exact integer arithmetic; floating
//! point only appears in the closed-form size budgets.

pub mod error;
pub mod gf2;
pub mod graphs;
pub mod io;
pub mod sparsify;

pub use error::{Error, Result};
pub use gf2::{BitVector, CosetLabel, Gf2Matrix, LinearCode};
pub use graphs::Graph;
pub use sparsify::Alpha;

use serde::Serializer;

pub(crate) fn serde_decimal<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn serde_bits<S: Serializer>(
    v: &BitVector,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Subsets go out 1-indexed, matching the command line.
pub(crate) fn serde_set<S: Serializer>(
    v: &BitVector,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.ones_iter().map(|i| i + 1))
}

pub(crate) fn serde_sets<S: Serializer>(
    v: &[BitVector],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|b| b.ones_iter().map(|i| i + 1).collect::<Vec<_>>()),
    )
}
