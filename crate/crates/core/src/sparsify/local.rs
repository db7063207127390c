//! Verification and codeword-flip local search.
//!
//! Flipping `S` by a codeword `c` changes its size by
//! `|S ⊕ c| - |S| = wt(c) - 2·wt(c_S)`, so a flip grows `S` exactly when
//! `wt(c_S) < wt(c)/2`. A set admits no growing flip iff it is a
//! 1/2-sparsifier, and `coset_maximize` climbs to such a set inside the
//! coset of its starting point.

use serde::Serialize;

use super::Alpha;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, LinearCode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(serialize_with = "crate::serde_bits")]
    pub codeword: BitVector,
    pub weight: usize,
    pub projected_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub violation: Option<Violation>,
}

fn check_len(code: &LinearCode, s: &BitVector) -> Result<()> {
    if s.len() != code.len() {
        return Err(Error::LengthMismatch {
            expected: code.len(),
            found: s.len(),
        });
    }
    Ok(())
}

/// Checks `wt(c_S) ≥ α·wt(c)` for every codeword; reports the first failure
/// in Gray enumeration order.
pub fn verify(code: &LinearCode, s: &BitVector, alpha: Alpha) -> Result<Verdict> {
    check_len(code, s)?;
    for c in code.codewords()? {
        let weight = c.weight();
        let projected_weight = c.and_weight(s);
        if !alpha.admits(projected_weight, weight) {
            return Ok(Verdict {
                pass: false,
                violation: Some(Violation {
                    codeword: c,
                    weight,
                    projected_weight,
                }),
            });
        }
    }
    Ok(Verdict {
        pass: true,
        violation: None,
    })
}

/// First codeword (Gray order) whose flip strictly enlarges `s`, applied.
pub fn improve_once(code: &LinearCode, s: &BitVector) -> Result<Option<BitVector>> {
    check_len(code, s)?;
    let words = code.codeword_list()?;
    Ok(improve_with(&words, s))
}

pub(crate) fn improve_with(words: &[BitVector], s: &BitVector) -> Option<BitVector> {
    words
        .iter()
        .find(|c| c.weight() > 2 * c.and_weight(s))
        .map(|c| {
            let mut out = s.clone();
            out.xor_assign(c);
            out
        })
}

/// Repeats [`improve_once`] until no codeword flip enlarges the set.
///
/// Each round strictly grows the set, so there are at most `n` rounds.
pub fn coset_maximize(code: &LinearCode, start: &BitVector) -> Result<BitVector> {
    check_len(code, start)?;
    let words = code.codeword_list()?;
    Ok(maximize_with(&words, start))
}

pub(crate) fn maximize_with(words: &[BitVector], start: &BitVector) -> BitVector {
    let mut current = start.clone();
    let mut rounds = 0;
    while let Some(next) = improve_with(words, &current) {
        debug_assert!(next.weight() > current.weight());
        current = next;
        rounds += 1;
        debug_assert!(rounds <= start.len());
    }
    current
}
