//! Matching lower and upper bounds.
//!
//! When some witness attaining the lower bound uses exactly the columns of
//! the largest component minranks, and some base completion has rank equal
//! to the witness size with the witness rows independent, the explicit
//! completion meets the lower bound and the minrank is known.

use alloc::vec::Vec;

use super::lemma2::check_top_ranked;
use super::lower::ranked_witnesses;
use crate::extension::ExtensionSpec;
use crate::minrank::CompletionSearch;
use crate::triangular::TriangulableWitness;
use crate::{BinMatrix, Result};

/// Data certifying the minrank of an extended problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Certificate {
    pub value: usize,
    pub witness: TriangulableWitness,
    pub base_completion: BinMatrix,
}

/// Searches for a certificate. Base completions are enumerated
/// exhaustively in lexicographic order, so the base may carry at most
/// `max_unknowns` unknowns.
pub fn theorem1_certificate(
    spec: &ExtensionSpec,
    minranks: &[usize],
    max_unknowns: usize,
) -> Result<Option<Theorem1Certificate>> {
    let ranked = ranked_witnesses(spec, minranks)?;
    let Some(best) = ranked.first().map(|(v, _)| *v) else {
        return Ok(None);
    };
    let candidates: Vec<&TriangulableWitness> = ranked
        .iter()
        .take_while(|(v, _)| *v == best)
        .map(|(_, w)| w)
        .filter(|w| check_top_ranked(&w.col_indices, minranks).is_ok())
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let search = CompletionSearch::new(spec.base(), max_unknowns)?;
    let u = search.unknowns();
    for code in 0..(1u64 << u) {
        let fb = search.completion(code);
        let rank = fb.rank();
        for w in &candidates {
            if w.size() == rank && fb.select_rows(&w.row_indices).rank() == rank {
                return Ok(Some(Theorem1Certificate {
                    value: best,
                    witness: (*w).clone(),
                    base_completion: fb,
                }));
            }
        }
    }
    Ok(None)
}

/// The certified minrank, when both conditions can be met.
pub fn theorem1_check(spec: &ExtensionSpec, minranks: &[usize], max_unknowns: usize) -> Result<Option<usize>> {
    Ok(theorem1_certificate(spec, minranks, max_unknowns)?.map(|c| c.value))
}
