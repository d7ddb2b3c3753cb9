use alloc::vec::Vec;

use crate::extension::ExtensionSpec;
use crate::triangular::{enumerate_triangulable_submatrices, TriangulableWitness};
use crate::{Error, Result};

/// The triangulable-submatrix lower bound and the witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub value: usize,
    pub witness: TriangulableWitness,
    /// `(component, minrank)` for every witness column.
    pub per_column_minranks: Vec<(usize, usize)>,
}

fn check_len(spec: &ExtensionSpec, minranks: &[usize]) -> Result<()> {
    if minranks.len() != spec.layout().base_cols {
        return Err(Error::ComponentCount {
            expected: spec.layout().base_cols,
            found: minranks.len(),
        });
    }
    Ok(())
}

pub(crate) fn score(w: &TriangulableWitness, minranks: &[usize]) -> usize {
    w.col_indices.iter().map(|&c| minranks[c]).sum()
}

/// All witnesses of the base ranked for the bound: highest value first,
/// then smallest size, then column set, then row set.
pub(crate) fn ranked_witnesses(
    spec: &ExtensionSpec,
    minranks: &[usize],
) -> Result<Vec<(usize, TriangulableWitness)>> {
    check_len(spec, minranks)?;
    let mut all: Vec<(usize, TriangulableWitness)> = enumerate_triangulable_submatrices(spec.base())
        .into_iter()
        .map(|w| (score(&w, minranks), w))
        .collect();
    all.sort_by(|(va, a), (vb, b)| {
        vb.cmp(va)
            .then(a.size().cmp(&b.size()))
            .then_with(|| a.col_indices.cmp(&b.col_indices))
            .then_with(|| a.row_indices.cmp(&b.row_indices))
    });
    Ok(all)
}

/// Maximizes the summed component minranks over the columns of every
/// upper-triangulable submatrix of the base.
pub fn lower_bound(spec: &ExtensionSpec, minranks: &[usize]) -> Result<BoundReport> {
    let (value, witness) = ranked_witnesses(spec, minranks)?
        .into_iter()
        .next()
        .ok_or(Error::Invariant("base has no upper-triangulable submatrix"))?;
    Ok(BoundReport {
        value,
        per_column_minranks: witness.col_indices.iter().map(|&c| (c, minranks[c])).collect(),
        witness,
    })
}
