//! The explicit completion behind the upper bound.
//!
//! Everything is computed in the caller's indexing. The renaming used in
//! the textbook argument (witness rows first, independent component rows
//! first) is replaced by index lists:
//!
//! * each component completion contributes its greedy basis rows (in
//!   ascending order) and the coefficients expressing every other row in
//!   that basis;
//! * a witness block-row demanding a component of rank `ρ` takes, in every
//!   block-column `j` with a base `1`, the first `min(r_j, ρ)` basis rows
//!   of component `j` padded with zero rows to height `ρ`;
//! * every other block-row copies the pattern of the highest-rank witness
//!   block-row, truncated to its own demanded rank, scaled by the base
//!   completion's coefficients;
//! * dependent rows of a block-row are the component's coefficient
//!   combinations of its top rows.
//!
//! The encoder stacks the witness block-rows' top rows in ascending
//! block-row order.

use alloc::vec::Vec;

use super::lower::ranked_witnesses;
use super::ConstructionResult;
use crate::extension::ExtensionSpec;
use crate::gf2::{BinMatrix, BitVec};
use crate::minrank::CompletionSearch;
use crate::triangular::TriangulableWitness;
use crate::{Condition, Error, Result};

/// Checks that `cols` holds the largest ranks: the smallest rank inside is
/// at least the largest rank outside. Any ordering of tied ranks passes.
pub fn check_top_ranked(cols: &[usize], ranks: &[usize]) -> core::result::Result<(), Condition> {
    let inside_min = cols.iter().map(|&c| ranks[c]).min().unwrap_or(usize::MAX);
    let outside_max = (0..ranks.len())
        .filter(|c| !cols.contains(c))
        .map(|c| ranks[c])
        .max();
    match outside_max {
        Some(outside_max) if outside_max > inside_min => Err(Condition::WitnessNotTopRanked {
            inside_min,
            outside_max,
        }),
        _ => Ok(()),
    }
}

/// Validated inputs of the explicit completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Inputs {
    base_completion: BinMatrix,
    component_completions: Vec<BinMatrix>,
    witness: TriangulableWitness,
    ranks: Vec<usize>,
}

impl Lemma2Inputs {
    /// Checks both conditions and the completions; the first violation is
    /// reported as a [`Condition`].
    pub fn new(
        spec: &ExtensionSpec,
        base_completion: BinMatrix,
        component_completions: Vec<BinMatrix>,
        witness: TriangulableWitness,
    ) -> Result<Self> {
        let comps = spec.components();
        if component_completions.len() != comps.len() {
            return Err(Error::ComponentCount {
                expected: comps.len(),
                found: component_completions.len(),
            });
        }
        if !spec.base().completed_by(&base_completion)? {
            return Err(Condition::BaseCompletion.into());
        }
        for (j, (f, fx)) in component_completions.iter().zip(comps).enumerate() {
            if !fx.completed_by(f)? {
                return Err(Condition::ComponentCompletion { component: j }.into());
            }
        }
        if !witness.certify(spec.base()) {
            return Err(Condition::WitnessNotTriangulable.into());
        }
        let ranks: Vec<usize> = component_completions.iter().map(BinMatrix::rank).collect();
        check_top_ranked(&witness.col_indices, &ranks)?;
        let rank = base_completion.rank();
        if rank != witness.size() {
            return Err(Condition::BaseRank {
                rank,
                expected: witness.size(),
            }
            .into());
        }
        if base_completion.select_rows(&witness.row_indices).rank() != witness.size() {
            return Err(Condition::WitnessRowsDependent.into());
        }
        Ok(Lemma2Inputs {
            base_completion,
            component_completions,
            witness,
            ranks,
        })
    }

    /// Ranks of the component completions.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn witness(&self) -> &TriangulableWitness {
        &self.witness
    }

    pub fn base_completion(&self) -> &BinMatrix {
        &self.base_completion
    }

    pub fn component_completions(&self) -> &[BinMatrix] {
        &self.component_completions
    }
}

/// Basis rows of a component completion and the coefficients of every row
/// over that basis.
struct Split {
    basis: BinMatrix,
    /// `coeffs[q]` expresses row `q` in the basis rows.
    coeffs: Vec<BitVec>,
}

fn split(f: &BinMatrix) -> Result<Split> {
    let basis = f.select_rows(&f.basis_rows());
    let coeffs = (0..f.rows())
        .map(|q| {
            basis
                .express(&f.row(q))?
                .ok_or(Error::Invariant("component row outside its own row space"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Split { basis, coeffs })
}

/// First `min(r_j, height)` basis rows of component `j`, zero-padded to
/// `height` rows.
fn truncated(split: &Split, height: usize) -> BinMatrix {
    let mut out = BinMatrix::zeros(height, split.basis.cols());
    let take = height.min(split.basis.rows());
    out.paste(0, 0, &split.basis.window(0, take, 0, split.basis.cols()));
    out
}

/// Builds the completion and encoder for validated inputs.
pub fn lemma2_construct(spec: &ExtensionSpec, inputs: &Lemma2Inputs) -> Result<ConstructionResult> {
    let layout = spec.layout();
    let fb = &inputs.base_completion;
    let ranks = &inputs.ranks;
    let demands = &layout.demand_of_blockrow;
    let witness_rows = &inputs.witness.row_indices;
    let splits = inputs
        .component_completions
        .iter()
        .map(split)
        .collect::<Result<Vec<_>>>()?;

    let rho = |s: usize| ranks[demands[s]];
    let top = *witness_rows
        .iter()
        .max_by_key(|&&s| (rho(s), core::cmp::Reverse(s)))
        .ok_or(Error::Invariant("empty witness"))?;

    // Coefficients of every base row over the witness rows.
    let fb_witness = fb.select_rows(witness_rows);
    let p_b = (0..layout.base_rows)
        .map(|i| {
            fb_witness
                .express(&fb.row(i))?
                .ok_or(Error::Invariant("base row outside the span of the witness rows"))
        })
        .collect::<Result<Vec<_>>>()?;

    let m_e = layout.m_e();
    let mut full = BinMatrix::zeros(layout.n_e(), m_e);
    let mut encoder_parts = Vec::new();
    let mut heights = Vec::new();

    for i in 0..layout.base_rows {
        let j_i = demands[i];
        let h = ranks[j_i];
        let is_witness = witness_rows.contains(&i);
        let mut top_rows = BinMatrix::zeros(h, m_e);
        for j in 0..layout.base_cols {
            let block = if is_witness {
                if !fb.get(i, j) {
                    continue;
                }
                truncated(&splits[j], h)
            } else {
                let coeff = p_b[i]
                    .ones()
                    .fold(false, |acc, k| acc ^ fb.get(witness_rows[k], j));
                if !coeff {
                    continue;
                }
                let pattern = truncated(&splits[j], rho(top));
                pattern.window(0, h, 0, pattern.cols())
            };
            top_rows.paste(0, layout.col_offset(j), &block);
        }
        let r0 = layout.row_offset(i);
        for (q, c) in splits[j_i].coeffs.iter().enumerate() {
            let row = top_rows.left_mul_vec(c)?;
            for col in row.ones() {
                full.set(r0 + q, col, true);
            }
        }
        if is_witness {
            heights.push(h);
            encoder_parts.push(top_rows);
        }
    }

    let parts: Vec<&BinMatrix> = encoder_parts.iter().collect();
    let encoder = BinMatrix::vstack(m_e, &parts)?;
    let codelength = encoder.rows();

    if !spec.fitting_matrix().completed_by(&full)? {
        return Err(Error::Invariant("constructed matrix does not complete the extended fitting matrix"));
    }
    if encoder.rank() != codelength {
        return Err(Error::Invariant("encoder rows are dependent"));
    }
    for r in 0..full.rows() {
        if !encoder.row_space_contains(&full.row(r))? {
            return Err(Error::Invariant("completion row outside the encoder row space"));
        }
    }
    Ok(ConstructionResult {
        encoder,
        full_completion: Some(full),
        codelength,
        blockrow_heights: heights,
    })
}

/// Finds inputs for the explicit completion given component completions:
/// the witness of smallest value (then size, columns, rows) that is
/// top-ranked for the completions' ranks, paired with the
/// lexicographically first base completion meeting both rank conditions.
/// Base completions are enumerated exhaustively, so the base may carry at
/// most `max_unknowns` unknowns. A given `base_completion` is the only one
/// tried.
pub fn lemma2_search(
    spec: &ExtensionSpec,
    component_completions: Vec<BinMatrix>,
    base_completion: Option<&BinMatrix>,
    max_unknowns: usize,
) -> Result<Option<Lemma2Inputs>> {
    let ranks: Vec<usize> = component_completions.iter().map(BinMatrix::rank).collect();
    let mut candidates = ranked_witnesses(spec, &ranks)?;
    candidates.retain(|(_, w)| check_top_ranked(&w.col_indices, &ranks).is_ok());
    candidates.sort_by(|(va, a), (vb, b)| {
        va.cmp(vb)
            .then(a.size().cmp(&b.size()))
            .then_with(|| a.col_indices.cmp(&b.col_indices))
            .then_with(|| a.row_indices.cmp(&b.row_indices))
    });
    if let Some(fb) = base_completion {
        if !spec.base().completed_by(fb)? {
            return Err(Condition::BaseCompletion.into());
        }
        let r = fb.rank();
        let hit = candidates
            .into_iter()
            .find(|(_, w)| w.size() == r && fb.select_rows(&w.row_indices).rank() == r);
        return match hit {
            Some((_, w)) => Lemma2Inputs::new(spec, fb.clone(), component_completions, w).map(Some),
            None => Ok(None),
        };
    }
    let search = CompletionSearch::new(spec.base(), max_unknowns)?;
    // Codes are visited in ascending order, so the first hit recorded for
    // a candidate is its lexicographically first completion.
    let mut best: Option<(usize, u64)> = None;
    for code in 0..(1u64 << search.unknowns()) {
        let limit = best.map_or(candidates.len(), |(i, _)| i);
        if limit == 0 {
            break;
        }
        let fb = search.completion(code);
        let r = fb.rank();
        let hit = candidates[..limit]
            .iter()
            .position(|(_, w)| w.size() == r && fb.select_rows(&w.row_indices).rank() == r);
        if let Some(i) = hit {
            best = Some((i, code));
        }
    }
    if let Some((i, code)) = best {
        let w = candidates.swap_remove(i).1;
        return Lemma2Inputs::new(spec, search.completion(code), component_completions, w).map(Some);
    }
    Ok(None)
}
