//! Code synthesis from component codes and a base code.
//!
//! Block-row `k` of the output encoder belongs to row `k` of the base
//! encoder. Components are visited in order of non-increasing code length;
//! each visit fills the still-empty block-rows that the base decoder uses
//! for receivers demanding that component, and records which block-rows
//! must also zero out other block-columns so that later visits size them
//! tall enough.
//!
//! All sets are kept as ascending index lists.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bounds::ConstructionResult;
use crate::decode::{verify_code, Verdict};
use crate::extension::ExtensionSpec;
use crate::gf2::{BinMatrix, Permutation};
use crate::triangular::write_set;
use crate::{Condition, Error, Result, TriMatrix, Which};

/// Default message-count threshold for exhaustive verification.
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: usize = 20;
/// Sampled trials used above the threshold.
pub const DEFAULT_SAMPLED_TRIALS: u64 = 100_000;

/// Validated inputs of the synthesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algo1Inputs {
    component_encoders: Vec<BinMatrix>,
    base_encoder: BinMatrix,
    base_decoder: BinMatrix,
    base_fitting: TriMatrix,
    sigma: Permutation,
}

/// Ordering of components by non-increasing rank, ties by index.
pub fn default_sigma(ranks: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..ranks.len()).collect();
    order.sort_by_key(|&i| (core::cmp::Reverse(ranks[i]), i));
    Permutation::new(order).expect("sorted indices form a permutation")
}

impl Algo1Inputs {
    /// Checks full rank, the base decoder, and the ordering. With
    /// `sigma = None` the default ordering is used; `sigma.mapping()[t]`
    /// is the component visited at step `t`.
    pub fn new(
        component_encoders: Vec<BinMatrix>,
        base_encoder: BinMatrix,
        base_decoder: BinMatrix,
        base_fitting: TriMatrix,
        sigma: Option<Permutation>,
    ) -> Result<Self> {
        let m_b = base_fitting.cols();
        base_fitting.check_fitting()?;
        if component_encoders.len() != m_b {
            return Err(Error::ComponentCount {
                expected: m_b,
                found: component_encoders.len(),
            });
        }
        if base_encoder.cols() != m_b {
            return Err(Error::DimensionMismatch {
                context: "base encoder",
                expected: (base_encoder.rows(), m_b),
                found: base_encoder.dims(),
            });
        }
        if base_decoder.dims() != (base_fitting.rows(), base_encoder.rows()) {
            return Err(Error::DimensionMismatch {
                context: "base decoder",
                expected: (base_fitting.rows(), base_encoder.rows()),
                found: base_decoder.dims(),
            });
        }
        if base_encoder.rank() != base_encoder.rows() {
            return Err(Condition::NotFullRank { which: Which::Base }.into());
        }
        for (i, g) in component_encoders.iter().enumerate() {
            if g.rank() != g.rows() {
                return Err(Condition::NotFullRank {
                    which: Which::Component(i),
                }
                .into());
            }
        }
        if !base_fitting.completed_by(&base_decoder.mul(&base_encoder)?)? {
            return Err(Condition::BaseDecoderInvalid.into());
        }
        let ranks: Vec<usize> = component_encoders.iter().map(BinMatrix::rows).collect();
        let sigma = match sigma {
            Some(s) => {
                if s.len() != m_b {
                    return Err(Error::DimensionMismatch {
                        context: "ordering length",
                        expected: (1, m_b),
                        found: (1, s.len()),
                    });
                }
                if let Some(t) = s
                    .mapping()
                    .windows(2)
                    .position(|w| ranks[w[0]] < ranks[w[1]])
                {
                    return Err(Condition::RankOrder { position: t + 1 }.into());
                }
                s
            }
            None => default_sigma(&ranks),
        };
        Ok(Algo1Inputs {
            component_encoders,
            base_encoder,
            base_decoder,
            base_fitting,
            sigma,
        })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn component_encoders(&self) -> &[BinMatrix] {
        &self.component_encoders
    }

    pub fn base_encoder(&self) -> &BinMatrix {
        &self.base_encoder
    }

    pub fn base_decoder(&self) -> &BinMatrix {
        &self.base_decoder
    }

    pub fn base_fitting(&self) -> &TriMatrix {
        &self.base_fitting
    }

    /// Code lengths `r_i` of the components.
    pub fn ranks(&self) -> Vec<usize> {
        self.component_encoders.iter().map(BinMatrix::rows).collect()
    }

    /// Whether base row `k` of the code contributes to entry `(u, v)`.
    fn contributes(&self, u: usize, k: usize, v: usize) -> bool {
        self.base_decoder.get(u, k) && self.base_encoder.get(k, v)
    }
}

/// Zero-pattern bookkeeping for one receiver row of one iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroRecord {
    pub u: usize,
    /// Block-columns where base row `u` has a `0`.
    pub v: Vec<usize>,
    /// For each entry of `v`, the contributing base-code rows.
    pub y: Vec<Vec<usize>>,
}

/// One pass of the main loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    /// 1-based iteration number.
    pub t: usize,
    pub component: usize,
    pub u: Vec<usize>,
    pub a: Vec<usize>,
    pub psi_before: Vec<usize>,
    pub psi_after: Vec<usize>,
    pub zeros: Vec<ZeroRecord>,
    /// `b[j]`: block-rows recorded against component `j`.
    pub b: Vec<Vec<usize>>,
    /// `(block-row, height)` assigned in this pass.
    pub rhat: Vec<(usize, usize)>,
}

/// Block-rows that no pass filled, sized at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftoverRecord {
    pub block_row: usize,
    pub height: usize,
    /// The block-row appears in no recorded set and received the smallest
    /// component rank.
    pub empty_max: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Algo1Trace {
    pub iterations: Vec<IterationRecord>,
    pub leftover: Vec<LeftoverRecord>,
}

impl fmt::Display for Algo1Trace {
    /// One record per line with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.iterations {
            write!(f, "t={} U=", it.t)?;
            write_set(f, &it.u)?;
            f.write_str(" A=")?;
            write_set(f, &it.a)?;
            f.write_str(" Psi=")?;
            write_set(f, &it.psi_after)?;
            f.write_str(" B=[")?;
            for (j, b) in it.b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write_set(f, b)?;
            }
            f.write_str("] rhat=")?;
            let mut first = true;
            f.write_str("{")?;
            for &(k, h) in &it.rhat {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{}:{}", k + 1, h)?;
            }
            f.write_str("}\n")?;
        }
        for l in &self.leftover {
            write!(f, "leftover block_row={} rhat={}", l.block_row + 1, l.height)?;
            if l.empty_max {
                f.write_str(" empty_max")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// `G^(j)` cut or zero-padded to `h` rows.
fn resized(g: &BinMatrix, h: usize) -> BinMatrix {
    if h < g.rows() {
        g.window(0, h, 0, g.cols())
    } else {
        let mut out = BinMatrix::zeros(h, g.cols());
        out.paste(0, 0, g);
        out
    }
}

/// Block-row `a` of the output: `G^B_{a,j}` times the resized `G^(j)`.
fn fill_row(inputs: &Algo1Inputs, a: usize, h: usize, widths: &[usize]) -> BinMatrix {
    let m_e: usize = widths.iter().sum();
    let mut out = BinMatrix::zeros(h, m_e);
    let mut c0 = 0;
    for (j, g) in inputs.component_encoders.iter().enumerate() {
        if inputs.base_encoder.get(a, j) {
            out.paste(0, c0, &resized(g, h));
        }
        c0 += widths[j];
    }
    out
}

/// Runs the synthesis and returns the encoder with a full trace.
pub fn run_algorithm1(inputs: &Algo1Inputs) -> Result<(ConstructionResult, Algo1Trace)> {
    let fb = &inputs.base_fitting;
    let (n_b, m_b) = fb.dims();
    let r_b = inputs.base_encoder.rows();
    let ranks = inputs.ranks();
    let widths: Vec<usize> = inputs.component_encoders.iter().map(BinMatrix::cols).collect();
    let sigma = inputs.sigma.mapping();

    let mut psi: BTreeSet<usize> = (0..r_b).collect();
    let mut rhat: Vec<Option<usize>> = vec![None; r_b];
    let mut rows: Vec<Option<BinMatrix>> = vec![None; r_b];
    // history[t][j] = B^(t+1, j+1)
    let mut history: Vec<Vec<BTreeSet<usize>>> = Vec::new();
    let mut trace = Algo1Trace::default();

    let recorded_max = |history: &[Vec<BTreeSet<usize>>], a: usize| {
        history
            .iter()
            .flat_map(|b| b.iter().enumerate())
            .filter(|(_, set)| set.contains(&a))
            .map(|(k, _)| ranks[k])
            .max()
    };

    let mut t = 0;
    while !psi.is_empty() && t < m_b {
        let s = sigma[t];
        let u: Vec<usize> = (0..n_b).filter(|&u| fb.get(u, s) == crate::Entry::One).collect();
        let mut a = BTreeSet::new();
        for &ui in &u {
            a.extend(psi.iter().copied().filter(|&k| inputs.contributes(ui, k, s)));
        }
        let psi_before: Vec<usize> = psi.iter().copied().collect();

        let mut assigned = Vec::new();
        for &ai in &a {
            let h = recorded_max(&history, ai).map_or(ranks[s], |m| m.max(ranks[s]));
            rhat[ai] = Some(h);
            rows[ai] = Some(fill_row(inputs, ai, h, &widths));
            assigned.push((ai, h));
        }
        for ai in &a {
            psi.remove(ai);
        }

        let mut b: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m_b];
        let mut zeros = Vec::new();
        for &ui in &u {
            let v: Vec<usize> = (0..m_b).filter(|&v| fb.get(ui, v) == crate::Entry::Zero).collect();
            let mut ys = Vec::new();
            for &vj in &v {
                // Every base-code row is considered here, filled or not;
                // rows outside the remaining set are never looked up again.
                let y: Vec<usize> = (0..r_b).filter(|&k| inputs.contributes(ui, k, vj)).collect();
                let target = if ranks[vj] < ranks[s] { vj } else { s };
                b[target].extend(y.iter().copied());
                ys.push(y);
            }
            zeros.push(ZeroRecord { u: ui, v, y: ys });
        }
        history.push(b);

        if t + 1 == m_b && !psi.is_empty() {
            let smallest = ranks[sigma[m_b - 1]];
            for &ai in &psi {
                let max = recorded_max(&history, ai);
                let h = max.unwrap_or(smallest);
                rhat[ai] = Some(h);
                rows[ai] = Some(fill_row(inputs, ai, h, &widths));
                trace.leftover.push(LeftoverRecord {
                    block_row: ai,
                    height: h,
                    empty_max: max.is_none(),
                });
            }
            psi.clear();
        }

        let last = history.last().unwrap();
        trace.iterations.push(IterationRecord {
            t: t + 1,
            component: s,
            u,
            a: a.into_iter().collect(),
            psi_before,
            psi_after: psi.iter().copied().collect(),
            zeros,
            b: last.iter().map(|s| s.iter().copied().collect()).collect(),
            rhat: assigned,
        });
        t += 1;
    }

    let m_e: usize = widths.iter().sum();
    let mut heights = Vec::with_capacity(r_b);
    let mut parts = Vec::with_capacity(r_b);
    for (k, row) in rows.iter().enumerate() {
        let row = row
            .as_ref()
            .ok_or(Error::Invariant("a block-row was never filled"))?;
        heights.push(rhat[k].unwrap());
        parts.push(row);
    }
    let encoder = BinMatrix::vstack(m_e, &parts)?;
    Ok((
        ConstructionResult {
            codelength: encoder.rows(),
            encoder,
            full_completion: None,
            blockrow_heights: heights,
        },
        trace,
    ))
}

/// Assembles the block decoder that pairs with the synthesized encoder.
///
/// Block `(i, j)` is `D^B_{i,j}` times the decoder of the component
/// demanded by base row `i`, cut or zero-padded to `r̂_j` columns. The
/// result is checked against the extended fitting matrix.
pub fn build_decoder_de(
    spec: &ExtensionSpec,
    inputs: &Algo1Inputs,
    component_decoders: &[BinMatrix],
    result: &ConstructionResult,
) -> Result<BinMatrix> {
    let layout = spec.layout();
    if component_decoders.len() != layout.base_cols {
        return Err(Error::ComponentCount {
            expected: layout.base_cols,
            found: component_decoders.len(),
        });
    }
    for (j, d) in component_decoders.iter().enumerate() {
        let g = &inputs.component_encoders[j];
        let ok = d.cols() == g.rows() && spec.components()[j].completed_by(&d.mul(g)?).unwrap_or(false);
        if !ok {
            return Err(Condition::ComponentDecoderInvalid { component: j }.into());
        }
    }
    let heights = &result.blockrow_heights;
    let n_e = layout.n_e();
    let codelength: usize = heights.iter().sum();
    let mut de = BinMatrix::zeros(n_e, codelength);
    let mut col_offsets = Vec::with_capacity(heights.len());
    let mut acc = 0;
    for &h in heights {
        col_offsets.push(acc);
        acc += h;
    }
    for i in 0..layout.base_rows {
        let d = &component_decoders[layout.demand_of_blockrow[i]];
        for (j, &h) in heights.iter().enumerate() {
            if !inputs.base_decoder.get(i, j) {
                continue;
            }
            let take = h.min(d.cols());
            de.paste(layout.row_offset(i), col_offsets[j], &d.window(0, d.rows(), 0, take));
        }
    }
    if !spec.fitting_matrix().completed_by(&de.mul(&result.encoder)?)? {
        return Err(Error::Invariant("block decoder does not complete the extended fitting matrix"));
    }
    Ok(de)
}

/// Decoder search plus simulation of `g` on the extended problem:
/// exhaustive up to 20 messages, 10^5 seeded trials beyond.
pub fn verify_extended_code(g: &BinMatrix, spec: &ExtensionSpec) -> Result<Verdict> {
    verify_code(
        g,
        &spec.fitting_matrix(),
        DEFAULT_EXHAUSTIVE_THRESHOLD,
        DEFAULT_SAMPLED_TRIALS,
        0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sigma_breaks_ties_by_index() {
        assert_eq!(default_sigma(&[1, 3, 2, 3]).mapping(), &[1, 3, 2, 0]);
    }

    #[test]
    fn single_cell_base_returns_component_code() {
        let g = BinMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]).unwrap();
        let inputs = Algo1Inputs::new(
            vec![g.clone()],
            BinMatrix::identity(1),
            BinMatrix::identity(1),
            TriMatrix::from_strs(&["1"]).unwrap(),
            None,
        )
        .unwrap();
        let (res, trace) = run_algorithm1(&inputs).unwrap();
        assert_eq!(res.encoder, g);
        assert_eq!(trace.iterations.len(), 1);
    }

    #[test]
    fn rejects_bad_ordering_and_rank() {
        let g1 = BinMatrix::identity(1);
        let g2 = BinMatrix::identity(2);
        let fb = TriMatrix::from_strs(&["10", "01"]).unwrap();
        let err = Algo1Inputs::new(
            vec![g1.clone(), g2.clone()],
            BinMatrix::identity(2),
            BinMatrix::identity(2),
            fb.clone(),
            Some(Permutation::identity(2)),
        )
        .unwrap_err();
        assert_eq!(err, Error::Precondition(Condition::RankOrder { position: 1 }));
        let err = Algo1Inputs::new(
            vec![g1, BinMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap()],
            BinMatrix::identity(2),
            BinMatrix::identity(2),
            fb,
            None,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::Precondition(Condition::NotFullRank {
                which: Which::Component(1)
            })
        );
    }
}
