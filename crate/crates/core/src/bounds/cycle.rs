//! Cyclic base problems.
//!
//! When the base is a directed cycle, the cyclic code of the base together
//! with optimal component codes yields an optimal code of length
//! `Σ mrk − min mrk`, which matches the lower bound.

use alloc::vec::Vec;

use super::{lower_bound, BoundReport, ConstructionResult};
use crate::algo1::{build_decoder_de, default_sigma, run_algorithm1, Algo1Inputs, Algo1Trace};
use crate::decode::{find_decoding_matrix, DecoderSearch};
use crate::extension::ExtensionSpec;
use crate::{BinMatrix, Condition, Entry, Error, Result, TriMatrix};

/// Message order `c_0 = 0, c_1, …` along the cycle, where the receiver
/// demanding `c_k` knows exactly `c_{k+1}`. `None` if the base is not a
/// single directed cycle through all messages.
pub fn cycle_order(base: &TriMatrix) -> Option<Vec<usize>> {
    let (n, m) = base.dims();
    if n != m || m < 2 {
        return None;
    }
    // next[w] = the message known by the unique receiver demanding w.
    let mut next = alloc::vec![usize::MAX; m];
    for r in 0..n {
        let w = base.demand_of_row(r).ok()?;
        let mut known = (0..m).filter(|&c| base.get(r, c) == Entry::Unknown);
        let k = known.next()?;
        if known.next().is_some() || next[w] != usize::MAX {
            return None;
        }
        next[w] = k;
    }
    let mut order = Vec::with_capacity(m);
    let mut cur = 0;
    for _ in 0..m {
        if order.contains(&cur) {
            return None;
        }
        order.push(cur);
        cur = next[cur];
    }
    (cur == 0).then_some(order)
}

/// Output of the cyclic-base construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleConstruction {
    pub result: ConstructionResult,
    pub base_encoder: BinMatrix,
    pub base_decoder: BinMatrix,
    pub decoder: BinMatrix,
    pub lower_bound: BoundReport,
    pub trace: Algo1Trace,
}

/// Builds the cyclic base code, runs the synthesis and certifies the
/// length against the lower bound.
///
/// `codes[j]` must be a valid code of component `j` whose length equals
/// `minranks[j]`.
pub fn theorem2_cycle(spec: &ExtensionSpec, minranks: &[usize], codes: &[BinMatrix]) -> Result<CycleConstruction> {
    let base = spec.base();
    let m_b = base.cols();
    let order = cycle_order(base).ok_or(Error::Precondition(Condition::BaseNotCycle))?;
    if minranks.len() != m_b || codes.len() != m_b {
        return Err(Error::ComponentCount {
            expected: m_b,
            found: minranks.len().min(codes.len()),
        });
    }

    // The receiver of the last message sums every transmission; that
    // message must have least minrank (it is the column the lower-bound
    // witness leaves out). The walk from message 0 is kept when it already
    // ends on one, otherwise the cycle is rotated to end on the first
    // component of least minrank.
    let least = *minranks.iter().min().unwrap();
    let mut order = order;
    if minranks[order[m_b - 1]] != least {
        let ind_min = (0..m_b).find(|&j| minranks[j] == least).unwrap();
        let shift = order.iter().position(|&c| c == ind_min).unwrap();
        order.rotate_left((shift + 1) % m_b);
    }

    // Rows e_{c_k} + e_{c_{k+1}} for k < m_B − 1.
    let g_b = BinMatrix::from_fn(m_b - 1, m_b, |k, c| c == order[k] || c == order[k + 1]);
    // The receiver demanding c_k uses transmission k; the one demanding the
    // last message on the cycle sums them all.
    let d_b = BinMatrix::from_fn(m_b, m_b - 1, |r, k| {
        let w = base.demand_of_row(r).expect("cycle rows have one demand");
        let pos = order.iter().position(|&c| c == w).unwrap();
        pos == m_b - 1 || pos == k
    });

    let mut decoders = Vec::with_capacity(m_b);
    for (j, g) in codes.iter().enumerate() {
        if g.rows() != minranks[j] {
            return Err(Condition::ComponentCodeNotOptimal {
                component: j,
                length: g.rows(),
                minrank: minranks[j],
            }
            .into());
        }
        match find_decoding_matrix(g, &spec.components()[j])? {
            DecoderSearch::Found(d) => decoders.push(d),
            DecoderSearch::Infeasible { .. } => {
                return Err(Condition::ComponentDecoderInvalid { component: j }.into())
            }
        }
    }

    let inputs = Algo1Inputs::new(
        codes.to_vec(),
        g_b.clone(),
        d_b.clone(),
        base.clone(),
        Some(default_sigma(minranks)),
    )?;
    let (result, trace) = run_algorithm1(&inputs)?;
    let decoder = build_decoder_de(spec, &inputs, &decoders, &result)?;

    let expected = minranks.iter().sum::<usize>() - minranks.iter().min().unwrap();
    if result.codelength != expected {
        return Err(Error::Invariant("cyclic construction length differs from Σ mrk − min mrk"));
    }
    let lb = lower_bound(spec, minranks)?;
    if lb.value != expected {
        return Err(Error::Invariant("lower bound does not match the cyclic construction"));
    }
    Ok(CycleConstruction {
        result,
        base_encoder: g_b,
        base_decoder: d_b,
        decoder,
        lower_bound: lb,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn detects_relabeled_cycle() {
        let base = TriMatrix::from_strs(&["10x", "x10", "0x1"]).unwrap();
        // 0 knows 2, 2 knows 1, 1 knows 0.
        assert_eq!(cycle_order(&base), Some(vec![0, 2, 1]));
        assert_eq!(cycle_order(&TriMatrix::from_strs(&["1x0", "x10", "001"]).unwrap()), None);
    }

    #[test]
    fn two_cycle_saves_one_transmission() {
        let base = TriMatrix::from_strs(&["1x", "x1"]).unwrap();
        let one = TriMatrix::from_strs(&["1"]).unwrap();
        let spec = ExtensionSpec::new(base, vec![one.clone(), one]).unwrap();
        let codes = vec![BinMatrix::identity(1), BinMatrix::identity(1)];
        let out = theorem2_cycle(&spec, &[1, 1], &codes).unwrap();
        assert_eq!(out.result.codelength, 1);
        assert_eq!(out.lower_bound.value, 1);
    }
}
