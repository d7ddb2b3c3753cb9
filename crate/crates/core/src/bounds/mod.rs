//! Bounds on the minrank of a joint extension and the constructions that
//! meet them.

mod cycle;
mod lemma2;
mod lower;
mod theorem1;

use alloc::vec::Vec;

pub use cycle::{cycle_order, theorem2_cycle, CycleConstruction};
pub use lemma2::{check_top_ranked, lemma2_construct, lemma2_search, Lemma2Inputs};
pub use lower::{lower_bound, BoundReport};
pub use theorem1::{theorem1_certificate, theorem1_check, Theorem1Certificate};

use crate::BinMatrix;

/// An encoder for an extended problem, with the bookkeeping that produced
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub encoder: BinMatrix,
    /// A completion of the extended fitting matrix whose rows lie in the
    /// row space of `encoder`, when the construction yields one.
    pub full_completion: Option<BinMatrix>,
    pub codelength: usize,
    /// Rows contributed by each filled block-row, in block-row order.
    pub blockrow_heights: Vec<usize>,
}
