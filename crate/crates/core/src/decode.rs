//! Decoder search and decoding simulation for a candidate encoder.
//!
//! An encoder `G` (rows are transmitted combinations) serves a fitting
//! matrix `F_x` exactly when some `D` makes `D·G` a completion of `F_x`.
//! Row `i` of `D` only has to produce a `1` at the demanded message and
//! `0` at every message receiver `i` neither wants nor knows.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::{solve_left_transposed, BinMatrix, BitVec};
use crate::{Entry, Error, Result, TriMatrix};

/// Largest message count accepted for exhaustive simulation.
pub const EXHAUSTIVE_MESSAGE_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecoderSearch {
    Found(BinMatrix),
    /// The first receiver (0-based) that cannot decode.
    Infeasible { receiver: usize },
}

impl DecoderSearch {
    pub fn decoder(self) -> Option<BinMatrix> {
        match self {
            DecoderSearch::Found(d) => Some(d),
            DecoderSearch::Infeasible { .. } => None,
        }
    }
}

fn check_columns(g: &BinMatrix, fm: &TriMatrix) -> Result<()> {
    if g.cols() != fm.cols() {
        return Err(Error::DimensionMismatch {
            context: "encoder columns against fitting matrix",
            expected: (g.rows(), fm.cols()),
            found: g.dims(),
        });
    }
    Ok(())
}

/// Decoding row for receiver `i`, if one exists.
fn receiver_row(gt: &BinMatrix, g: &BinMatrix, fm: &TriMatrix, i: usize) -> Result<Option<BitVec>> {
    let want = fm.demand_of_row(i)?;
    let zeros: Vec<usize> = (0..fm.cols())
        .filter(|&c| fm.get(i, c) == Entry::Zero)
        .collect();
    solve_left_transposed(gt, g.rows(), g.cols(), &[want], &zeros)
}

/// Builds a decoding matrix row by row, or names the first receiver that
/// has none.
pub fn find_decoding_matrix(g: &BinMatrix, fm: &TriMatrix) -> Result<DecoderSearch> {
    check_columns(g, fm)?;
    let gt = g.transpose();
    let mut rows = Vec::with_capacity(fm.rows());
    for i in 0..fm.rows() {
        match receiver_row(&gt, g, fm, i)? {
            Some(d) => rows.push(d),
            None => return Ok(DecoderSearch::Infeasible { receiver: i }),
        }
    }
    Ok(DecoderSearch::Found(BinMatrix::from_bitvecs(g.rows(), &rows)?))
}

/// Which message vectors a simulation tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trials {
    /// All `2^m` message vectors.
    Exhaustive,
    /// `trials` uniformly random message vectors from a seeded generator.
    Sampled { trials: u64, seed: u64 },
}

/// Plays out the broadcast: every receiver combines the codeword with its
/// side information and must recover its demand in every trial.
pub fn simulate_decoding(g: &BinMatrix, d: &BinMatrix, fm: &TriMatrix, trials: Trials) -> Result<bool> {
    Ok(first_decoding_failure(g, d, fm, trials)?.is_none())
}

/// Like [`simulate_decoding`] but reports the first receiver that decodes
/// wrongly.
pub fn first_decoding_failure(
    g: &BinMatrix,
    d: &BinMatrix,
    fm: &TriMatrix,
    trials: Trials,
) -> Result<Option<usize>> {
    check_columns(g, fm)?;
    if d.dims() != (fm.rows(), g.rows()) {
        return Err(Error::DimensionMismatch {
            context: "decoder",
            expected: (fm.rows(), g.rows()),
            found: d.dims(),
        });
    }
    let m = fm.cols();
    let demands = fm.demands()?;
    let dg = d.mul(g)?;
    // Side-information terms the receiver subtracts: (D·G)_{i,k} for k ∈ K_i.
    let side: Vec<BitVec> = (0..fm.rows())
        .map(|i| {
            let mut v = BitVec::zeros(m);
            for k in 0..m {
                if fm.get(i, k) == Entry::Unknown && dg.get(i, k) {
                    v.set(k, true);
                }
            }
            v
        })
        .collect();
    let d_rows: Vec<BitVec> = (0..d.rows()).map(|i| d.row(i)).collect();

    let check = |x: &BitVec| -> Result<Option<usize>> {
        let y = g.mul_vec(x)?;
        for i in 0..fm.rows() {
            let decoded = d_rows[i].dot(&y) ^ side[i].dot(x);
            if decoded != x.get(demands[i]) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };

    match trials {
        Trials::Exhaustive => {
            if m > EXHAUSTIVE_MESSAGE_CAP {
                return Err(Error::TooManyMessages {
                    count: m,
                    cap: EXHAUSTIVE_MESSAGE_CAP,
                });
            }
            let mut x = BitVec::zeros(m);
            for n in 0..(1u64 << m) {
                if n > 0 {
                    let b = n.trailing_zeros() as usize;
                    x.set(b, !x.get(b));
                }
                if let Some(i) = check(&x)? {
                    return Ok(Some(i));
                }
            }
        }
        Trials::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x = BitVec::zeros(m);
            for _ in 0..trials {
                for k in 0..m {
                    if k % 64 == 0 {
                        let word = rng.next_u64();
                        for b in 0..64.min(m - k) {
                            x.set(k + b, (word >> b) & 1 == 1);
                        }
                    }
                }
                if let Some(i) = check(&x)? {
                    return Ok(Some(i));
                }
            }
        }
    }
    Ok(None)
}

/// Outcome of checking an encoder against a fitting matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid { decoder: BinMatrix },
    /// First receiver (0-based) that cannot decode.
    Invalid { receiver: usize },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

/// Decoder search followed by simulation: exhaustive when the message
/// count is at most `exhaustive_threshold`, otherwise `sampled_trials`
/// seeded random vectors.
pub fn verify_code(
    g: &BinMatrix,
    fm: &TriMatrix,
    exhaustive_threshold: usize,
    sampled_trials: u64,
    seed: u64,
) -> Result<Verdict> {
    let d = match find_decoding_matrix(g, fm)? {
        DecoderSearch::Found(d) => d,
        DecoderSearch::Infeasible { receiver } => return Ok(Verdict::Invalid { receiver }),
    };
    let trials = if fm.cols() <= exhaustive_threshold.min(EXHAUSTIVE_MESSAGE_CAP) {
        Trials::Exhaustive
    } else {
        Trials::Sampled {
            trials: sampled_trials,
            seed,
        }
    };
    match first_decoding_failure(g, &d, fm, trials)? {
        None => Ok(Verdict::Valid { decoder: d }),
        Some(receiver) => Ok(Verdict::Invalid { receiver }),
    }
}
