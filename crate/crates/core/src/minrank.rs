//! Exact minrank by exhaustive completion search.
//!
//! Unknowns are numbered row-major. An assignment is encoded as an integer
//! whose most significant bit (of `unknowns` bits) is the first unknown, so
//! comparing codes compares assignments lexicographically with 0 before 1.
//! The walk itself follows a Gray code, flipping one unknown per step.

use alloc::vec::Vec;

use crate::gf2::{rank_single_word, BinMatrix, WORD};
use crate::{Error, Result, TriMatrix, HARD_MAX_UNKNOWNS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinrankResult {
    pub value: usize,
    /// The lexicographically first completion of minimum rank.
    pub witness: BinMatrix,
}

/// Best completion seen by a (partial) scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Best {
    pub value: usize,
    pub code: u64,
}

impl Best {
    /// Deterministic merge: smaller rank, then smaller code.
    pub fn merge(self, other: Best) -> Best {
        if (other.value, other.code) < (self.value, self.code) {
            other
        } else {
            self
        }
    }
}

/// Precomputed state for scanning the completions of a fitting matrix.
#[derive(Debug, Clone)]
pub struct CompletionSearch {
    base: BinMatrix,
    positions: Vec<(usize, usize)>,
}

impl CompletionSearch {
    /// Fails with [`Error::TooManyUnknowns`] when `fm` has more than `cap`
    /// unknowns. Caps beyond the hard limit are clamped to it.
    pub fn new(fm: &TriMatrix, cap: usize) -> Result<Self> {
        let positions = fm.unknown_positions();
        let cap = cap.min(HARD_MAX_UNKNOWNS);
        if positions.len() > cap {
            return Err(Error::TooManyUnknowns {
                count: positions.len(),
                cap,
            });
        }
        let zeros = alloc::vec![false; positions.len()];
        Ok(CompletionSearch {
            base: fm.completion_with(&zeros)?,
            positions,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.positions.len()
    }

    /// The completion encoded by `code`.
    pub fn completion(&self, code: u64) -> BinMatrix {
        let u = self.unknowns();
        let mut m = self.base.clone();
        for (k, &(r, c)) in self.positions.iter().enumerate() {
            if (code >> (u - 1 - k)) & 1 == 1 {
                m.set(r, c, true);
            }
        }
        m
    }

    /// Scans every completion whose first `prefix_len` unknowns spell
    /// `prefix` (most significant first).
    pub fn scan(&self, prefix_len: usize, prefix: u64) -> Best {
        let u = self.unknowns();
        assert!(prefix_len <= u);
        let free = u - prefix_len;
        let high = prefix << free;
        let start = self.completion(high);
        // Bit `b` of the code is unknown `u - 1 - b`.
        let flip = |b: usize| self.positions[u - 1 - b];

        if self.base.cols() <= WORD {
            let mut rows: Vec<u64> = (0..start.rows()).map(|r| start.row_words(r)[0]).collect();
            let mut scratch = rows.clone();
            let mut gray = 0u64;
            let mut best = Best {
                value: usize::MAX,
                code: u64::MAX,
            };
            let steps: u64 = 1u64 << free;
            for i in 0..steps {
                if i > 0 {
                    let b = i.trailing_zeros() as usize;
                    gray ^= 1 << b;
                    let (r, c) = flip(b);
                    rows[r] ^= 1u64 << c;
                }
                scratch.copy_from_slice(&rows);
                let value = rank_single_word(&mut scratch);
                best = best.merge(Best {
                    value,
                    code: high | gray,
                });
            }
            best
        } else {
            let mut m = start;
            let mut gray = 0u64;
            let mut best = Best {
                value: usize::MAX,
                code: u64::MAX,
            };
            for i in 0..(1u64 << free) {
                if i > 0 {
                    let b = i.trailing_zeros() as usize;
                    gray ^= 1 << b;
                    let (r, c) = flip(b);
                    m.toggle(r, c);
                }
                best = best.merge(Best {
                    value: m.rank(),
                    code: high | gray,
                });
            }
            best
        }
    }

    pub fn result(&self, best: Best) -> MinrankResult {
        MinrankResult {
            value: best.value,
            witness: self.completion(best.code),
        }
    }
}

/// Minimum rank over all completions of `fm`, with the lexicographically
/// first completion achieving it.
pub fn exact_minrank(fm: &TriMatrix, max_unknowns: usize) -> Result<MinrankResult> {
    let search = CompletionSearch::new(fm, max_unknowns)?;
    let best = search.scan(0, 0);
    Ok(search.result(best))
}
