//! Dense GF(2) linear algebra.

mod bitvec;
mod matrix;

use alloc::vec::Vec;

pub use bitvec::BitVec;
pub use matrix::BinMatrix;
pub(crate) use bitvec::WORD;
pub(crate) use matrix::{rank_single_word, solve_left_transposed};

use crate::{Error, Result};

/// Which side of a matrix a permutation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Cols,
}

/// A bijection on `0..n`, stored as an index map.
///
/// Applying `p` along an axis moves source index `p.mapping()[i]` to
/// position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = alloc::vec![false; mapping.len()];
        for &m in &mapping {
            if m >= seen.len() || seen[m] {
                return Err(Error::InvalidPermutation);
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange {
                context: "transposition",
                index: a.max(b),
                bound: n,
            });
        }
        let mut p = Permutation::identity(n);
        p.mapping.swap(a, b);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { mapping: inv }
    }

    /// `self` after `first`: applying the result equals applying `first`
    /// and then `self`.
    pub fn after(&self, first: &Permutation) -> Result<Permutation> {
        if self.len() != first.len() {
            return Err(Error::DimensionMismatch {
                context: "permutation composition",
                expected: (1, first.len()),
                found: (1, self.len()),
            });
        }
        Ok(Permutation {
            mapping: self.mapping.iter().map(|&i| first.mapping[i]).collect(),
        })
    }

    /// Reorders a slice: `out[i] = items[mapping[i]]`.
    pub fn apply_slice<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.mapping.iter().map(|&i| items[i].clone()).collect()
    }

    pub fn to_matrix(&self) -> BinMatrix {
        BinMatrix::from_fn(self.len(), self.len(), |r, c| self.mapping[r] == c)
    }
}

impl BinMatrix {
    /// Reorders rows or columns by `p`.
    pub fn apply_perm(&self, p: &Permutation, axis: Axis) -> Result<BinMatrix> {
        let len = match axis {
            Axis::Rows => self.rows(),
            Axis::Cols => self.cols(),
        };
        if p.len() != len {
            return Err(Error::DimensionMismatch {
                context: "permutation size",
                expected: (1, len),
                found: (1, p.len()),
            });
        }
        Ok(match axis {
            Axis::Rows => self.select_rows(p.mapping()),
            Axis::Cols => {
                let rows: Vec<usize> = (0..self.rows()).collect();
                self.select(&rows, p.mapping())
            }
        })
    }
}

/// Shared block operations of [`BinMatrix`] and [`crate::TriMatrix`].
pub trait Blocks: Sized {
    fn dims(&self) -> (usize, usize);
    /// Matrix of the given size holding only zeros.
    fn blank(rows: usize, cols: usize) -> Self;
    fn window(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self;
    fn paste(&mut self, r0: usize, c0: usize, src: &Self);
}

impl Blocks for BinMatrix {
    fn dims(&self) -> (usize, usize) {
        BinMatrix::dims(self)
    }
    fn blank(rows: usize, cols: usize) -> Self {
        BinMatrix::zeros(rows, cols)
    }
    fn window(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        BinMatrix::window(self, r0, nr, c0, nc)
    }
    fn paste(&mut self, r0: usize, c0: usize, src: &Self) {
        BinMatrix::paste(self, r0, c0, src)
    }
}

/// Row heights and column widths of a block partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockShape {
    row_heights: Vec<usize>,
    col_widths: Vec<usize>,
    row_offsets: Vec<usize>,
    col_offsets: Vec<usize>,
}

fn prefix_sums(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::with_capacity(sizes.len() + 1);
    out.push(0);
    for &s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}

impl BlockShape {
    pub fn new(row_heights: Vec<usize>, col_widths: Vec<usize>) -> Self {
        BlockShape {
            row_offsets: prefix_sums(&row_heights),
            col_offsets: prefix_sums(&col_widths),
            row_heights,
            col_widths,
        }
    }

    pub fn row_heights(&self) -> &[usize] {
        &self.row_heights
    }

    pub fn col_widths(&self) -> &[usize] {
        &self.col_widths
    }

    pub fn block_rows(&self) -> usize {
        self.row_heights.len()
    }

    pub fn block_cols(&self) -> usize {
        self.col_widths.len()
    }

    pub fn total_rows(&self) -> usize {
        *self.row_offsets.last().unwrap()
    }

    pub fn total_cols(&self) -> usize {
        *self.col_offsets.last().unwrap()
    }

    pub fn row_offset(&self, i: usize) -> usize {
        self.row_offsets[i]
    }

    pub fn col_offset(&self, j: usize) -> usize {
        self.col_offsets[j]
    }

    /// Block-row containing global row `r` and the offset inside it.
    pub fn locate_row(&self, r: usize) -> Option<(usize, usize)> {
        locate(&self.row_offsets, r)
    }

    /// Block-column containing global column `c` and the offset inside it.
    pub fn locate_col(&self, c: usize) -> Option<(usize, usize)> {
        locate(&self.col_offsets, c)
    }

    /// Concatenates `blocks[i][j]` into one matrix.
    pub fn assemble<M: Blocks>(&self, blocks: &[Vec<M>]) -> Result<M> {
        if blocks.len() != self.block_rows() {
            return Err(Error::DimensionMismatch {
                context: "block grid",
                expected: (self.block_rows(), self.block_cols()),
                found: (blocks.len(), blocks.first().map_or(0, Vec::len)),
            });
        }
        let mut out = M::blank(self.total_rows(), self.total_cols());
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != self.block_cols() {
                return Err(Error::DimensionMismatch {
                    context: "block grid",
                    expected: (self.block_rows(), self.block_cols()),
                    found: (blocks.len(), row.len()),
                });
            }
            for (j, b) in row.iter().enumerate() {
                let expected = (self.row_heights[i], self.col_widths[j]);
                if b.dims() != expected {
                    return Err(Error::BlockDimension {
                        block_row: i,
                        block_col: j,
                        expected,
                        found: b.dims(),
                    });
                }
                out.paste(self.row_offsets[i], self.col_offsets[j], b);
            }
        }
        Ok(out)
    }

    /// Copies block `(i, j)` out of `m`.
    pub fn extract<M: Blocks>(&self, m: &M, i: usize, j: usize) -> Result<M> {
        if m.dims() != (self.total_rows(), self.total_cols()) {
            return Err(Error::DimensionMismatch {
                context: "block extraction",
                expected: (self.total_rows(), self.total_cols()),
                found: m.dims(),
            });
        }
        if i >= self.block_rows() {
            return Err(Error::IndexOutOfRange {
                context: "block-row",
                index: i,
                bound: self.block_rows(),
            });
        }
        if j >= self.block_cols() {
            return Err(Error::IndexOutOfRange {
                context: "block-column",
                index: j,
                bound: self.block_cols(),
            });
        }
        Ok(m.window(
            self.row_offsets[i],
            self.row_heights[i],
            self.col_offsets[j],
            self.col_widths[j],
        ))
    }
}

fn locate(offsets: &[usize], x: usize) -> Option<(usize, usize)> {
    if x >= *offsets.last()? {
        return None;
    }
    // Last offset that is <= x, skipping empty blocks.
    let k = offsets.partition_point(|&o| o <= x) - 1;
    Some((k, x - offsets[k]))
}
