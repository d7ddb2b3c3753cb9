use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::bitvec::{bit, parity_and, words_for, xor_into, BitVec, WORD};
use crate::{Error, Result};

/// Dense GF(2) matrix with bit-packed rows.
///
/// Bits past `cols` in the last word of each row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BinMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BinMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` values.
    ///
    /// Rows must all have the same length; any value other than 0 or 1 is
    /// rejected.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BinMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "ragged row",
                    expected: (1, cols),
                    found: (1, row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(r, c, true),
                    _ => {
                        return Err(Error::IndexOutOfRange {
                            context: "GF(2) entry",
                            index: v as usize - 1,
                            bound: 1,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_bitvecs(cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = BinMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "row vector length",
                    expected: (1, cols),
                    found: (1, v.len()),
                });
            }
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        bit(self.row_words(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        let w = &mut self.words[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        self.words[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut t = BinMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BinMatrix) -> Result<BinMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: (rhs.rows, rhs.cols),
                found: (self.cols, rhs.cols),
            });
        }
        let mut out = BinMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let lhs_row = self.row(r);
            let dst = r * out.stride;
            for k in lhs_row.ones() {
                xor_into(&mut out.words[dst..dst + out.stride], rhs.row_words(k));
            }
        }
        Ok(out)
    }

    /// Entry-wise sum over GF(2).
    pub fn add(&self, rhs: &BinMatrix) -> Result<BinMatrix> {
        if self.dims() != rhs.dims() {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                expected: self.dims(),
                found: rhs.dims(),
            });
        }
        let mut out = self.clone();
        xor_into(&mut out.words, &rhs.words);
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "row vector times matrix",
                expected: (1, self.rows),
                found: (1, v.len()),
            });
        }
        let mut acc = vec![0u64; self.stride];
        for k in v.ones() {
            xor_into(&mut acc, self.row_words(k));
        }
        Ok(BitVec::from_words(self.cols, acc))
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix times vector",
                expected: (self.cols, 1),
                found: (v.len(), 1),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if parity_and(self.row_words(r), v.words()) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// GF(2) rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        if self.stride == 1 {
            let mut rows = self.words.clone();
            return rank_single_word(&mut rows);
        }
        let mut scratch = self.clone();
        scratch.eliminate_in_place().len()
    }

    /// Reduces `self` to row echelon form in place, choosing the leftmost
    /// available pivot column each time. Returns the pivot columns; pivot
    /// rows occupy the first `len` rows.
    fn eliminate_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| bit(self.row_words(r), c)) else {
                continue;
            };
            self.swap_rows(p, next);
            let (head, tail) = self.words.split_at_mut((next + 1) * self.stride);
            let pivot = &head[next * self.stride..];
            for row in tail.chunks_mut(self.stride) {
                if bit(row, c) {
                    xor_into(row, pivot);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Indices of the greedy basis rows: scanning top to bottom, a row is
    /// kept when it is independent of the rows kept before it.
    pub fn basis_rows(&self) -> Vec<usize> {
        let mut span = Span::new(self.cols);
        (0..self.rows)
            .filter(|&r| span.insert(self.row_words(r)))
            .collect()
    }

    /// Whether `v` lies in the row space of `self`.
    pub fn row_space_contains(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "row-space membership",
                expected: (1, self.cols),
                found: (1, v.len()),
            });
        }
        let mut span = Span::new(self.cols);
        for r in 0..self.rows {
            span.insert(self.row_words(r));
        }
        Ok(span.contains(v.words()))
    }

    /// Finds a row vector `d` such that `d·self` is 1 on every column in
    /// `ones` and 0 on every column in `zeros`, or `None` when no such
    /// vector exists.
    ///
    /// The system is reduced with leftmost pivots and free variables are
    /// set to zero, so the answer is deterministic.
    pub fn solve_left(&self, ones: &[usize], zeros: &[usize]) -> Result<Option<BitVec>> {
        solve_left_transposed(&self.transpose(), self.rows, self.cols, ones, zeros)
    }

    /// Coefficients expressing `v` as a combination of the rows of `self`.
    pub fn express(&self, v: &BitVec) -> Result<Option<BitVec>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "row expansion",
                expected: (1, self.cols),
                found: (1, v.len()),
            });
        }
        let ones: Vec<usize> = v.ones().collect();
        let zeros: Vec<usize> = (0..self.cols).filter(|&c| !v.get(c)).collect();
        self.solve_left(&ones, &zeros)
    }

    pub fn select_rows(&self, rows: &[usize]) -> BinMatrix {
        let mut out = BinMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BinMatrix {
        BinMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Contiguous window `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn window(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> BinMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        BinMatrix::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Copies `src` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &BinMatrix) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols);
        for i in 0..src.rows {
            for j in src.row(i).ones() {
                self.set(r0 + i, c0 + j, true);
            }
        }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, parts: &[&BinMatrix]) -> Result<BinMatrix> {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = BinMatrix::zeros(rows, cols);
        let mut at = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch {
                    context: "vertical stack",
                    expected: (p.rows, cols),
                    found: p.dims(),
                });
            }
            for r in 0..p.rows {
                out.row_words_mut(at + r).copy_from_slice(p.row_words(r));
            }
            at += p.rows;
        }
        Ok(out)
    }
}

impl fmt::Display for BinMatrix {
    /// One line per row of `0`/`1` characters, each terminated by `\n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Rank of a matrix whose rows each fit into one word. Clobbers `rows`.
#[inline]
pub(crate) fn rank_single_word(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let low = r & r.wrapping_neg();
        for row in rows[i + 1..].iter_mut() {
            if *row & low != 0 {
                *row ^= r;
            }
        }
    }
    rank
}

/// Incrementally built row echelon basis.
struct Span {
    stride: usize,
    rows: Vec<u64>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(cols: usize) -> Self {
        Span {
            stride: words_for(cols),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [u64]) {
        for (k, &p) in self.pivots.iter().enumerate() {
            if bit(v, p) {
                xor_into(v, &self.rows[k * self.stride..(k + 1) * self.stride]);
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = first_one(&w) else {
            return false;
        };
        self.rows.extend_from_slice(&w);
        self.pivots.push(p);
        true
    }

    fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}

/// Solves `d·g` against the ones/zeros pattern given `gt = gᵀ`.
///
/// Each constrained column `c` contributes the equation
/// `Σ_k d_k g[k][c] = [c ∈ ones]`. The augmented system is brought to
/// reduced row echelon form with ascending pivot variables; free variables
/// are zero.
pub(crate) fn solve_left_transposed(
    gt: &BinMatrix,
    g_rows: usize,
    g_cols: usize,
    ones: &[usize],
    zeros: &[usize],
) -> Result<Option<BitVec>> {
    for &c in ones.iter().chain(zeros) {
        if c >= g_cols {
            return Err(Error::IndexOutOfRange {
                context: "constrained column",
                index: c,
                bound: g_cols,
            });
        }
    }
    if let Some(&c) = ones.iter().find(|c| zeros.contains(c)) {
        return Err(Error::IndexOutOfRange {
            context: "column listed as both one and zero",
            index: c,
            bound: g_cols,
        });
    }

    // Augmented rows: g_rows coefficient bits, then the right-hand side.
    let width = g_rows + 1;
    let stride = words_for(width);
    let mut eqs: Vec<u64> = Vec::with_capacity((ones.len() + zeros.len()) * stride);
    let mut push = |c: usize, rhs: bool| {
        let start = eqs.len();
        eqs.extend_from_slice(gt.row_words(c));
        eqs.resize(start + stride, 0);
        if rhs {
            eqs[start + g_rows / WORD] |= 1u64 << (g_rows % WORD);
        }
    };
    for &c in ones {
        push(c, true);
    }
    for &c in zeros {
        push(c, false);
    }
    let n_eq = eqs.len() / stride;

    let mut pivot_of_row = Vec::new();
    let mut next = 0;
    for var in 0..g_rows {
        if next == n_eq {
            break;
        }
        let Some(p) = (next..n_eq).find(|&r| bit(&eqs[r * stride..(r + 1) * stride], var)) else {
            continue;
        };
        if p != next {
            for w in 0..stride {
                eqs.swap(p * stride + w, next * stride + w);
            }
        }
        let pivot: Vec<u64> = eqs[next * stride..(next + 1) * stride].to_vec();
        for r in 0..n_eq {
            if r != next {
                let row = &mut eqs[r * stride..(r + 1) * stride];
                if bit(row, var) {
                    xor_into(row, &pivot);
                }
            }
        }
        pivot_of_row.push(var);
        next += 1;
    }
    // Rows below the pivots have no coefficients left; a set rhs is a contradiction.
    for r in next..n_eq {
        if bit(&eqs[r * stride..(r + 1) * stride], g_rows) {
            return Ok(None);
        }
    }
    let mut d = BitVec::zeros(g_rows);
    for (r, &var) in pivot_of_row.iter().enumerate() {
        if bit(&eqs[r * stride..(r + 1) * stride], g_rows) {
            d.set(var, true);
        }
    }
    Ok(Some(d))
}
