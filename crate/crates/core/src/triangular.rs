//! Upper-triangulable submatrices.
//!
//! A square tri-valued matrix is upper-triangulable when some row and
//! column reordering puts `1` on the whole diagonal and `0` strictly below
//! it. Unknowns may appear only above the diagonal.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::Permutation;
use crate::{Entry, Error, Result, TriMatrix};

/// A certified upper-triangulable submatrix of a host matrix.
///
/// `row_perm` and `col_perm` act on the selected submatrix: entry `(a, b)`
/// of the triangular form is host entry
/// `(row_indices[row_perm[a]], col_indices[col_perm[b]])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangulableWitness {
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
}

impl TriangulableWitness {
    pub fn size(&self) -> usize {
        self.col_indices.len()
    }

    /// Host rows in diagonal order.
    pub fn ordered_rows(&self) -> Vec<usize> {
        self.row_perm.apply_slice(&self.row_indices)
    }

    /// Host columns in diagonal order.
    pub fn ordered_cols(&self) -> Vec<usize> {
        self.col_perm.apply_slice(&self.col_indices)
    }

    /// Re-applies the permutations and checks the triangular pattern.
    pub fn certify(&self, host: &TriMatrix) -> bool {
        let p = self.size();
        if self.row_indices.len() != p || self.row_perm.len() != p || self.col_perm.len() != p {
            return false;
        }
        let strictly_ascending = |v: &[usize], bound: usize| {
            v.windows(2).all(|w| w[0] < w[1]) && v.last().is_none_or(|&x| x < bound)
        };
        if !strictly_ascending(&self.row_indices, host.rows())
            || !strictly_ascending(&self.col_indices, host.cols())
        {
            return false;
        }
        let rows = self.ordered_rows();
        let cols = self.ordered_cols();
        for a in 0..p {
            for b in 0..=a {
                let e = host.get(rows[a], cols[b]);
                let ok = if a == b { e == Entry::One } else { e == Entry::Zero };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for TriangulableWitness {
    /// `rows={..} cols={..}`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows=")?;
        write_set(f, &self.row_indices)?;
        write!(f, " cols=")?;
        write_set(f, &self.col_indices)
    }
}

/// Writes `{a,b,c}` with 1-based entries.
pub fn write_set(f: &mut impl fmt::Write, items: &[usize]) -> fmt::Result {
    f.write_str("{")?;
    for (k, i) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", i + 1)?;
    }
    f.write_str("}")
}

/// Diagonal order of a triangulable square matrix, as (row, col) pairs in
/// local coordinates, or `None`.
fn triangular_order(m: &TriMatrix) -> Option<Vec<(usize, usize)>> {
    let p = m.rows();
    debug_assert!(p <= 64);
    let full = if p == 64 { u64::MAX } else { (1u64 << p) - 1 };
    let mut failed = BTreeSet::new();
    let mut order = Vec::with_capacity(p);
    if search(m, full, full, &mut order, &mut failed) {
        Some(order)
    } else {
        None
    }
}

/// Backtracking over columns whose remaining entries are all `0` except a
/// single `1`. States that are known to fail are memoized.
fn search(
    m: &TriMatrix,
    rows: u64,
    cols: u64,
    order: &mut Vec<(usize, usize)>,
    failed: &mut BTreeSet<(u64, u64)>,
) -> bool {
    if cols == 0 {
        return true;
    }
    if failed.contains(&(rows, cols)) {
        return false;
    }
    for c in bits(cols) {
        let mut pivot = None;
        let mut ok = true;
        for r in bits(rows) {
            match m.get(r, c) {
                Entry::Zero => {}
                Entry::One if pivot.is_none() => pivot = Some(r),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        let Some(r) = pivot.filter(|_| ok) else {
            continue;
        };
        order.push((r, c));
        if search(m, rows & !(1 << r), cols & !(1 << c), order, failed) {
            return true;
        }
        order.pop();
    }
    failed.insert((rows, cols));
    false
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

fn witness_for(
    host: &TriMatrix,
    row_indices: Vec<usize>,
    col_indices: Vec<usize>,
) -> Option<TriangulableWitness> {
    let sub = host.select(&row_indices, &col_indices);
    let order = triangular_order(&sub)?;
    let row_perm = Permutation::new(order.iter().map(|&(r, _)| r).collect()).ok()?;
    let col_perm = Permutation::new(order.iter().map(|&(_, c)| c).collect()).ok()?;
    Some(TriangulableWitness {
        row_indices,
        col_indices,
        row_perm,
        col_perm,
    })
}

/// Tests a square matrix for upper-triangulability.
pub fn is_upper_triangulable(fm: &TriMatrix) -> Result<Option<TriangulableWitness>> {
    if fm.rows() != fm.cols() {
        return Err(Error::NotSquare {
            rows: fm.rows(),
            cols: fm.cols(),
        });
    }
    if fm.rows() > 64 {
        return Err(Error::IndexOutOfRange {
            context: "triangulability search size",
            index: fm.rows() - 1,
            bound: 64,
        });
    }
    Ok(witness_for(fm, (0..fm.rows()).collect(), (0..fm.cols()).collect()))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Every upper-triangulable square submatrix of `fm`, largest first, then
/// by row set and column set in lexicographic order.
pub fn enumerate_triangulable_submatrices(fm: &TriMatrix) -> Vec<TriangulableWitness> {
    let mut out = Vec::new();
    let max = fm.rows().min(fm.cols()).min(64);
    for k in (1..=max).rev() {
        for rows in subsets(fm.rows(), k) {
            for cols in subsets(fm.cols(), k) {
                if let Some(w) = witness_for(fm, rows.clone(), cols) {
                    out.push(w);
                }
            }
        }
    }
    out
}
