//! Strategies and brute-force oracles shared by the integration tests.
//! The oracles work on plain `Vec<Vec<u8>>` and do not call into the
//! library's elimination code.

#![allow(dead_code)]

use jointcode_core::extension::ExtensionSpec;
use jointcode_core::{BinMatrix, Entry, TriMatrix};
use proptest::collection::vec;
use proptest::prelude::*;

pub fn bin_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        vec(any::<bool>(), r * c).prop_map(move |bits| BinMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
    })
}

pub fn bin_matrix_dims(rows: usize, cols: usize) -> impl Strategy<Value = BinMatrix> {
    vec(any::<bool>(), rows * cols).prop_map(move |bits| BinMatrix::from_fn(rows, cols, |i, j| bits[i * cols + j]))
}

/// A fitting matrix with every column demanded and each entry off the
/// demand unknown with probability `p_unknown`.
pub fn fitting(max_rows: usize, max_cols: usize, p_unknown: f64) -> impl Strategy<Value = TriMatrix> {
    (1..=max_cols)
        .prop_flat_map(move |m| (Just(m), m..=max_rows.max(m)))
        .prop_flat_map(move |(m, n)| (Just(m), vec(0..m, n - m), vec(prop::bool::weighted(p_unknown), n * m)))
        .prop_flat_map(|(m, extra, unk)| {
            let demands: Vec<usize> = (0..m).chain(extra).collect();
            (Just(demands).prop_shuffle(), Just(m), Just(unk))
        })
        .prop_map(|(demands, m, unk)| {
            TriMatrix::from_fn(demands.len(), m, |i, j| {
                if demands[i] == j {
                    Entry::One
                } else if unk[i * m + j] {
                    Entry::Unknown
                } else {
                    Entry::Zero
                }
            })
        })
}

/// Any tri-valued grid, not necessarily a fitting matrix.
pub fn tri_grid(max_rows: usize, max_cols: usize) -> impl Strategy<Value = TriMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        vec(prop_oneof![Just(Entry::Zero), Just(Entry::One), Just(Entry::Unknown)], r * c)
            .prop_map(move |e| TriMatrix::from_fn(r, c, |i, j| e[i * c + j]))
    })
}

pub fn square_tri(max: usize) -> impl Strategy<Value = TriMatrix> {
    (1..=max).prop_flat_map(|n| {
        vec(prop_oneof![2 => Just(Entry::Zero), 2 => Just(Entry::One), 1 => Just(Entry::Unknown)], n * n)
            .prop_map(move |e| TriMatrix::from_fn(n, n, |i, j| e[i * n + j]))
    })
}

pub fn extension(
    base_max: usize,
    comp_max: usize,
    p_base: f64,
    p_comp: f64,
) -> impl Strategy<Value = ExtensionSpec> {
    fitting(base_max, base_max, p_base)
        .prop_flat_map(move |b| {
            let m = b.cols();
            (Just(b), vec(fitting(comp_max, comp_max, p_comp), m))
        })
        .prop_map(|(b, c)| ExtensionSpec::new(b, c).expect("generated parts are valid"))
}

pub fn to_rows(m: &BinMatrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect())
        .collect()
}

/// Rank by textbook elimination on byte rows.
pub fn oracle_rank(rows: &[Vec<u8>]) -> usize {
    let mut a: Vec<Vec<u8>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] == 1 {
                for k in 0..cols {
                    a[r][k] ^= a[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn oracle_rank_of(m: &BinMatrix) -> usize {
    oracle_rank(&to_rows(m))
}

/// Every completion, in lexicographic order of the row-major unknowns.
pub fn oracle_completions(fm: &TriMatrix) -> Vec<Vec<Vec<u8>>> {
    let (n, m) = fm.dims();
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..m).map(move |c| (r, c)))
        .filter(|&(r, c)| fm.get(r, c) == Entry::Unknown)
        .collect();
    let u = unknowns.len();
    (0..1u64 << u)
        .map(|code| {
            let mut rows: Vec<Vec<u8>> = (0..n)
                .map(|r| (0..m).map(|c| (fm.get(r, c) == Entry::One) as u8).collect())
                .collect();
            for (k, &(r, c)) in unknowns.iter().enumerate() {
                rows[r][c] = ((code >> (u - 1 - k)) & 1) as u8;
            }
            rows
        })
        .collect()
}

/// Minimum rank and the first completion reaching it.
pub fn oracle_minrank(fm: &TriMatrix) -> (usize, Vec<Vec<u8>>) {
    let mut best: Option<(usize, Vec<Vec<u8>>)> = None;
    for f in oracle_completions(fm) {
        let r = oracle_rank(&f);
        if best.as_ref().map_or(true, |(b, _)| r < *b) {
            best = Some((r, f));
        }
    }
    best.expect("at least one completion")
}

/// Whether some `d` makes `d·g` match row `i` of `fm`, by trying all
/// `2^rows(g)` combinations.
pub fn oracle_row_decodable(g: &BinMatrix, fm: &TriMatrix, i: usize) -> bool {
    let g = to_rows(g);
    let m = fm.cols();
    (0..1u64 << g.len()).any(|d| {
        let mut acc = vec![0u8; m];
        for (k, row) in g.iter().enumerate() {
            if (d >> k) & 1 == 1 {
                for c in 0..m {
                    acc[c] ^= row[c];
                }
            }
        }
        (0..m).all(|c| match fm.get(i, c) {
            Entry::One => acc[c] == 1,
            Entry::Zero => acc[c] == 0,
            Entry::Unknown => true,
        })
    })
}

pub fn oracle_decodable(g: &BinMatrix, fm: &TriMatrix) -> bool {
    (0..fm.rows()).all(|i| oracle_row_decodable(g, fm, i))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Upper-triangulability by trying every row and column ordering.
pub fn oracle_triangulable(fm: &TriMatrix) -> bool {
    let n = fm.rows();
    assert_eq!(n, fm.cols());
    let perms = permutations(n);
    perms.iter().any(|rp| {
        perms.iter().any(|cp| {
            (0..n).all(|a| {
                (0..=a).all(|b| {
                    let e = fm.get(rp[a], cp[b]);
                    if a == b {
                        e == Entry::One
                    } else {
                        e == Entry::Zero
                    }
                })
            })
        })
    })
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Every `(rows, cols)` pair whose submatrix is upper-triangulable.
pub fn oracle_triangulable_pairs(fm: &TriMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for k in 1..=fm.rows().min(fm.cols()) {
        for rows in subsets(fm.rows(), k) {
            for cols in subsets(fm.cols(), k) {
                if oracle_triangulable(&fm.select(&rows, &cols)) {
                    out.push((rows.clone(), cols));
                }
            }
        }
    }
    out
}

/// Replays decoding for every message vector: each receiver forms
/// `d_i·(g·x)`, cancels its side information and compares with its demand.
pub fn oracle_simulate(g: &BinMatrix, d: &BinMatrix, fm: &TriMatrix) -> bool {
    let m = fm.cols();
    let g = to_rows(g);
    let d = to_rows(d);
    let dg: Vec<Vec<u8>> = d
        .iter()
        .map(|drow| {
            (0..m)
                .map(|c| drow.iter().zip(&g).fold(0, |acc, (&dk, grow)| acc ^ (dk & grow[c])))
                .collect()
        })
        .collect();
    (0..1u64 << m).all(|x| {
        let bit = |c: usize| ((x >> c) & 1) as u8;
        let y: Vec<u8> = g
            .iter()
            .map(|row| (0..m).fold(0, |acc, c| acc ^ (row[c] & bit(c))))
            .collect();
        (0..fm.rows()).all(|i| {
            let mut v = d[i].iter().zip(&y).fold(0, |acc, (&a, &b)| acc ^ (a & b));
            let mut want = None;
            for c in 0..m {
                match fm.get(i, c) {
                    Entry::Unknown => v ^= dg[i][c] & bit(c),
                    Entry::One => want = Some(bit(c)),
                    Entry::Zero => {}
                }
            }
            want == Some(v)
        })
    })
}
