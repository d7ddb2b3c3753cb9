#![allow(dead_code)]

use std::path::PathBuf;

use jointcode::format::{parse_bin, parse_tri};
use jointcode::manifest::load_extension;
use jointcode_core::extension::ExtensionSpec;
use jointcode_core::{BinMatrix, Entry, TriMatrix};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn tri(name: &str) -> TriMatrix {
    parse_tri(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn bin(name: &str) -> BinMatrix {
    parse_bin(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn spec(name: &str) -> ExtensionSpec {
    load_extension(&fixture(&format!("{name}.manifest"))).unwrap()
}

/// Whether some combination of rows of `g` matches row `i` of `fm`,
/// trying all `2^rows(g)` combinations.
pub fn brute_row_decodable(g: &BinMatrix, fm: &TriMatrix, i: usize) -> bool {
    let m = fm.cols();
    (0..1u64 << g.rows()).any(|d| {
        (0..m).all(|c| {
            let v = (0..g.rows()).filter(|&k| d >> k & 1 == 1 && g.get(k, c)).count() % 2 == 1;
            match fm.get(i, c) {
                Entry::One => v,
                Entry::Zero => !v,
                Entry::Unknown => true,
            }
        })
    })
}

pub fn brute_decodable(g: &BinMatrix, fm: &TriMatrix) -> bool {
    (0..fm.rows()).all(|i| brute_row_decodable(g, fm, i))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
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

/// Upper-triangulability by trying every pair of row and column orders.
pub fn brute_triangulable(fm: &TriMatrix) -> bool {
    let n = fm.rows();
    let perms = permutations(n);
    perms.iter().any(|rp| {
        perms.iter().any(|cp| {
            (0..n).all(|a| {
                (0..=a).all(|b| match fm.get(rp[a], cp[b]) {
                    Entry::One => a == b,
                    Entry::Zero => a != b,
                    Entry::Unknown => false,
                })
            })
        })
    })
}
