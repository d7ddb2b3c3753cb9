//! Receiver lists and tri-valued fitting matrices.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::{BinMatrix, Blocks};
use crate::{Error, Result};

/// One entry of a fitting matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Zero,
    One,
    /// Side information: the completion may pick either value.
    Unknown,
}

impl Entry {
    pub fn as_char(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::Unknown => 'x',
        }
    }

    pub fn from_bit(b: bool) -> Self {
        if b {
            Entry::One
        } else {
            Entry::Zero
        }
    }

    /// Whether a completion may place `b` here.
    pub fn admits(self, b: bool) -> bool {
        match self {
            Entry::Zero => !b,
            Entry::One => b,
            Entry::Unknown => true,
        }
    }
}

/// A grid over {0, 1, x}.
///
/// Any grid can be stored; [`TriMatrix::check_fitting`] enforces the
/// one-demand-per-row shape of a fitting matrix where it matters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TriMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
}

impl TriMatrix {
    pub fn filled(rows: usize, cols: usize, e: Entry) -> Self {
        TriMatrix {
            rows,
            cols,
            entries: vec![e; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Entry) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        TriMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows<R: AsRef<[Entry]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "ragged row",
                    expected: (1, cols),
                    found: (1, row.len()),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(TriMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Parses rows of `0`, `1`, `x` characters. Intended for literals in
    /// code; files go through the text formats of the companion crate.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(rows.len());
        for (r, s) in rows.iter().enumerate() {
            let mut row = Vec::with_capacity(s.len());
            for (c, ch) in s.chars().filter(|c| *c != ' ').enumerate() {
                row.push(match ch {
                    '0' => Entry::Zero,
                    '1' => Entry::One,
                    'x' => Entry::Unknown,
                    _ => {
                        return Err(Error::IndexOutOfRange {
                            context: "tri-valued literal",
                            index: r * 1000 + c,
                            bound: 0,
                        })
                    }
                });
            }
            parsed.push(row);
        }
        TriMatrix::from_rows(&parsed)
    }

    /// The fully known pattern of `m`.
    pub fn from_bin(m: &BinMatrix) -> Self {
        TriMatrix::from_fn(m.rows(), m.cols(), |r, c| Entry::from_bit(m.get(r, c)))
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
    pub fn get(&self, r: usize, c: usize) -> Entry {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, e: Entry) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of range");
        self.entries[r * self.cols + c] = e;
    }

    pub fn row(&self, r: usize) -> &[Entry] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Positions of the unknown entries in row-major order.
    pub fn unknown_positions(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == Entry::Unknown)
            .map(|(k, _)| (k / self.cols, k % self.cols))
            .collect()
    }

    pub fn unknown_count(&self) -> usize {
        self.entries.iter().filter(|e| **e == Entry::Unknown).count()
    }

    /// Column of the single `1` in row `r`.
    pub fn demand_of_row(&self, r: usize) -> Result<usize> {
        let mut ones = self
            .row(r)
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == Entry::One)
            .map(|(c, _)| c);
        match (ones.next(), ones.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(Error::RowDemand {
                row: r,
                ones: self.row(r).iter().filter(|e| **e == Entry::One).count(),
            }),
        }
    }

    /// Demanded column of every row.
    pub fn demands(&self) -> Result<Vec<usize>> {
        (0..self.rows).map(|r| self.demand_of_row(r)).collect()
    }

    /// Checks that every row holds exactly one `1`.
    pub fn check_fitting(&self) -> Result<()> {
        self.demands().map(|_| ())
    }

    /// The completion that sets the unknowns, in row-major order, to
    /// `assignment`.
    pub fn completion_with(&self, assignment: &[bool]) -> Result<BinMatrix> {
        let unknowns = self.unknown_count();
        if assignment.len() != unknowns {
            return Err(Error::DimensionMismatch {
                context: "unknown assignment",
                expected: (1, unknowns),
                found: (1, assignment.len()),
            });
        }
        let mut m = BinMatrix::zeros(self.rows, self.cols);
        let mut next = assignment.iter();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = match self.get(r, c) {
                    Entry::Zero => false,
                    Entry::One => true,
                    Entry::Unknown => *next.next().unwrap(),
                };
                if v {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    /// Whether `f` agrees with `self` at every known entry.
    pub fn completed_by(&self, f: &BinMatrix) -> Result<bool> {
        if f.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                context: "completion",
                expected: self.dims(),
                found: f.dims(),
            });
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).admits(f.get(r, c)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> TriMatrix {
        TriMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }
}

/// Whether `f` completes `fm`.
pub fn completes(f: &BinMatrix, fm: &TriMatrix) -> Result<bool> {
    fm.completed_by(f)
}

impl Blocks for TriMatrix {
    fn dims(&self) -> (usize, usize) {
        TriMatrix::dims(self)
    }
    fn blank(rows: usize, cols: usize) -> Self {
        TriMatrix::filled(rows, cols, Entry::Zero)
    }
    fn window(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        TriMatrix::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }
    fn paste(&mut self, r0: usize, c0: usize, src: &Self) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols);
        for i in 0..src.rows {
            for j in 0..src.cols {
                self.set(r0 + i, c0 + j, src.get(i, j));
            }
        }
    }
}

impl fmt::Display for TriMatrix {
    /// One line per row of `0`/`1`/`x`, each terminated by `\n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for e in self.row(r) {
                write!(f, "{}", e.as_char())?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TriMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// A receiver after normalization: one demand, a side-information set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Receiver {
    pub wants: usize,
    pub knows: BTreeSet<usize>,
}

/// A groupcast problem with one demanded message per receiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProblemInstance {
    num_messages: usize,
    receivers: Vec<Receiver>,
}

impl ProblemInstance {
    pub fn new(num_messages: usize, receivers: Vec<Receiver>) -> Result<Self> {
        let mut demanded = vec![false; num_messages];
        for (i, r) in receivers.iter().enumerate() {
            for &k in core::iter::once(&r.wants).chain(&r.knows) {
                if k >= num_messages {
                    return Err(Error::MessageOutOfRange {
                        receiver: i,
                        message: k,
                        num_messages,
                    });
                }
            }
            if r.knows.contains(&r.wants) {
                return Err(Error::DemandKnown {
                    receiver: i,
                    message: r.wants,
                });
            }
            demanded[r.wants] = true;
        }
        if let Some(message) = demanded.iter().position(|d| !d) {
            return Err(Error::UndemandedMessage { message });
        }
        Ok(ProblemInstance {
            num_messages,
            receivers,
        })
    }

    /// Splits receivers with several demands into one receiver per demand,
    /// keeping the receiver order and then the ascending demand order.
    pub fn normalize(num_messages: usize, raw: &[(Vec<usize>, BTreeSet<usize>)]) -> Result<Self> {
        let mut receivers = Vec::new();
        for (i, (wants, knows)) in raw.iter().enumerate() {
            let wants: BTreeSet<usize> = wants.iter().copied().collect();
            if wants.is_empty() {
                return Err(Error::NoDemand { receiver: i });
            }
            for &w in &wants {
                if knows.contains(&w) {
                    return Err(Error::DemandKnown {
                        receiver: i,
                        message: w,
                    });
                }
                receivers.push(Receiver {
                    wants: w,
                    knows: knows.clone(),
                });
            }
        }
        ProblemInstance::new(num_messages, receivers)
    }

    pub fn num_messages(&self) -> usize {
        self.num_messages
    }

    pub fn num_receivers(&self) -> usize {
        self.receivers.len()
    }

    pub fn receivers(&self) -> &[Receiver] {
        &self.receivers
    }

    pub fn fitting_matrix(&self) -> TriMatrix {
        TriMatrix::from_fn(self.receivers.len(), self.num_messages, |i, j| {
            let r = &self.receivers[i];
            if r.wants == j {
                Entry::One
            } else if r.knows.contains(&j) {
                Entry::Unknown
            } else {
                Entry::Zero
            }
        })
    }

    /// Reads a problem back from its fitting matrix.
    pub fn problem_of(fm: &TriMatrix) -> Result<Self> {
        let receivers = (0..fm.rows())
            .map(|r| {
                Ok(Receiver {
                    wants: fm.demand_of_row(r)?,
                    knows: (0..fm.cols())
                        .filter(|&c| fm.get(r, c) == Entry::Unknown)
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ProblemInstance::new(fm.cols(), receivers)
    }
}
