//! Text formats for matrices and problems.
//!
//! Matrices are written one row per line using `0`, `1` and (for fitting
//! matrices) `x`. Single spaces between entries are accepted on input and
//! never written. Problem files start with `m=<count>` followed by one
//! `wants=<list> knows=<list>` line per receiver with 1-based indices; a
//! receiver may list several wanted messages and is then split into one
//! receiver per demand. Problem files may contain blank lines and `#`
//! comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use jointcode_core::{BinMatrix, Entry, ProblemInstance, TriMatrix};

/// A syntax or validation error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Splits input into lines, accepting a missing final newline and
/// rejecting empty input or blank lines.
fn matrix_lines(text: &str) -> Result<Vec<&str>, ParseError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(ParseError::new(1, 1, "empty input"));
    }
    let lines: Vec<&str> = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    if let Some(i) = lines.iter().position(|l| l.is_empty()) {
        return Err(ParseError::new(i + 1, 1, "blank line"));
    }
    Ok(lines)
}

/// Parses one row, allowing a single space between entries.
fn parse_row<T>(
    line: &str,
    lineno: usize,
    mut entry: impl FnMut(char) -> Option<T>,
    expected: &str,
) -> Result<Vec<T>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::with_capacity(chars.len());
    for (i, &ch) in chars.iter().enumerate() {
        if ch == ' ' {
            let between = i > 0 && i + 1 < chars.len() && chars[i - 1] != ' ';
            if !between {
                return Err(ParseError::new(lineno, i + 1, "misplaced space"));
            }
            continue;
        }
        match entry(ch) {
            Some(v) => out.push(v),
            None => {
                return Err(ParseError::new(
                    lineno,
                    i + 1,
                    format!("illegal character {ch:?}, expected {expected}"),
                ))
            }
        }
    }
    Ok(out)
}

fn parse_grid<T>(
    text: &str,
    mut entry: impl FnMut(char) -> Option<T>,
    expected: &str,
) -> Result<Vec<Vec<T>>, ParseError> {
    let lines = matrix_lines(text)?;
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let row = parse_row(line, i + 1, &mut entry, expected)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(ParseError::new(
                    i + 1,
                    row.len().min(first.len()) + 1,
                    format!("ragged row: {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_tri(text: &str) -> Result<TriMatrix, ParseError> {
    let rows = parse_grid(
        text,
        |c| match c {
            '0' => Some(Entry::Zero),
            '1' => Some(Entry::One),
            'x' => Some(Entry::Unknown),
            _ => None,
        },
        "'0', '1' or 'x'",
    )?;
    TriMatrix::from_rows(&rows).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

pub fn parse_bin(text: &str) -> Result<BinMatrix, ParseError> {
    let rows = parse_grid(
        text,
        |c| match c {
            '0' => Some(0u8),
            '1' => Some(1u8),
            _ => None,
        },
        "'0' or '1'",
    )?;
    BinMatrix::from_rows(&rows).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// Canonical text: one row per line, no spaces, trailing newline.
pub fn emit_tri(m: &TriMatrix) -> String {
    m.to_string()
}

pub fn emit_bin(m: &BinMatrix) -> String {
    m.to_string()
}

fn parse_index_list(
    value: &str,
    lineno: usize,
    column: usize,
) -> Result<Vec<usize>, ParseError> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut col = column;
    for item in value.split(',') {
        match item.parse::<usize>() {
            Ok(v) if v >= 1 => out.push(v - 1),
            _ => {
                return Err(ParseError::new(
                    lineno,
                    col,
                    format!("expected a 1-based index, found {item:?}"),
                ))
            }
        }
        col += item.len() + 1;
    }
    Ok(out)
}

/// Finds `key=value` in a line and returns the value and its column.
fn field<'a>(line: &'a str, key: &str, lineno: usize, at: usize) -> Result<(&'a str, usize), ParseError> {
    let prefix = format!("{key}=");
    line.strip_prefix(&prefix)
        .map(|v| (v, at + prefix.len()))
        .ok_or_else(|| ParseError::new(lineno, at, format!("expected `{key}=`")))
}

pub fn parse_problem(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut m = None;
    let mut raw = Vec::new();
    let mut receiver_lines = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if m.is_none() {
            let (v, col) = field(line, "m", lineno, 1)?;
            m = Some(
                v.parse::<usize>()
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| ParseError::new(lineno, col, "expected a positive message count"))?,
            );
            continue;
        }
        let (wants_part, knows_part) = line
            .split_once(' ')
            .ok_or_else(|| ParseError::new(lineno, 1, "expected `wants=<list> knows=<list>`"))?;
        let (wants, wcol) = field(wants_part, "wants", lineno, 1)?;
        let wants = parse_index_list(wants, lineno, wcol)?;
        let kstart = wants_part.len() + 2;
        let (knows, kcol) = field(knows_part, "knows", lineno, kstart)?;
        let knows: BTreeSet<usize> = parse_index_list(knows, lineno, kcol)?.into_iter().collect();
        let m = m.unwrap_or(0);
        if let Some(&k) = wants.iter().chain(&knows).find(|&&k| k >= m) {
            return Err(ParseError::new(
                lineno,
                1,
                format!("message {} out of range 1..={m}", k + 1),
            ));
        }
        raw.push((wants, knows));
        receiver_lines.push(lineno);
    }
    let m = m.ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    if raw.is_empty() {
        return Err(ParseError::new(1, 1, "no receivers"));
    }
    ProblemInstance::normalize(m, &raw).map_err(|e| {
        use jointcode_core::Error as E;
        let line = match e {
            E::DemandKnown { receiver, .. } | E::NoDemand { receiver } => receiver_lines.get(receiver).copied().unwrap_or(1),
            _ => 1,
        };
        ParseError::new(line, 1, e.to_string())
    })
}

/// Canonical problem text, one receiver per line.
pub fn emit_problem(p: &ProblemInstance) -> String {
    let mut out = format!("m={}\n", p.num_messages());
    for r in p.receivers() {
        let knows: Vec<String> = r.knows.iter().map(|k| (k + 1).to_string()).collect();
        let _ = writeln!(out, "wants={} knows={}", r.wants + 1, knows.join(","));
    }
    out
}
