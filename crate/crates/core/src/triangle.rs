//! Target coefficient triangles.
//!
//! Rows are stored ragged, without zero padding: a cell beyond the end of a
//! row is a missing entry, not a zero.
//!
//! Two text formats are supported:
//!
//! * native: one row per line, entries separated by single spaces, line `i`
//!   holding row `n = i`. Lines starting with `#` are comments; a leading
//!   `# order=<label>` comment carries the order label.
//! * b-file: `<index> <value>` per line with contiguous 1-based indices,
//!   the triangle read by rows. A row-length rule re-chunks the terms.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::error::{Error, Result};

const ORDER_PREFIX: &str = "# order=";

/// Rows 1..=9 of the order-1/2 triangle (OEIS A223168).
const HALF_ROWS: [&[u64]; 9] = [
    &[1],
    &[1, 2],
    &[3, 2],
    &[3, 12, 4],
    &[15, 20, 4],
    &[15, 90, 60, 8],
    &[105, 210, 84, 8],
    &[105, 840, 840, 224, 16],
    &[945, 2520, 1512, 288, 16],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTriangle {
    order_label: String,
    rows: Vec<Vec<u64>>,
}

/// The embedded order-1/2 triangle, rows `n = 1..=9`.
pub fn embedded_half_triangle() -> CoefficientTriangle {
    CoefficientTriangle {
        order_label: "1/2".to_string(),
        rows: HALF_ROWS.iter().map(|r| r.to_vec()).collect(),
    }
}

impl CoefficientTriangle {
    /// Checks that every entry is positive, no row is empty, and row lengths
    /// never decrease.
    pub fn new(order_label: impl Into<String>, rows: Vec<Vec<u64>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            let n = i + 1;
            if row.is_empty() {
                return Err(Error::InvalidTriangle(format!("row {n} is empty")));
            }
            if let Some(k) = row.iter().position(|&c| c == 0) {
                return Err(Error::InvalidTriangle(format!("zero entry at n={n}, k={}", k + 1)));
            }
            if i > 0 && row.len() < rows[i - 1].len() {
                return Err(Error::InvalidTriangle(format!("row {n} is shorter than row {}", n - 1)));
            }
        }
        Ok(Self { order_label: order_label.into(), rows })
    }

    pub fn order_label(&self) -> &str {
        &self.order_label
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Result<&[u64]> {
        n.checked_sub(1)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
            .ok_or(Error::MissingRow(n))
    }

    /// `c_{n,k}`; `k` is signed so that type indices from any model can be
    /// looked up directly.
    pub fn entry(&self, n: usize, k: i64) -> Result<u64> {
        let row = self.row(n)?;
        usize::try_from(k)
            .ok()
            .and_then(|k| k.checked_sub(1))
            .and_then(|i| row.get(i).copied())
            .ok_or(Error::MissingEntry { n, k })
    }

    /// Number of nonzero entries in row `n`, i.e. the number of distinct
    /// types a model must realize to reproduce it.
    pub fn required_type_count(&self, n: usize) -> Result<usize> {
        Ok(self.row(n)?.len())
    }

    pub fn row_sum(&self, n: usize) -> Result<u64> {
        Ok(self.row(n)?.iter().sum())
    }

    /// Native text form.
    pub fn to_native_string(&self) -> String {
        let mut out = format!("{ORDER_PREFIX}{}\n", self.order_label);
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads the native text form. Blank lines are skipped like comments.
    pub fn parse_native(reader: impl BufRead) -> Result<Self> {
        let mut label = String::new();
        let mut rows = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| Error::ParseError { line: line_no, reason: e.to_string() })?;
            let trimmed = line.trim();
            if let Some(l) = trimmed.strip_prefix(ORDER_PREFIX) {
                label = l.trim().to_string();
                continue;
            }
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row = trimmed
                .split_whitespace()
                .map(|tok| parse_term(tok, line_no))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::new(label, rows)
    }

    /// The rows flattened into b-file lines.
    pub fn to_bfile_string(&self) -> String {
        let mut out = format!("{ORDER_PREFIX}{}\n", self.order_label);
        for (i, c) in self.rows.iter().flatten().enumerate() {
            out.push_str(&format!("{} {c}\n", i + 1));
        }
        out
    }
}

impl fmt::Display for CoefficientTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_native_string())
    }
}

fn parse_term(tok: &str, line: usize) -> Result<u64> {
    tok.parse::<u64>().map_err(|e| Error::ParseError {
        line,
        reason: format!("{tok:?} is not a nonnegative integer ({e})"),
    })
}

/// How many entries row `n` holds when re-chunking a linear term list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowRule {
    /// `floor(n/2) + 1`, the shape of the order-1/2 triangle.
    HalfFloorPlusOne,
    /// Lengths listed row by row; the rule has nothing to say past the list.
    Explicit(Vec<usize>),
}

impl RowRule {
    pub fn length(&self, n: usize) -> Option<usize> {
        match self {
            RowRule::HalfFloorPlusOne => Some(n / 2 + 1),
            RowRule::Explicit(lengths) => n.checked_sub(1).and_then(|i| lengths.get(i).copied()),
        }
    }
}

impl fmt::Display for RowRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowRule::HalfFloorPlusOne => f.write_str("floor(n/2)+1"),
            RowRule::Explicit(lengths) => {
                let parts: Vec<String> = lengths.iter().map(usize::to_string).collect();
                write!(f, "explicit:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for RowRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "floor(n/2)+1" {
            return Ok(RowRule::HalfFloorPlusOne);
        }
        let list = s.strip_prefix("explicit:").ok_or_else(|| Error::RowRuleSyntax(s.to_string()))?;
        let lengths = list
            .split(',')
            .map(|p| p.trim().parse::<usize>().ok().filter(|&l| l > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::RowRuleSyntax(s.to_string()))?;
        Ok(RowRule::Explicit(lengths))
    }
}

/// Reads a b-file and re-chunks its terms into rows with `rule`.
///
/// `#` comment lines and blank lines are skipped; surrounding whitespace is
/// tolerated. Indices must run 1, 2, 3, ... without gaps.
pub fn ingest_bfile(reader: impl BufRead, rule: &RowRule, order_label: &str) -> Result<CoefficientTriangle> {
    let mut terms = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::ParseError { line: line_no, reason: e.to_string() })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::ParseError { line: line_no, reason: "expected '<index> <value>'".into() });
        };
        let index = parse_term(index, line_no)?;
        let value = parse_term(value, line_no)?;
        let expected = terms.len() as u64 + 1;
        if index != expected {
            return Err(Error::IndexGap { expected, found: index });
        }
        terms.push(value);
    }

    let mut rows = Vec::new();
    let mut rest = terms.as_slice();
    while !rest.is_empty() {
        let n = rows.len() + 1;
        let len = rule.length(n).ok_or(Error::RowRuleExhausted(n))?;
        if len > rest.len() {
            return Err(Error::TruncatedRow(n));
        }
        let (row, tail) = rest.split_at(len);
        rows.push(row.to_vec());
        rest = tail;
    }
    CoefficientTriangle::new(order_label, rows)
}
