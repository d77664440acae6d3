//! Row-by-row comparison of a model's type histogram against a triangle,
//! and type-count obstruction reports.
//!
//! A predicted type with no column in the target row is a mismatch even if
//! every shared column agrees: an absent cell means the type does not occur.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::Result;
use crate::model::{ModelSpec, TypeHistogram};
use crate::sequences::check_length;
use crate::table::{Table, TableFormat};
use crate::triangle::CoefficientTriangle;

/// One disagreeing column. `None` means the side has no entry at `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryMismatch {
    pub k: i64,
    pub predicted: Option<u64>,
    pub target: Option<u64>,
}

impl fmt::Display for EntryMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<u64>| v.map_or_else(|| "absent".to_string(), |c| c.to_string());
        write!(f, "k={}: {} vs {}", self.k, show(self.predicted), show(self.target))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVerdict {
    pub n: usize,
    pub predicted: TypeHistogram,
    pub target: Vec<u64>,
    pub matches: bool,
    /// Every disagreeing column in increasing `k`; empty iff `matches`.
    pub mismatch_detail: Vec<EntryMismatch>,
}

impl RowVerdict {
    pub fn compare(n: usize, predicted: TypeHistogram, target: &[u64]) -> Self {
        let mismatch_detail = compare_row(&predicted, target);
        RowVerdict {
            n,
            predicted,
            target: target.to_vec(),
            matches: mismatch_detail.is_empty(),
            mismatch_detail,
        }
    }

    /// `row=<n> match=<bool> predicted=<k:c,...> target=<c,...>`
    pub fn record(&self) -> String {
        format!(
            "row={} match={} predicted={} target={}",
            self.n,
            self.matches,
            self.predicted,
            join(&self.target, ",")
        )
    }
}

/// Columns where the histogram and the row disagree, in increasing `k`.
pub fn compare_row(predicted: &TypeHistogram, target: &[u64]) -> Vec<EntryMismatch> {
    let keys: BTreeSet<i64> = predicted
        .counts
        .keys()
        .copied()
        .chain((1..=target.len()).map(|k| k as i64))
        .collect();
    keys.into_iter()
        .filter_map(|k| {
            let p = predicted.get(k);
            let t = usize::try_from(k).ok().and_then(|k| k.checked_sub(1)).and_then(|i| target.get(i).copied());
            (p != t).then_some(EntryMismatch { k, predicted: p, target: t })
        })
        .collect()
}

pub fn verify_row(model: &ModelSpec, triangle: &CoefficientTriangle, n: usize) -> Result<RowVerdict> {
    let target = triangle.row(n)?;
    let predicted = model.type_histogram(n)?;
    Ok(RowVerdict::compare(n, predicted, target))
}

/// Verdicts for each row in `rows`, in row order. Rows are evaluated in
/// parallel.
pub fn verify_rows(
    model: &ModelSpec,
    triangle: &CoefficientTriangle,
    rows: RangeInclusive<usize>,
) -> Result<Vec<RowVerdict>> {
    rows.into_par_iter().map(|n| verify_row(model, triangle, n)).collect()
}

/// Verdicts for rows `1..=n_max`.
pub fn boundary_check(model: &ModelSpec, triangle: &CoefficientTriangle, n_max: usize) -> Result<Vec<RowVerdict>> {
    check_length(n_max)?;
    verify_rows(model, triangle, 1..=n_max)
}

/// Largest number of distinct realized types over `n = 1..=n_max`.
pub fn check_type_count_bound(model: &ModelSpec, n_max: usize) -> Result<usize> {
    check_length(n_max)?;
    (1..=n_max)
        .into_par_iter()
        .map(|n| model.max_type_count(n))
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

/// Types the model realizes at `n` against the nonzero entries row `n` needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObstructionReport {
    pub n: usize,
    pub provided_types: usize,
    pub required_types: usize,
    /// `provided_types < required_types`
    pub obstructed: bool,
}

impl ObstructionReport {
    pub fn new(n: usize, provided_types: usize, required_types: usize) -> Self {
        Self { n, provided_types, required_types, obstructed: provided_types < required_types }
    }

    /// `row=<n> provided=<p> required=<r> obstructed=<bool>`
    pub fn record(&self) -> String {
        format!(
            "row={} provided={} required={} obstructed={}",
            self.n, self.provided_types, self.required_types, self.obstructed
        )
    }
}

pub fn obstruction_report(model: &ModelSpec, triangle: &CoefficientTriangle, n: usize) -> Result<ObstructionReport> {
    let required = triangle.required_type_count(n)?;
    let provided = model.max_type_count(n)?;
    Ok(ObstructionReport::new(n, provided, required))
}

pub fn obstruction_reports(
    model: &ModelSpec,
    triangle: &CoefficientTriangle,
    rows: RangeInclusive<usize>,
) -> Result<Vec<ObstructionReport>> {
    rows.into_par_iter().map(|n| obstruction_report(model, triangle, n)).collect()
}

pub fn verdict_table(verdicts: &[RowVerdict], format: TableFormat) -> String {
    let mut table = Table::new(["n", "predicted", "target", "match", "mismatches"]);
    for v in verdicts {
        let detail: Vec<String> = v.mismatch_detail.iter().map(ToString::to_string).collect();
        table.push([
            v.n.to_string(),
            format!("[{}]", v.predicted),
            format!("[{}]", join(&v.target, ", ")),
            yes_no(v.matches).to_string(),
            if detail.is_empty() { "-".to_string() } else { detail.join("; ") },
        ]);
    }
    table.render(format)
}

pub fn obstruction_table(reports: &[ObstructionReport], format: TableFormat) -> String {
    let mut table = Table::new(["n", "provided types", "required types", "obstructed"]);
    for r in reports {
        table.push([
            r.n.to_string(),
            r.provided_types.to_string(),
            r.required_types.to_string(),
            yes_no(r.obstructed).to_string(),
        ]);
    }
    table.render(format)
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
