//! Exhaustive search over a finite product family of models.
//!
//! Because the family is closed, a search result is a certificate: when no
//! member matches a row, the report says so for every member and gives a
//! witness for each failure.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{AffineRule, BCountRange, GapThreshold, ModelSpec, TypeMap};
use crate::sequences::check_length;
use crate::table::{Table, TableFormat};
use crate::triangle::CoefficientTriangle;
use crate::verify::{verify_row, EntryMismatch, RowVerdict};

/// Cartesian product of thresholds, type maps and B-count options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchFamily {
    pub thresholds: Vec<GapThreshold>,
    pub type_maps: Vec<TypeMap>,
    pub b_count_options: Vec<Option<BCountRange>>,
}

impl SearchFamily {
    pub fn size(&self) -> usize {
        self.thresholds.len() * self.type_maps.len() * self.b_count_options.len()
    }

    /// Members in product order: thresholds outermost, B-count innermost.
    pub fn candidates(&self) -> Vec<ModelSpec> {
        let mut out = Vec::with_capacity(self.size());
        for &threshold in &self.thresholds {
            for &type_map in &self.type_maps {
                for &b_count in &self.b_count_options {
                    out.push(ModelSpec::new(threshold, type_map, b_count));
                }
            }
        }
        out
    }

    pub fn contains(&self, model: &ModelSpec) -> bool {
        self.thresholds.contains(&model.gap_threshold)
            && self.type_maps.contains(&model.type_map)
            && self.b_count_options.contains(&model.b_count)
    }
}

/// Thresholds 0..=3, n/2 and unbounded; the parity map, `gap + 1`, `2 - gap`
/// and every even/odd pair of affine rules with slope in {-1, 0, 1, 2} and
/// offset in {0, 1, 2, 3}; B-count unconstrained, 1..1, 1..2 or 2..2.
pub fn default_family() -> SearchFamily {
    let thresholds = vec![
        GapThreshold::Constant(0),
        GapThreshold::Constant(1),
        GapThreshold::Constant(2),
        GapThreshold::Constant(3),
        GapThreshold::HalfFloor,
        GapThreshold::Unbounded,
    ];

    let affine: Vec<AffineRule> = [-1, 0, 1, 2]
        .into_iter()
        .flat_map(|a| (0..=3).map(move |b| AffineRule::new(a, b)))
        .collect();
    let mut type_maps = vec![
        TypeMap::ParityPaper,
        TypeMap::DirectAffine(AffineRule::new(1, 1)),
        TypeMap::DirectAffine(AffineRule::new(-1, 2)),
    ];
    for &even in &affine {
        for &odd in &affine {
            type_maps.push(TypeMap::EvenOdd { even, odd });
        }
    }

    let range = |lo, hi| Some(BCountRange::new(lo, hi).expect("static range"));
    let b_count_options = vec![None, range(1, 1), range(1, 2), range(2, 2)];

    SearchFamily { thresholds, type_maps, b_count_options }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub model: ModelSpec,
    pub verdicts: Vec<RowVerdict>,
    pub matched_rows: BTreeSet<usize>,
    pub score: usize,
    /// Some requested row produced a type index below 1.
    pub ill_typed: bool,
}

impl SearchResult {
    fn from_verdicts(model: ModelSpec, verdicts: Vec<RowVerdict>) -> Self {
        let matched_rows: BTreeSet<usize> = verdicts.iter().filter(|v| v.matches).map(|v| v.n).collect();
        let ill_typed = verdicts.iter().any(|v| v.predicted.is_ill_typed());
        SearchResult { model, score: matched_rows.len(), matched_rows, verdicts, ill_typed }
    }

    /// Witness for the lowest requested row that fails, if any.
    pub fn first_failure(&self) -> Option<Witness> {
        self.verdicts.iter().find_map(Witness::from_verdict)
    }

    /// `rank=<r> score=<s> matched=<n,...|-> ill_typed=<bool> model=<spec>`
    pub fn record(&self, rank: usize) -> String {
        format!(
            "rank={rank} score={} matched={} ill_typed={} model={}",
            self.score,
            matched_list(&self.matched_rows),
            self.ill_typed,
            self.model
        )
    }
}

/// Evaluates every member of `family` on `rows` and ranks them by score
/// (descending), then by model text (ascending).
pub fn run_search(
    family: &SearchFamily,
    triangle: &CoefficientTriangle,
    rows: RangeInclusive<usize>,
) -> Result<Vec<SearchResult>> {
    for n in rows.clone() {
        check_length(n)?;
        triangle.row(n)?;
    }
    let mut results = family
        .candidates()
        .into_par_iter()
        .map(|model| {
            let verdicts = rows
                .clone()
                .map(|n| verify_row(&model, triangle, n))
                .collect::<Result<Vec<_>>>()?;
            Ok(SearchResult::from_verdicts(model, verdicts))
        })
        .collect::<Result<Vec<_>>>()?;

    results.sort_by_cached_key(|r| (Reverse(r.score), r.model.to_string()));
    Ok(results)
}

/// Why a model fails a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The model realizes fewer distinct types than the row has entries.
    TypeDeficit {
        n: usize,
        realized: Vec<i64>,
        target: Vec<u64>,
    },
    /// Enough types, wrong counts.
    EntryMismatch { n: usize, mismatches: Vec<EntryMismatch> },
}

impl Witness {
    /// `None` when the verdict is a match.
    pub fn from_verdict(verdict: &RowVerdict) -> Option<Self> {
        if verdict.matches {
            return None;
        }
        let realized: Vec<i64> = verdict.predicted.counts.keys().copied().collect();
        Some(if realized.len() < verdict.target.len() {
            Witness::TypeDeficit { n: verdict.n, realized, target: verdict.target.clone() }
        } else {
            Witness::EntryMismatch { n: verdict.n, mismatches: verdict.mismatch_detail.clone() }
        })
    }

    pub fn n(&self) -> usize {
        match self {
            Witness::TypeDeficit { n, .. } | Witness::EntryMismatch { n, .. } => *n,
        }
    }

    /// Multi-line explanation. A deficit is argued in three steps: types the
    /// model provides, entries the row requires, and the resulting gap.
    pub fn explain(&self) -> String {
        match self {
            Witness::TypeDeficit { n, realized, target } => {
                let realized: Vec<String> = realized.iter().map(i64::to_string).collect();
                let target: Vec<String> = target.iter().map(u64::to_string).collect();
                format!(
                    "step 1: valid sequences of length {n} realize {} distinct type(s): {{{}}}\n\
                     step 2: row {n} = [{}] has {} nonzero entries, so {} distinct types are required\n\
                     step 3: provided {} < required {}; no assignment of these types reproduces row {n}\n",
                    realized.len(),
                    realized.join(", "),
                    target.join(", "),
                    target.len(),
                    target.len(),
                    realized.len(),
                    target.len(),
                )
            }
            Witness::EntryMismatch { n, mismatches } => {
                let mut out = format!("row {n}: per-entry count mismatch (predicted vs target)\n");
                for m in mismatches {
                    out.push_str(&format!("  {m}\n"));
                }
                out
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::TypeDeficit { n, realized, target } => write!(
                f,
                "n={n}: type-count deficit, provided {} < required {}",
                realized.len(),
                target.len()
            ),
            Witness::EntryMismatch { n, mismatches } => {
                let parts: Vec<String> = mismatches.iter().map(ToString::to_string).collect();
                write!(f, "n={n}: entry mismatch at {}", parts.join("; "))
            }
        }
    }
}

/// Explains why `model` fails row `n`; `NotAFailure` if it matches.
pub fn witness(model: &ModelSpec, triangle: &CoefficientTriangle, n: usize) -> Result<Witness> {
    let verdict = verify_row(model, triangle, n)?;
    Witness::from_verdict(&verdict).ok_or(Error::NotAFailure(n))
}

/// Ranked table of the first `top` results.
pub fn search_table(results: &[SearchResult], top: usize, format: TableFormat) -> String {
    let mut table = Table::new(["rank", "model", "score", "matched rows", "first failure"]);
    for (i, r) in results.iter().take(top).enumerate() {
        let mut failure = r.first_failure().map_or_else(|| "-".to_string(), |w| w.to_string());
        if r.ill_typed {
            failure.push_str(" [ill-typed]");
        }
        table.push([
            (i + 1).to_string(),
            r.model.to_string(),
            r.score.to_string(),
            matched_list(&r.matched_rows),
            failure,
        ]);
    }
    table.render(format)
}

/// One [`SearchResult::record`] line per result, in rank order.
pub fn search_records(results: &[SearchResult]) -> String {
    results
        .iter()
        .enumerate()
        .map(|(i, r)| r.record(i + 1) + "\n")
        .collect()
}

fn matched_list(rows: &BTreeSet<usize>) -> String {
    if rows.is_empty() {
        return "-".to_string();
    }
    rows.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
