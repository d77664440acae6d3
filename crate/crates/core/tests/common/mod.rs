//! Independent brute-force oracle over plain strings.
//!
//! Sequences are generated as `String`s of 'R'/'B' and every statistic is
//! recomputed by scanning characters. Nothing here goes through the packed
//! representation or the library's fold machinery; only the public fields
//! of `ModelSpec` are read.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gapseq::{GapThreshold, ModelSpec, TypeMap};

/// All strings over {R, B} of length `n`, lexicographic with R < B.
pub fn all_strings(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| [format!("{p}R"), format!("{p}B")])
            .collect();
    }
    out
}

/// 1-based (first, last) B positions.
pub fn b_positions(s: &str) -> Option<(usize, usize)> {
    let positions: Vec<usize> = s
        .chars()
        .enumerate()
        .filter(|&(_, c)| c == 'B')
        .map(|(i, _)| i + 1)
        .collect();
    Some((*positions.first()?, *positions.last()?))
}

pub fn gap(s: &str) -> Option<usize> {
    b_positions(s).map(|(f, l)| l - f)
}

pub fn oracle_valid(m: &ModelSpec, s: &str) -> bool {
    let n = s.len();
    let Some(g) = gap(s) else { return false };
    let within = match m.gap_threshold {
        GapThreshold::Constant(c) => g <= c,
        GapThreshold::HalfFloor => 2 * g <= n,
        GapThreshold::Unbounded => true,
    };
    let bs = s.chars().filter(|&c| c == 'B').count();
    let counted = m.b_count.is_none_or(|r| r.min() <= bs && bs <= r.max());
    within && counted
}

pub fn oracle_type(m: &ModelSpec, s: &str) -> i64 {
    let n = s.len() as i64;
    let g = gap(s).expect("has a B") as i64;
    match m.type_map {
        TypeMap::ParityPaper if n % 2 == 0 => 2 - g,
        TypeMap::ParityPaper => g + 1,
        TypeMap::DirectAffine(r) => r.slope * g + r.offset,
        TypeMap::EvenOdd { even, .. } if n % 2 == 0 => even.slope * g + even.offset,
        TypeMap::EvenOdd { odd, .. } => odd.slope * g + odd.offset,
    }
}

pub fn oracle_histogram(m: &ModelSpec, n: usize) -> BTreeMap<i64, u64> {
    let mut h = BTreeMap::new();
    for s in all_strings(n).iter().filter(|s| oracle_valid(m, s)) {
        *h.entry(oracle_type(m, s)).or_insert(0) += 1;
    }
    h
}

pub fn oracle_gap_counts(n: usize) -> BTreeMap<usize, u64> {
    let mut h = BTreeMap::new();
    for g in all_strings(n).iter().filter_map(|s| gap(s)) {
        *h.entry(g).or_insert(0) += 1;
    }
    h
}

/// Row match in the strict sense: identical key sets and counts, keys being
/// exactly 1..=row.len().
pub fn oracle_matches(hist: &BTreeMap<i64, u64>, row: &[u64]) -> bool {
    let expected: BTreeMap<i64, u64> = row.iter().enumerate().map(|(i, &c)| (i as i64 + 1, c)).collect();
    *hist == expected
}
