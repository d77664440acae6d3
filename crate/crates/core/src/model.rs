//! Candidate interpretations: a validity predicate (gap threshold plus an
//! optional B-count window) and a type map sending each valid sequence to a
//! column index `k`.
//!
//! The canonical model keeps sequences with at least one B and gap at most 1,
//! and types them by `2 - gap` for even `n` and `gap + 1` for odd `n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequences::{BinarySequence, SequenceSpace};

/// Upper bound on the gap of a valid sequence, resolved per length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapThreshold {
    Constant(usize),
    /// `floor(n / 2)`
    HalfFloor,
    Unbounded,
}

impl GapThreshold {
    /// The concrete bound at length `n`, or `None` when unbounded.
    pub fn resolve(self, n: usize) -> Option<usize> {
        match self {
            GapThreshold::Constant(c) => Some(c),
            GapThreshold::HalfFloor => Some(n / 2),
            GapThreshold::Unbounded => None,
        }
    }

    pub fn admits(self, n: usize, gap: usize) -> bool {
        self.resolve(n).is_none_or(|bound| gap <= bound)
    }
}

impl fmt::Display for GapThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapThreshold::Constant(c) => write!(f, "{c}"),
            GapThreshold::HalfFloor => f.write_str("n/2"),
            GapThreshold::Unbounded => f.write_str("inf"),
        }
    }
}

/// `k = slope * gap + offset`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineRule {
    pub slope: i64,
    pub offset: i64,
}

impl AffineRule {
    pub const fn new(slope: i64, offset: i64) -> Self {
        Self { slope, offset }
    }

    pub fn apply(self, gap: usize) -> i64 {
        self.slope * gap as i64 + self.offset
    }
}

impl fmt::Display for AffineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.slope, self.offset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeMap {
    /// Even `n`: `2 - gap`. Odd `n`: `gap + 1`.
    ParityPaper,
    /// The same affine rule for every `n`.
    DirectAffine(AffineRule),
    /// One affine rule for even `n`, another for odd `n`.
    EvenOdd { even: AffineRule, odd: AffineRule },
}

impl TypeMap {
    const PARITY_EVEN: AffineRule = AffineRule::new(-1, 2);
    const PARITY_ODD: AffineRule = AffineRule::new(1, 1);

    /// Type index for a sequence of length `n` with the given gap.
    pub fn type_for(self, n: usize, gap: usize) -> i64 {
        let rule = match self {
            TypeMap::ParityPaper if n.is_multiple_of(2) => Self::PARITY_EVEN,
            TypeMap::ParityPaper => Self::PARITY_ODD,
            TypeMap::DirectAffine(rule) => rule,
            TypeMap::EvenOdd { even, .. } if n.is_multiple_of(2) => even,
            TypeMap::EvenOdd { odd, .. } => odd,
        };
        rule.apply(gap)
    }
}

impl fmt::Display for TypeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeMap::ParityPaper => f.write_str("parity-paper"),
            TypeMap::DirectAffine(rule) => write!(f, "affine{rule}"),
            TypeMap::EvenOdd { even, odd } => write!(f, "even{even}/odd{odd}"),
        }
    }
}

/// Inclusive window on the total number of B symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BCountRange {
    min: usize,
    max: usize,
}

impl BCountRange {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min < 1 {
            return Err(Error::InvalidModel("b-count minimum must be at least 1".into()));
        }
        if min > max {
            return Err(Error::InvalidModel(format!("b-count range {min}..{max} is empty")));
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> usize {
        self.min
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn contains(&self, count: usize) -> bool {
        (self.min..=self.max).contains(&count)
    }
}

impl fmt::Display for BCountRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

/// A candidate combinatorial model.
///
/// Text form (also accepted by [`FromStr`]):
/// `gap<=<c|n/2|inf>; type=<parity-paper|affine(a,b)|even(a,b)/odd(a,b)>; bcount=<min..max|*>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub gap_threshold: GapThreshold,
    pub type_map: TypeMap,
    pub b_count: Option<BCountRange>,
}

/// Gap at most 1, parity-dependent types, no B-count constraint.
pub fn canonical_model() -> ModelSpec {
    ModelSpec::canonical()
}

impl ModelSpec {
    pub fn new(gap_threshold: GapThreshold, type_map: TypeMap, b_count: Option<BCountRange>) -> Self {
        Self { gap_threshold, type_map, b_count }
    }

    pub fn canonical() -> Self {
        Self::new(GapThreshold::Constant(1), TypeMap::ParityPaper, None)
    }

    pub fn is_valid(&self, seq: &BinarySequence) -> bool {
        let Some(gap) = seq.gap() else {
            return false;
        };
        self.gap_threshold.admits(seq.len(), gap)
            && self.b_count.is_none_or(|r| r.contains(seq.b_count()))
    }

    /// Type index of a valid sequence.
    pub fn type_of(&self, seq: &BinarySequence) -> Result<i64> {
        if !self.is_valid(seq) {
            return Err(Error::InvalidSequence(seq.to_string()));
        }
        let gap = seq.gap().expect("valid sequences contain a B");
        Ok(self.type_map.type_for(seq.len(), gap))
    }

    /// The type the map would assign to any sequence with a B, valid or not.
    /// Used to display excluded sequences alongside valid ones.
    pub fn raw_type(&self, seq: &BinarySequence) -> Option<i64> {
        seq.gap().map(|gap| self.type_map.type_for(seq.len(), gap))
    }

    /// Valid sequences of length `n`, lexicographic.
    pub fn valid_set(&self, n: usize) -> Result<Vec<BinarySequence>> {
        let space = SequenceSpace::new(n)?;
        Ok(space.iter().filter(|s| self.is_valid(s)).collect())
    }

    /// `|valid_set(n)|` without materializing the set.
    pub fn valid_count(&self, n: usize) -> Result<u64> {
        let space = SequenceSpace::new(n)?;
        Ok(space.fold(
            || 0u64,
            |acc, s| acc + u64::from(self.is_valid(&s)),
            |a, b| a + b,
        ))
    }

    pub fn type_histogram(&self, n: usize) -> Result<TypeHistogram> {
        let space = SequenceSpace::new(n)?;
        // Types depend only on the gap, so tally gaps and map afterwards.
        let by_gap = space.fold(
            || vec![0u64; n],
            |mut acc, s| {
                if self.is_valid(&s) {
                    acc[s.gap().expect("valid")] += 1;
                }
                acc
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        let mut counts = BTreeMap::new();
        for (gap, count) in by_gap.into_iter().enumerate().filter(|&(_, c)| c > 0) {
            *counts.entry(self.type_map.type_for(n, gap)).or_insert(0) += count;
        }
        Ok(TypeHistogram { n, counts })
    }

    /// Distinct type values realized by valid sequences of length `n`.
    pub fn realized_types(&self, n: usize) -> Result<BTreeSet<i64>> {
        Ok(self.type_histogram(n)?.counts.into_keys().collect())
    }

    pub fn max_type_count(&self, n: usize) -> Result<usize> {
        Ok(self.type_histogram(n)?.len())
    }
}

impl Default for ModelSpec {
    fn default() -> Self {
        Self::canonical()
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gap<={}; type={}; bcount=", self.gap_threshold, self.type_map)?;
        match self.b_count {
            Some(r) => write!(f, "{r}"),
            None => f.write_str("*"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::ModelSyntax { text: text.to_string(), reason: reason.to_string() };
        let parts: Vec<&str> = text.split(';').map(str::trim).collect();
        let [gap, ty, bcount] = parts.as_slice() else {
            return Err(syntax("expected three ';'-separated fields"));
        };

        let gap = gap.strip_prefix("gap<=").ok_or_else(|| syntax("first field must start with 'gap<='"))?;
        let gap_threshold = match gap.trim() {
            "n/2" => GapThreshold::HalfFloor,
            "inf" => GapThreshold::Unbounded,
            c => GapThreshold::Constant(c.parse().map_err(|_| syntax("bad gap threshold"))?),
        };

        let ty = ty.strip_prefix("type=").ok_or_else(|| syntax("second field must start with 'type='"))?;
        let type_map = parse_type_map(ty.trim()).ok_or_else(|| syntax("bad type map"))?;

        let bcount = bcount
            .strip_prefix("bcount=")
            .ok_or_else(|| syntax("third field must start with 'bcount='"))?
            .trim();
        let b_count = if bcount == "*" {
            None
        } else {
            let (lo, hi) = bcount.split_once("..").ok_or_else(|| syntax("bcount must be '*' or min..max"))?;
            let lo = lo.trim().parse().map_err(|_| syntax("bad bcount minimum"))?;
            let hi = hi.trim().parse().map_err(|_| syntax("bad bcount maximum"))?;
            Some(BCountRange::new(lo, hi)?)
        };

        Ok(ModelSpec { gap_threshold, type_map, b_count })
    }
}

fn parse_type_map(text: &str) -> Option<TypeMap> {
    if text == "parity-paper" {
        return Some(TypeMap::ParityPaper);
    }
    if let Some(rest) = text.strip_prefix("affine") {
        return parse_affine(rest).map(TypeMap::DirectAffine);
    }
    let (even, odd) = text.split_once('/')?;
    let even = parse_affine(even.trim().strip_prefix("even")?)?;
    let odd = parse_affine(odd.trim().strip_prefix("odd")?)?;
    Some(TypeMap::EvenOdd { even, odd })
}

fn parse_affine(text: &str) -> Option<AffineRule> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some(AffineRule::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Per-type counts of the valid sequences of one length. Zero counts are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeHistogram {
    pub n: usize,
    pub counts: BTreeMap<i64, u64>,
}

impl TypeHistogram {
    pub fn get(&self, k: i64) -> Option<u64> {
        self.counts.get(&k).copied()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct realized types.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// True when some realized type is below 1 and so cannot name a column.
    pub fn is_ill_typed(&self) -> bool {
        self.counts.keys().next().is_some_and(|&k| k < 1)
    }
}

/// `k1:c1,k2:c2,...`
impl fmt::Display for TypeHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}:{c}")?;
        }
        Ok(())
    }
}
