//! Binary sequences over the alphabet {R, B} and their B-position statistics.
//!
//! A sequence is stored packed: `B` is a set bit, `R` a clear bit, and
//! position 1 is the most significant of the `len` used bits. With that layout
//! the integers `0..2^n` visit every length-`n` sequence in lexicographic
//! order with `R < B`, so enumerating the space is a counter sweep and any
//! index range is an independent slice of it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Longest sequence the packed representation can hold.
pub const MAX_SEQUENCE_LENGTH: usize = 64;

/// Largest `n` for which the full space of `2^n` sequences may be swept.
pub const MAX_ENUMERATION_LENGTH: usize = 30;

/// Spaces at least this large are swept with rayon.
const PARALLEL_THRESHOLD: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    R,
    B,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::R => 'R',
            Symbol::B => 'B',
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An ordered, nonempty tuple of symbols.
///
/// Ordering and equality follow the lexicographic order on symbols
/// (`R < B`) for sequences of the same length; shorter sequences sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySequence {
    len: u8,
    bits: u64,
}

impl BinarySequence {
    /// Builds the sequence whose packed form is `bits`, i.e. the `bits`-th
    /// sequence of length `len` in lexicographic order.
    pub fn from_index(len: usize, bits: u64) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySequence);
        }
        if len > MAX_SEQUENCE_LENGTH {
            return Err(Error::SequenceTooLong(len));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::RankOutOfRange { len, rank: bits });
        }
        Ok(Self { len: len as u8, bits })
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        if symbols.len() > MAX_SEQUENCE_LENGTH {
            return Err(Error::SequenceTooLong(symbols.len()));
        }
        let bits = symbols
            .iter()
            .fold(0u64, |acc, s| (acc << 1) | u64::from(*s == Symbol::B));
        Ok(Self { len: symbols.len() as u8, bits })
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    /// Always false; kept so `len` has its usual companion.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lexicographic rank of this sequence among all sequences of its length.
    pub fn index(&self) -> u64 {
        self.bits
    }

    /// Symbol at 1-based `position`.
    pub fn symbol(&self, position: usize) -> Option<Symbol> {
        if position == 0 || position > self.len() {
            return None;
        }
        let bit = (self.bits >> (self.len() - position)) & 1;
        Some(if bit == 1 { Symbol::B } else { Symbol::R })
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (1..=self.len()).map(move |i| self.symbol(i).expect("position in range"))
    }

    pub fn b_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn has_b(&self) -> bool {
        self.bits != 0
    }

    /// First/last B positions and the gap between them, or `None` when the
    /// sequence has no B.
    pub fn gap_statistics(&self) -> Option<GapStatistics> {
        if self.bits == 0 {
            return None;
        }
        let n = self.len();
        let highest = 63 - self.bits.leading_zeros() as usize;
        let lowest = self.bits.trailing_zeros() as usize;
        Some(GapStatistics {
            first_b: n - highest,
            last_b: n - lowest,
            gap: highest - lowest,
        })
    }

    /// Shorthand for `gap_statistics().map(|s| s.gap)`.
    pub fn gap(&self) -> Option<usize> {
        self.gap_statistics().map(|s| s.gap)
    }

    /// Parenthesised, comma-separated form, e.g. `(R,B,B)`.
    pub fn tuple_string(&self) -> String {
        let inner: Vec<String> = self.symbols().map(|s| s.to_string()).collect();
        format!("({})", inner.join(","))
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Parses the compact text encoding (`"RBB"`): one character per symbol.
pub fn parse_sequence(text: &str) -> Result<BinarySequence> {
    if text.is_empty() {
        return Err(Error::EmptySequence);
    }
    let symbols = text
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            'R' => Ok(Symbol::R),
            'B' => Ok(Symbol::B),
            _ => Err(Error::InvalidSymbol(i + 1)),
        })
        .collect::<Result<Vec<_>>>()?;
    BinarySequence::from_symbols(&symbols)
}

/// Position statistics of a sequence that contains at least one B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GapStatistics {
    pub first_b: usize,
    pub last_b: usize,
    /// `last_b - first_b`
    pub gap: usize,
}

/// Free-function form of [`BinarySequence::gap_statistics`].
pub fn gap_statistics(seq: &BinarySequence) -> Option<GapStatistics> {
    seq.gap_statistics()
}

/// Rejects `n` outside `1..=MAX_ENUMERATION_LENGTH`.
pub fn check_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_LENGTH {
        return Err(Error::InvalidLength { n, cap: MAX_ENUMERATION_LENGTH });
    }
    Ok(())
}

/// The space of all `2^n` sequences of length `n`, in lexicographic order.
///
/// Indices are lexicographic ranks, so `range` hands out disjoint slices
/// that can be processed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceSpace {
    n: usize,
}

impl SequenceSpace {
    pub fn new(n: usize) -> Result<Self> {
        check_length(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    pub fn get(&self, index: u64) -> Option<BinarySequence> {
        (index < self.size()).then_some(BinarySequence { len: self.n as u8, bits: index })
    }

    pub fn iter(&self) -> SequenceIter {
        self.range(0..self.size())
    }

    /// Sequences whose ranks fall in `ranks`, clipped to the space.
    pub fn range(&self, ranks: Range<u64>) -> SequenceIter {
        let end = ranks.end.min(self.size());
        SequenceIter { len: self.n as u8, next: ranks.start.min(end), end }
    }

    pub fn par_iter(&self) -> impl ParallelIterator<Item = BinarySequence> {
        let len = self.n as u8;
        (0..self.size()).into_par_iter().map(move |bits| BinarySequence { len, bits })
    }

    /// Folds `f` over every sequence into a per-thread accumulator and
    /// merges with `merge`. Small spaces are folded sequentially.
    pub fn fold<A, F, M>(&self, init: impl Fn() -> A + Sync + Send, f: F, merge: M) -> A
    where
        A: Send,
        F: Fn(A, BinarySequence) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        if self.size() < PARALLEL_THRESHOLD {
            self.iter().fold(init(), f)
        } else {
            self.par_iter().fold(&init, &f).reduce(&init, &merge)
        }
    }
}

impl IntoIterator for SequenceSpace {
    type Item = BinarySequence;
    type IntoIter = SequenceIter;

    fn into_iter(self) -> SequenceIter {
        self.iter()
    }
}

#[derive(Debug, Clone)]
pub struct SequenceIter {
    len: u8,
    next: u64,
    end: u64,
}

impl Iterator for SequenceIter {
    type Item = BinarySequence;

    fn next(&mut self) -> Option<BinarySequence> {
        if self.next >= self.end {
            return None;
        }
        let seq = BinarySequence { len: self.len, bits: self.next };
        self.next += 1;
        Some(seq)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.end - self.next) as usize;
        (rem, Some(rem))
    }
}

impl ExactSizeIterator for SequenceIter {}

/// All `2^n` sequences of length `n`, lexicographic with `R < B`.
pub fn enumerate_all(n: usize) -> Result<SequenceIter> {
    Ok(SequenceSpace::new(n)?.iter())
}

/// Number of length-`n` sequences at each realized gap, by sweeping the
/// whole space. Sequences without a B are not counted.
pub fn count_by_gap(n: usize) -> Result<BTreeMap<usize, u64>> {
    let space = SequenceSpace::new(n)?;
    let counts = space.fold(
        || vec![0u64; n],
        |mut acc, seq| {
            if let Some(g) = seq.gap() {
                acc[g] += 1;
            }
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

/// Closed form for the number of length-`n` sequences with gap exactly `g`:
/// `n` for `g = 0` and `(n - g) * 2^(g - 1)` for `1 <= g < n`.
///
/// Checked against [`count_by_gap`] in the test suite; the sweep is the
/// ground truth.
pub fn gap_count_formula(n: usize, g: usize) -> u64 {
    match g {
        _ if g >= n => 0,
        0 => n as u64,
        _ => (n - g) as u64 * (1u64 << (g - 1)),
    }
}
