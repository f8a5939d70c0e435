//! Brute-force enumeration of lattice words.
//!
//! This module shares nothing with the DP or the closed forms beyond the
//! word types; it walks every word depth-first and counts the ones that pass.

use crate::error::{Error, Result};
use crate::lattice::{BigCount, Cell, LatticeWord, Step, TableDims};

/// Default longest word the oracle will enumerate.
pub const DEFAULT_CAP: usize = 14;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "LATPATH_ORACLE_CAP";

/// Conditions a word must meet to be yielded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordFilter {
    /// Confine every visited row to `[1, rows]`.
    pub dims: Option<TableDims>,
    /// Forbid rows below 1 (implied by `dims`).
    pub floor: bool,
    /// Start row. With `None`, every row of `dims` is tried in turn, else row 1.
    pub start_row: Option<i64>,
    pub end_row: Option<i64>,
    pub net_displacement: Option<i64>,
    pub alphabet: Vec<Step>,
}

impl Default for WordFilter {
    fn default() -> Self {
        Self {
            dims: None,
            floor: false,
            start_row: None,
            end_row: None,
            net_displacement: None,
            alphabet: Step::ALL.to_vec(),
        }
    }
}

impl WordFilter {
    pub fn confined(dims: TableDims) -> Self {
        Self {
            dims: Some(dims),
            ..Self::default()
        }
    }

    pub fn start(mut self, row: i64) -> Self {
        self.start_row = Some(row);
        self
    }

    pub fn end(mut self, row: i64) -> Self {
        self.end_row = Some(row);
        self
    }

    pub fn net(mut self, x: i64) -> Self {
        self.net_displacement = Some(x);
        self
    }

    pub fn with_floor(mut self) -> Self {
        self.floor = true;
        self
    }

    pub fn alphabet(mut self, steps: &[Step]) -> Self {
        let mut steps = steps.to_vec();
        steps.sort();
        steps.dedup();
        self.alphabet = steps;
        self
    }

    fn starts(&self) -> Vec<i64> {
        match (self.start_row, self.dims) {
            (Some(r), _) => vec![r],
            (None, Some(d)) => (1..=d.rows() as i64).collect(),
            (None, None) => vec![1],
        }
    }

    fn row_allowed(&self, row: i64) -> bool {
        if (self.floor || self.dims.is_some()) && row < 1 {
            return false;
        }
        match self.dims {
            Some(d) => row <= d.rows() as i64,
            None => true,
        }
    }

    fn reachable(&self, start: i64, row: i64, remaining: usize) -> bool {
        let remaining = remaining as i64;
        self.end_row.is_none_or(|e| (e - row).abs() <= remaining)
            && self
                .net_displacement
                .is_none_or(|x| (start + x - row).abs() <= remaining)
    }

    fn accepts(&self, start: i64, end: i64) -> bool {
        self.end_row.is_none_or(|e| e == end) && self.net_displacement.is_none_or(|x| end - start == x)
    }
}

/// Depth-first word enumerator with a configurable length cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Self { cap }
    }

    /// Reads the cap from `LATPATH_ORACLE_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, Self::new)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, what: &'static str, requested: usize) -> Result<()> {
        if requested > self.cap {
            Err(Error::Resource {
                what,
                requested,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Every word of `length` letters passing `filter`, per start row in
    /// increasing order, then lexicographic with `u < r < d`.
    pub fn enumerate_words(&self, length: usize, filter: WordFilter) -> Result<WordStream> {
        self.check("word length", length)?;
        Ok(WordStream::new(length, filter))
    }

    pub fn count_words(&self, length: usize, filter: WordFilter) -> Result<BigCount> {
        Ok(BigCount::from(self.enumerate_words(length, filter)?.count()))
    }

    pub fn brute_pair_count(&self, dims: TableDims, from: Cell, to: Cell) -> Result<BigCount> {
        dims.check_cell(from)?;
        dims.check_cell(to)?;
        if from.col > to.col {
            return Err(crate::error::domain(format!("path cannot run from {from} back to {to}")));
        }
        let filter = WordFilter::confined(dims).start(from.row as i64).end(to.row as i64);
        self.count_words(to.col - from.col, filter)
    }

    /// Row-words `a_1..a_n` over `[1, m]` with adjacent rows differing by at most one.
    pub fn brute_imn(&self, dims: TableDims) -> Result<BigCount> {
        self.check("table columns", dims.cols())?;
        self.check("table rows", dims.rows())?;
        self.count_words(dims.cols() - 1, WordFilter::confined(dims))
    }

    pub fn brute_free(&self, x: i64, y: usize) -> Result<BigCount> {
        self.count_words(y, WordFilter::default().start(0).net(x))
    }
}

/// Lazily yields the words selected by a [`WordFilter`].
#[derive(Debug, Clone)]
pub struct WordStream {
    length: usize,
    filter: WordFilter,
    starts: std::vec::IntoIter<i64>,
    rows: Vec<i64>,
    letters: Vec<Step>,
    // next alphabet index to try at each depth
    next_choice: Vec<usize>,
}

impl WordStream {
    fn new(length: usize, filter: WordFilter) -> Self {
        let starts = filter.starts().into_iter();
        Self {
            length,
            filter,
            starts,
            rows: Vec::with_capacity(length + 1),
            letters: Vec::with_capacity(length),
            next_choice: Vec::with_capacity(length + 1),
        }
    }

    fn pop(&mut self) {
        self.rows.pop();
        self.letters.pop();
        self.next_choice.pop();
    }
}

impl Iterator for WordStream {
    type Item = LatticeWord;

    fn next(&mut self) -> Option<LatticeWord> {
        loop {
            if self.rows.is_empty() {
                let start = self.starts.next()?;
                if self.filter.row_allowed(start) && self.filter.reachable(start, start, self.length) {
                    self.rows.push(start);
                    self.next_choice.push(0);
                }
                continue;
            }
            let depth = self.letters.len();
            let start = self.rows[0];
            if depth == self.length {
                let hit = self
                    .filter
                    .accepts(start, self.rows[depth])
                    .then(|| LatticeWord::new(start, self.letters.clone()));
                self.pop();
                if hit.is_some() {
                    return hit;
                }
                continue;
            }
            let choice = self.next_choice[depth];
            let Some(&step) = self.filter.alphabet.get(choice) else {
                self.pop();
                continue;
            };
            self.next_choice[depth] += 1;
            let row = self.rows[depth] + step.delta();
            if self.filter.row_allowed(row) && self.filter.reachable(start, row, self.length - depth - 1) {
                self.rows.push(row);
                self.letters.push(step);
                self.next_choice.push(0);
            }
        }
    }
}
