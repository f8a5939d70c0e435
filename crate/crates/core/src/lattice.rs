//! Table geometry, steps, lattice words and count matrices.
//!
//! Every public index is 1-based: a cell is addressed as (column, row) with
//! the column running horizontally. Rows `0` and `rows + 1` are the virtual
//! boundary rows just outside the table.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{domain, Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// An `rows x cols` table (`m` rows, `n` columns).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableDims {
    rows: usize,
    cols: usize,
}

impl TableDims {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(domain(format!("table must be at least 1x1, got {rows}x{cols}")));
        }
        Ok(Self { rows, cols })
    }

    /// Square `n x n` table.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (1..=self.cols).contains(&cell.col) && (1..=self.rows).contains(&cell.row)
    }

    pub(crate) fn check_cell(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(domain(format!("cell {cell} lies outside the {self} table")))
        }
    }
}

impl fmt::Display for TableDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A blank of the table, `(col, row)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Self { col, row }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// One step of a path. Each step advances one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// (1, 1)
    Up,
    /// (1, 0)
    Right,
    /// (1, -1)
    Down,
}

impl Step {
    /// All steps in enumeration order `u < r < d`.
    pub const ALL: [Step; 3] = [Step::Up, Step::Right, Step::Down];

    pub const fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Right => 0,
            Step::Down => -1,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Step::Up => 'u',
            Step::Right => 'r',
            Step::Down => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'u' => Some(Step::Up),
            'r' => Some(Step::Right),
            'd' => Some(Step::Down),
            _ => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A path encoded as its start row plus a word over `{u, r, d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeWord {
    pub start_row: i64,
    pub letters: Vec<Step>,
}

impl LatticeWord {
    pub fn new(start_row: i64, letters: Vec<Step>) -> Self {
        Self { start_row, letters }
    }

    /// Parses letters from a string such as `"uudud"`. `""` and `"ε"` are the empty word.
    pub fn parse(start_row: i64, word: &str) -> Result<Self> {
        let letters = if word == "ε" {
            Vec::new()
        } else {
            word.chars()
                .map(|c| Step::from_letter(c).ok_or_else(|| Error::Parse(format!("bad step letter {c:?}"))))
                .collect::<Result<_>>()?
        };
        Ok(Self::new(start_row, letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of occurrences of `letter`.
    pub fn letter_count(&self, letter: Step) -> BigCount {
        BigCount::from(self.letters.iter().filter(|&&s| s == letter).count())
    }

    /// Rows visited, starting with `start_row`; one more entry than there are letters.
    pub fn row_trace(&self) -> Vec<i64> {
        let mut rows = Vec::with_capacity(self.letters.len() + 1);
        let mut row = self.start_row;
        rows.push(row);
        for step in &self.letters {
            row += step.delta();
            rows.push(row);
        }
        rows
    }

    pub fn end_row(&self) -> i64 {
        self.start_row + self.letters.iter().map(|s| s.delta()).sum::<i64>()
    }

    /// True when every visited row lies in `[1, m]`.
    pub fn is_confined(&self, m: usize) -> bool {
        self.row_trace().iter().all(|&r| r >= 1 && r <= m as i64)
    }

    /// The row-word form, e.g. `121`. Rows are joined with `-` once any row exceeds 9.
    pub fn row_word(&self) -> String {
        let trace = self.row_trace();
        if trace.iter().all(|r| (1..=9).contains(r)) {
            trace.iter().map(|r| r.to_string()).collect()
        } else {
            trace.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("-")
        }
    }
}

impl fmt::Display for LatticeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for s in &self.letters {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Which count family a matrix holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `D^i(s,t)`: paths from `(1,i)`.
    Di(usize),
    /// `D(s,t)`: paths from anywhere in the first column.
    D,
    /// `A(s,t)`: `u`/`d` only, from `(1,1)`.
    A,
    /// `H(s,t)`: prefix sums of `D^1` over rows.
    H,
}

impl Family {
    /// Short name: `d1`, `d2`, ..., `d`, `a`, `h`.
    pub fn kind(&self) -> String {
        match self {
            Family::Di(i) => format!("d{i}"),
            Family::D => "d".into(),
            Family::A => "a".into(),
            Family::H => "h".into(),
        }
    }

    /// True when `(s, t)` is unreachable for structural reasons (not parity).
    pub fn is_structural_zero(&self, s: usize, t: usize) -> bool {
        match *self {
            Family::Di(i) => t.abs_diff(i) > s - 1,
            Family::A => t > s,
            Family::D | Family::H => false,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(Family::D),
            "a" => Ok(Family::A),
            "h" => Ok(Family::H),
            _ => s
                .strip_prefix('d')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(Family::Di)
                .ok_or_else(|| Error::Parse(format!("unknown table kind {s:?}"))),
        }
    }
}

/// A `(col, row)`-indexed matrix of counts over a whole table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    dims: TableDims,
    family: Family,
    // column-major, one `rows`-long block per column
    entries: Vec<BigCount>,
}

impl CountMatrix {
    pub(crate) fn from_columns(dims: TableDims, family: Family, columns: Vec<Vec<BigCount>>) -> Self {
        debug_assert_eq!(columns.len(), dims.cols());
        debug_assert!(columns.iter().all(|c| c.len() == dims.rows()));
        Self {
            dims,
            family,
            entries: columns.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from `(s, t, value)` triples; every cell must be given exactly once.
    pub fn from_entries(
        dims: TableDims,
        family: Family,
        entries: impl IntoIterator<Item = (usize, usize, BigCount)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<BigCount>> = vec![None; dims.rows() * dims.cols()];
        for (s, t, v) in entries {
            dims.check_cell(Cell::new(s, t))?;
            let slot = &mut slots[(s - 1) * dims.rows() + (t - 1)];
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate entry ({s},{t})")));
            }
            *slot = Some(v);
        }
        let entries = slots
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| {
                    Error::Parse(format!("missing entry ({},{})", k / dims.rows() + 1, k % dims.rows() + 1))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { dims, family, entries })
    }

    pub fn dims(&self) -> TableDims {
        self.dims
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn get(&self, col: usize, row: usize) -> Option<&BigCount> {
        if self.dims.contains(Cell::new(col, row)) {
            Some(&self.entries[(col - 1) * self.dims.rows() + (row - 1)])
        } else {
            None
        }
    }

    /// Column `s` as a slice indexed by `row - 1`.
    pub fn column(&self, col: usize) -> &[BigCount] {
        assert!((1..=self.dims.cols()).contains(&col), "column {col} out of range");
        let r = self.dims.rows();
        &self.entries[(col - 1) * r..col * r]
    }

    /// `(s, t, value)` in column-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigCount)> + '_ {
        let r = self.dims.rows();
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / r + 1, k % r + 1, v))
    }

    pub fn column_sum(&self, col: usize) -> BigCount {
        self.column(col).iter().fold(BigCount::zero(), |acc, v| acc + v)
    }
}

impl Index<(usize, usize)> for CountMatrix {
    type Output = BigCount;

    fn index(&self, (col, row): (usize, usize)) -> &BigCount {
        self.get(col, row)
            .unwrap_or_else(|| panic!("({col},{row}) outside the {} matrix", self.dims))
    }
}
