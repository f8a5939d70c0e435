//! Column-by-column dynamic programming: the ground truth for every count family.
//!
//! A path in column `s` at row `t` came from row `t-1`, `t` or `t+1` of column
//! `s-1`, so each family is a row vector pushed through the same three-point
//! stencil, clipped at the table's floor and ceiling.

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::lattice::{BigCount, Cell, CountMatrix, Family, TableDims};

/// Which walls clip the stencil. With both off the strip is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryMode {
    pub floor_at_1: bool,
    pub ceiling_at_m: bool,
}

impl BoundaryMode {
    pub const CONFINED: Self = Self { floor_at_1: true, ceiling_at_m: true };
    pub const UNBOUNDED: Self = Self { floor_at_1: false, ceiling_at_m: false };
}

const FULL_STEPS: [i64; 3] = [1, 0, -1];
const UD_STEPS: [i64; 2] = [1, -1];

/// A contiguous window of rows `lo..=hi`; counts outside it are dropped.
#[derive(Debug, Clone, Copy)]
struct Strip {
    lo: i64,
    hi: i64,
}

impl Strip {
    /// Rows `[1, m]` clipped per `mode`, with `slack` extra rows on each open side.
    fn for_table(m: usize, mode: BoundaryMode, slack: usize) -> Self {
        let slack = slack as i64;
        Strip {
            lo: if mode.floor_at_1 { 1 } else { 1 - slack },
            hi: if mode.ceiling_at_m { m as i64 } else { m as i64 + slack },
        }
    }

    fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn index(&self, row: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&row).then(|| (row - self.lo) as usize)
    }

    fn unit(&self, row: i64) -> Vec<BigCount> {
        let mut v = vec![BigCount::zero(); self.width()];
        if let Some(k) = self.index(row) {
            v[k] = BigCount::one();
        }
        v
    }

    fn advance(&self, v: &[BigCount], steps: &[i64]) -> Vec<BigCount> {
        let w = v.len() as i64;
        (0..w)
            .map(|k| {
                steps
                    .iter()
                    .map(|d| k - d)
                    .filter(|src| (0..w).contains(src))
                    .fold(BigCount::zero(), |acc, src| acc + &v[src as usize])
            })
            .collect()
    }
}

fn march_matrix(dims: TableDims, family: Family, first: Vec<BigCount>, steps: &[i64]) -> CountMatrix {
    let strip = Strip::for_table(dims.rows(), BoundaryMode::CONFINED, 0);
    let mut columns = Vec::with_capacity(dims.cols());
    columns.push(first);
    for _ in 1..dims.cols() {
        let next = strip.advance(columns.last().unwrap(), steps);
        columns.push(next);
    }
    CountMatrix::from_columns(dims, family, columns)
}

/// `D^i(s,t)`: confined paths from `(1, i)` to `(s, t)`.
pub fn di_table(dims: TableDims, start_row: usize) -> Result<CountMatrix> {
    if !(1..=dims.rows()).contains(&start_row) {
        return Err(domain(format!("start row {start_row} outside [1, {}]", dims.rows())));
    }
    let strip = Strip::for_table(dims.rows(), BoundaryMode::CONFINED, 0);
    Ok(march_matrix(dims, Family::Di(start_row), strip.unit(start_row as i64), &FULL_STEPS))
}

/// `D(s,t) = sum_i D^i(s,t)`: confined paths from anywhere in column 1.
pub fn d_table(dims: TableDims) -> CountMatrix {
    // the recurrence is linear, so marching the all-ones column sums over start rows
    march_matrix(dims, Family::D, vec![BigCount::one(); dims.rows()], &FULL_STEPS)
}

/// `A(s,t)` for `1 <= s,t <= n`: paths from `(1,1)` using only `u` and `d`, never below row 1.
pub fn a_table(n: usize) -> Result<CountMatrix> {
    let dims = TableDims::square(n)?;
    let strip = Strip::for_table(n, BoundaryMode::CONFINED, 0);
    Ok(march_matrix(dims, Family::A, strip.unit(1), &UD_STEPS))
}

/// `H(s,t) = sum_{i<=t} D^1(s,i)`.
pub fn h_table(dims: TableDims) -> CountMatrix {
    let d1 = di_table(dims, 1).expect("row 1 is always inside the table");
    let columns = (1..=dims.cols())
        .map(|s| {
            d1.column(s)
                .iter()
                .scan(BigCount::zero(), |acc, v| {
                    *acc += v;
                    Some(acc.clone())
                })
                .collect()
        })
        .collect();
    CountMatrix::from_columns(dims, Family::H, columns)
}

/// `l(i,j;s,t:S)`: confined paths between two cells of the table.
pub fn bounded_pair_count(dims: TableDims, from: Cell, to: Cell) -> Result<BigCount> {
    dims.check_cell(from)?;
    dims.check_cell(to)?;
    if from.col > to.col {
        return Err(domain(format!("path cannot run from {from} back to {to}")));
    }
    let strip = Strip::for_table(dims.rows(), BoundaryMode::CONFINED, 0);
    let mut v = strip.unit(from.row as i64);
    for _ in from.col..to.col {
        v = strip.advance(&v, &FULL_STEPS);
    }
    Ok(v.swap_remove(to.row - 1))
}

/// `I_m(n)`: all perfect lattice paths of the table.
pub fn imn(dims: TableDims) -> BigCount {
    imn_sequence(dims.rows(), dims.cols()).pop().expect("cols >= 1")
}

/// `I_m(1), ..., I_m(max_n)` in one sweep.
pub fn imn_sequence(m: usize, max_n: usize) -> Vec<BigCount> {
    let strip = Strip::for_table(m, BoundaryMode::CONFINED, 0);
    let mut v = vec![BigCount::one(); m];
    let mut out = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        if n > 1 {
            v = strip.advance(&v, &FULL_STEPS);
        }
        out.push(v.iter().sum());
    }
    out
}

/// `S(x,y)`: words of length `y` over `{u,r,d}` with net displacement `x`, no walls.
pub fn free_count(net: i64, steps: usize) -> BigCount {
    if net.unsigned_abs() as usize > steps {
        return BigCount::zero();
    }
    // a y-step walk from row 0 stays inside [-y, y]
    let strip = Strip { lo: -(steps as i64), hi: steps as i64 };
    let mut v = strip.unit(0);
    for _ in 0..steps {
        v = strip.advance(&v, &FULL_STEPS);
    }
    v.swap_remove(strip.index(net).expect("|net| <= steps"))
}

/// Counts from `start_row` after `steps` steps under an arbitrary boundary mode.
///
/// Open sides get `steps` rows of slack, which no walk can outrun. The
/// returned vector is indexed by row and starts at the lowest reachable row,
/// returned as the first tuple element.
pub fn march_from(m: usize, mode: BoundaryMode, start_row: i64, steps: usize) -> (i64, Vec<BigCount>) {
    let strip = Strip::for_table(m, mode, steps + start_row.unsigned_abs() as usize + 1);
    let mut v = strip.unit(start_row);
    for _ in 0..steps {
        v = strip.advance(&v, &FULL_STEPS);
    }
    (strip.lo, v)
}
