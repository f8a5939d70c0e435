//! Direct evaluators for the closed-form counting identities.
//!
//! Everything here is built from binomial coefficients. Counts that must be
//! taken inside an `m`-row table use [`ClosedForms::confined`], a reflection
//! sum over free counts, so none of these evaluators reads the DP tables they
//! are checked against (the one exception is [`ClosedForms::i_inner`], which is
//! by definition a product of two columns of `D`).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dp;
use crate::error::{domain, Error, Result};
use crate::lattice::{BigCount, Cell, TableDims};

/// Exact binomial coefficient; zero outside the Pascal triangle.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigCount::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Rows `0..=max_n` of Pascal's triangle.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigCount>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigCount>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigCount::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let left = if k > 0 { prev[k - 1].clone() } else { BigCount::zero() };
                    let right = prev.get(k).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, falling back to direct evaluation past the stored rows.
    pub fn get(&self, n: u64, k: i64) -> BigCount {
        if k < 0 || k as u64 > n {
            return BigCount::zero();
        }
        match self.rows.get(n as usize) {
            Some(row) => row[k as usize].clone(),
            None => binomial(n, k),
        }
    }
}

/// Summation ranges for the boundary lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryRanges {
    /// Bottom sum from `i = t`, top sum from `i = m+1-t`.
    Corrected,
    /// Bottom sum from `i = t+1`, top sum from `i = m+2-t`, as originally typeset.
    Printed,
}

fn to_count(formula: &'static str, v: BigInt) -> Result<BigCount> {
    v.to_biguint().ok_or_else(|| Error::Negative {
        formula,
        value: v.to_string(),
    })
}

fn exact_div(formula: &'static str, num: BigCount, den: BigCount) -> Result<BigCount> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Inexact {
            formula,
            numerator: num.to_string(),
            denominator: den.to_string(),
        })
    }
}

fn pow3(e: usize) -> BigCount {
    BigCount::from(3u8).pow(e as u32)
}

#[derive(Debug, Clone)]
pub struct ClosedForms {
    binom: BinomialTable,
}

impl Default for ClosedForms {
    fn default() -> Self {
        Self::new(64)
    }
}

impl ClosedForms {
    pub fn new(max_binomial_row: usize) -> Self {
        Self {
            binom: BinomialTable::new(max_binomial_row),
        }
    }

    pub fn binomial(&self, n: u64, k: i64) -> BigCount {
        self.binom.get(n, k)
    }

    /// Ballot form `A(s,t) = 2t/(s+t) * C(s-1, (s-t)/2)`.
    pub fn a_closed(&self, s: usize, t: usize) -> Result<BigCount> {
        if t == 0 || t > s {
            return Err(domain(format!("A({s},{t}) needs 1 <= t <= s")));
        }
        if (s - t) % 2 == 1 {
            return Ok(BigCount::zero());
        }
        let num = self.binomial(s as u64 - 1, ((s - t) / 2) as i64) * (2 * t);
        exact_div("A ballot form", num, BigCount::from(s + t))
    }

    /// `D^1(s,t)` by inserting `r` steps into `u`/`d` ballot paths.
    pub fn d1_via_a(&self, s: usize, t: usize) -> Result<BigCount> {
        if t == 0 || t > s {
            return Err(domain(format!("D^1({s},{t}) needs 1 <= t <= s")));
        }
        let mut acc = BigCount::zero();
        for i in 0..=(s - t) / 2 {
            let ins = self.binomial(s as u64 - 1, (s - t - 2 * i) as i64);
            acc += ins * self.a_closed(t + 2 * i, t)?;
        }
        Ok(acc)
    }

    /// `D^1(s,t) = sum_i t/(t+i) C(s-1, s-t-2i) C(t+2i-1, i)`, each summand divided exactly.
    pub fn d1_closed(&self, s: usize, t: usize) -> Result<BigCount> {
        if t == 0 || t > s {
            return Err(domain(format!("D^1({s},{t}) needs 1 <= t <= s")));
        }
        let mut acc = BigCount::zero();
        for i in 0..=(s - t) / 2 {
            let num = self.binomial(s as u64 - 1, (s - t - 2 * i) as i64)
                * self.binomial((t + 2 * i - 1) as u64, i as i64)
                * t;
            acc += exact_div("D^1 corollary", num, BigCount::from(t + i))?;
        }
        Ok(acc)
    }

    /// Free count `S(x,y) = sum_i C(y, |x|+i) C(y-|x|-i, i)`, summing over the number `i` of down steps.
    pub fn s_free_closed(&self, x: i64, y: usize) -> BigCount {
        let ax = x.unsigned_abs() as usize;
        if ax > y {
            return BigCount::zero();
        }
        (0..=(y - ax) / 2)
            .map(|i| self.binomial(y as u64, (ax + i) as i64) * self.binomial((y - ax - i) as u64, i as i64))
            .sum()
    }

    /// The free-count formula with `C(y, |x|+1)` in place of `C(y, |x|+i)`, as originally typeset.
    pub fn s_free_printed(&self, x: i64, y: usize) -> BigCount {
        let ax = x.unsigned_abs() as usize;
        if ax > y {
            return BigCount::zero();
        }
        (0..=(y - ax) / 2)
            .map(|i| self.binomial(y as u64, ax as i64 + 1) * self.binomial((y - ax - i) as u64, i as i64))
            .sum()
    }

    /// Paths of `steps` steps from row `from` to row `to` staying in rows `[1, m]`.
    ///
    /// Reflection in the walls at rows `0` and `m+1`: a `{-1,0,1}` walk that
    /// crosses a wall must land on it, so the images of the target under the
    /// reflection group (period `2(m+1)`) cancel every walk that touches a wall.
    pub fn confined(&self, m: usize, from: usize, to: usize, steps: usize) -> BigCount {
        if !(1..=m).contains(&from) || !(1..=m).contains(&to) {
            return BigCount::zero();
        }
        let (a, b) = (from as i64, to as i64);
        let period = 2 * (m as i64 + 1);
        let reach = steps as i64 / period + 1;
        let mut acc = BigInt::zero();
        for k in -reach..=reach {
            acc += BigInt::from(self.s_free_closed(b - a + k * period, steps));
            acc -= BigInt::from(self.s_free_closed(-b - a + k * period, steps));
        }
        debug_assert!(acc.sign() != Sign::Minus);
        acc.to_biguint().unwrap_or_default()
    }

    /// `D^1(s,t)` inside an `m`-row table.
    pub fn confined_d1(&self, m: usize, s: usize, t: usize) -> BigCount {
        if s == 0 {
            return BigCount::zero();
        }
        self.confined(m, 1, t, s - 1)
    }

    /// Signed boundary-lemma value of `D(s,t)` in an `m`-row table.
    pub fn d_boundary_signed(&self, m: usize, s: usize, t: usize, ranges: BoundaryRanges) -> BigInt {
        let (bottom_from, top_from) = match ranges {
            BoundaryRanges::Corrected => (t, m + 1 - t),
            BoundaryRanges::Printed => (t + 1, m + 2 - t),
        };
        let correction = |from: usize, row: usize| -> BigCount {
            (from.max(1)..s)
                .map(|i| pow3(s - i - 1) * self.confined_d1(m, i, row))
                .sum()
        };
        BigInt::from(pow3(s - 1))
            - BigInt::from(correction(bottom_from, t))
            - BigInt::from(correction(top_from, m + 1 - t))
    }

    /// `D(s,t)` as `3^(s-1)` minus the paths whose last exit is through the floor or the ceiling.
    pub fn d_boundary(&self, dims: TableDims, s: usize, t: usize) -> Result<BigCount> {
        dims.check_cell(Cell::new(s, t))?;
        to_count(
            "boundary lemma",
            self.d_boundary_signed(dims.rows(), s, t, BoundaryRanges::Corrected),
        )
    }

    /// Signed value of `D(n,n) - sum_{i=m}^{n-1} 3^(n-i-1) D^1(i,m)` without the range check.
    pub fn h_via_square_signed(&self, n: usize, m: usize) -> BigInt {
        let square = self.d_boundary_signed(n, n, n, BoundaryRanges::Corrected);
        let leaked: BigCount = (m..n).map(|i| pow3(n - i - 1) * self.confined_d1(m, i, m)).sum();
        square - BigInt::from(leaked)
    }

    /// `H(n,m)` of the `m`-row table from the square table's `D(n,n)`, for `m <= n <= 2m`.
    pub fn h_via_square(&self, n: usize, m: usize) -> Result<BigCount> {
        if m == 0 || n < m || n > 2 * m {
            return Err(domain(format!("H via the square table needs m <= n <= 2m, got n={n}, m={m}")));
        }
        to_count("H square lemma", self.h_via_square_signed(n, m))
    }

    /// `D^1(n,m)` of the `m`-row table split at column `s`.
    pub fn d1_split(&self, n: usize, m: usize, s: usize) -> Result<BigCount> {
        if m == 0 || !(1..=n).contains(&s) {
            return Err(domain(format!("split column {s} outside [1, {n}]")));
        }
        Ok((1..=m)
            .map(|i| self.confined_d1(m, s, i) * self.confined_d1(m, n - s + 1, m - i + 1))
            .sum())
    }

    /// `sum_i D(a,i) D(b,i)` with `a + b = n + 1`.
    pub fn i_inner(&self, dims: TableDims, a: usize) -> Result<BigCount> {
        let n = dims.cols();
        if !(1..=n).contains(&a) {
            return Err(domain(format!("split column {a} outside [1, {n}]")));
        }
        let d = dp::d_table(dims);
        let b = n + 1 - a;
        Ok(d.column(a).iter().zip(d.column(b)).map(|(x, y)| x * y).sum())
    }

    /// Signed first-exit value of the pair count; exact for every column span.
    pub fn s2_signed(&self, m: usize, from: Cell, to: Cell) -> BigInt {
        let span = to.col - from.col;
        let (b, e) = (from.row, to.row);
        let free = self.s_free_closed(e as i64 - b as i64, span);
        // first exit through row 0 after reaching row 1 at column k, then free from row 0
        let floor: BigCount = (1..=span)
            .map(|k| self.confined_d1(m, k, b) * self.s_free_closed(e as i64, span - k))
            .sum();
        let ceiling: BigCount = (1..=span)
            .map(|k| self.confined_d1(m, k, m + 1 - b) * self.s_free_closed((m + 1 - e) as i64, span - k))
            .sum();
        BigInt::from(free) - BigInt::from(floor) - BigInt::from(ceiling)
    }

    /// Confined pair count as a free count minus one first-exit convolution per wall.
    pub fn s2_closed(&self, dims: TableDims, from: Cell, to: Cell) -> Result<BigCount> {
        dims.check_cell(from)?;
        dims.check_cell(to)?;
        if from.col > to.col {
            return Err(domain(format!("path cannot run from {from} back to {to}")));
        }
        to_count("pair first-exit form", self.s2_signed(dims.rows(), from, to))
    }

    pub fn catalan(&self, k: usize) -> BigCount {
        self.binomial(2 * k as u64, k as i64) / BigCount::from(k + 1)
    }

    /// Motzkin number `M_k = sum_i C(k, 2i) Cat_i`.
    pub fn motzkin(&self, k: usize) -> BigCount {
        (0..=k / 2)
            .map(|i| self.binomial(k as u64, 2 * i as i64) * self.catalan(i))
            .sum()
    }
}
