//! Differential verification of the counting identities over finite grids.
//!
//! Each identity pairs a reference count (the left-hand side, from the DP or
//! a known sequence) with a formula (the right-hand side, from the closed
//! forms). S-FREE takes its reference side from the brute-force oracle, so
//! its walk length is bounded by the oracle cap. Comparison is exact integer equality. Grid points are visited in
//! lexicographic order of their parameter tuple, so the first recorded
//! counterexample is the lexicographically first failing point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::closed::{BoundaryRanges, ClosedForms};
use crate::dp;
use crate::error::{domain, Error, Result};
use crate::lattice::{Cell, TableDims};
use crate::oracle::Oracle;

macro_rules! identity_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant),*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name),*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(IdentityId::$variant),)*
                    _ => Err(Error::Parse(format!("unknown identity {s:?}"))),
                }
            }
        }
    };
}

identity_ids! {
    AClosed => "A-CLOSED",
    D1ViaA => "D1-VIA-A",
    D1Closed => "D1-CLOSED",
    HSquare => "H-SQUARE",
    D1Split => "D1-SPLIT",
    DBoundary => "D-BOUNDARY",
    DBoundaryPrinted => "D-BOUNDARY-PRINTED",
    InnerProduct => "INNER-PRODUCT",
    SFree => "S-FREE",
    SFreePrinted => "S-FREE-PRINTED",
    S2 => "S2",
    MotzkinEdge => "MOTZKIN-EDGE",
    CatalanEdge => "CATALAN-EDGE",
    FlipSymmetry => "FLIP-SYMMETRY",
    Reversal => "REVERSAL",
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Expected {
    Pass,
    DocumentedFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Pass,
    Fail,
    DocumentedFailureConfirmed,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Pass => "PASS",
            Expected::DocumentedFailure => "DOCUMENTED-FAILURE",
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::DocumentedFailureConfirmed => "DOCUMENTED-FAILURE-CONFIRMED",
        })
    }
}

/// Parameter ranges of a sweep. Each identity reads the fields it needs:
/// `m` bounds table heights, `n` bounds widths (or `s` for table-free
/// families), `y` bounds free-walk lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Domain {
    pub min_m: usize,
    pub max_m: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub max_y: usize,
}

impl Domain {
    pub const fn new(max_m: usize, max_n: usize, max_y: usize) -> Self {
        Self { min_m: 1, max_m, min_n: 1, max_n, max_y }
    }

    fn ms(&self) -> std::ops::RangeInclusive<usize> {
        self.min_m.max(1)..=self.max_m
    }

    fn ns(&self) -> std::ops::RangeInclusive<usize> {
        self.min_n.max(1)..=self.max_n
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m in [{}, {}], n in [{}, {}], y <= {}",
            self.min_m, self.max_m, self.min_n, self.max_n, self.max_y
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentitySpec {
    pub id: IdentityId,
    pub domain: Domain,
    pub expected: Expected,
}

impl IdentitySpec {
    /// The default grid and expected verdict for `id`.
    pub fn default_for(id: IdentityId) -> Self {
        use IdentityId::*;
        let domain = match id {
            D1Closed => Domain::new(16, 16, 0),
            SFree => Domain::new(6, 12, 10),
            SFreePrinted => Domain::new(6, 12, 8),
            Reversal => Domain::new(10, 10, 0),
            _ => Domain::new(6, 12, 0),
        };
        let expected = match id {
            DBoundaryPrinted | SFreePrinted => Expected::DocumentedFailure,
            _ => Expected::Pass,
        };
        Self { id, domain, expected }
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn default_suite() -> Vec<Self> {
        IdentityId::ALL.iter().map(|&id| Self::default_for(id)).collect()
    }
}

/// Named integer parameters of one grid point, in sweep order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Point(pub Vec<(&'static str, i64)>);

impl Point {
    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

macro_rules! point {
    ($($k:ident),* $(,)?) => {
        Point(vec![$((stringify!($k), $k as i64)),*])
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub point: Point,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub spec: IdentitySpec,
    pub cases_checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<Counterexample>,
    pub verdict: Verdict,
}

impl IdentityReport {
    pub fn met_expectation(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Per-`m` extent of the validity region found by [`Verifier::calibrate_domain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub id: IdentityId,
    /// The swept axis: `n`, `span` or `s`.
    pub axis: &'static str,
    pub search: Domain,
    /// Largest axis bound such that every point with axis value up to it
    /// passes, per table height; `None` when the smallest value already fails.
    pub per_m: Vec<(usize, Option<usize>)>,
    /// Largest axis value inside the search box, per table height.
    pub box_limit: Vec<(usize, usize)>,
}

impl Calibration {
    /// True when the whole search box passed.
    pub fn is_full_box(&self) -> bool {
        self.per_m
            .iter()
            .zip(&self.box_limit)
            .all(|((_, got), (_, lim))| *got == Some(*lim))
    }

    /// Fits `bound = slope * m + offset` through the entries that stopped inside the box.
    pub fn linear_bound(&self) -> Option<(i64, i64)> {
        let interior: Vec<(i64, i64)> = self
            .per_m
            .iter()
            .zip(&self.box_limit)
            .filter_map(|(&(m, got), &(_, lim))| match got {
                Some(b) if b < lim => Some((m as i64, b as i64)),
                _ => None,
            })
            .collect();
        let (&(m0, b0), &(m1, b1)) = (interior.first()?, interior.get(1)?);
        let slope = (b1 - b0) / (m1 - m0);
        let offset = b0 - slope * m0;
        interior
            .iter()
            .all(|&(m, b)| b == slope * m + offset)
            .then_some((slope, offset))
    }

    pub fn summary(&self) -> String {
        if self.is_full_box() {
            let top = self.box_limit.iter().map(|&(_, l)| l).max().unwrap_or(0);
            return format!(
                "{}: holds on the whole search box (m in [{}, {}], {} <= {top})",
                self.id, self.search.min_m, self.search.max_m, self.axis
            );
        }
        match self.linear_bound() {
            Some((slope, offset)) => {
                let rhs = match (slope, offset) {
                    (0, o) => o.to_string(),
                    (1, 0) => "m".to_string(),
                    (s, 0) => format!("{s}m"),
                    (1, o) if o > 0 => format!("m+{o}"),
                    (s, o) if o > 0 => format!("{s}m+{o}"),
                    (1, o) => format!("m{o}"),
                    (s, o) => format!("{s}m{o}"),
                };
                format!("{}: holds for {} <= {rhs}", self.id, self.axis)
            }
            None => {
                let parts: Vec<_> = self
                    .per_m
                    .iter()
                    .map(|(m, b)| match b {
                        Some(b) => format!("m={m}: {} <= {b}", self.axis),
                        None => format!("m={m}: none"),
                    })
                    .collect();
                format!("{}: {}", self.id, parts.join("; "))
            }
        }
    }
}

/// Largest table side any sweep will build.
pub const GRID_LIMIT: usize = 64;

type Visit<'a> = dyn FnMut(Point, BigInt, BigInt) + 'a;

/// Sweeps identities over parameter grids.
#[derive(Debug, Clone, Default)]
pub struct Verifier {
    closed: ClosedForms,
    oracle: Oracle,
}

impl Verifier {
    pub fn new(oracle: Oracle) -> Self {
        Self {
            closed: ClosedForms::default(),
            oracle,
        }
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    fn dims(m: usize, n: usize) -> TableDims {
        TableDims::new(m, n).expect("grid dimensions start at 1")
    }

    /// Checks the grid against the oracle cap and the desk-scale grid limit.
    fn check_caps(&self, spec: &IdentitySpec) -> Result<()> {
        use IdentityId::*;
        let dom = &spec.domain;
        let (what, requested, cap) = match spec.id {
            SFree | SFreePrinted => ("free walk length y", dom.max_y, self.oracle.cap()),
            _ => ("grid size", dom.max_m.max(dom.max_n), GRID_LIMIT),
        };
        if requested > cap {
            return Err(Error::Resource { what, requested, cap });
        }
        Ok(())
    }

    /// Visits every grid point of `id`. With `widen`, the side conditions
    /// attached to H-SQUARE (`m <= n <= 2m`) and S2 (`span <= m+1`) are dropped.
    fn sweep(&self, id: IdentityId, dom: &Domain, widen: bool, visit: &mut Visit<'_>) -> Result<()> {
        use IdentityId::*;
        let cf = &self.closed;
        let big = |v: crate::BigCount| BigInt::from(v);
        match id {
            AClosed => {
                for n in dom.ns() {
                    let a = dp::a_table(n)?;
                    for s in 1..=n {
                        for t in 1..=s {
                            visit(point!(n, s, t), big(a[(s, t)].clone()), big(cf.a_closed(s, t)?));
                        }
                    }
                }
            }
            D1ViaA | D1Closed => {
                for n in dom.ns() {
                    let d1 = (id == D1ViaA).then(|| dp::di_table(Self::dims(n, n), 1)).transpose()?;
                    for s in 1..=n {
                        for t in 1..=s {
                            let (lhs, rhs) = match &d1 {
                                Some(table) => (big(table[(s, t)].clone()), big(cf.d1_via_a(s, t)?)),
                                None => (big(cf.d1_via_a(s, t)?), big(cf.d1_closed(s, t)?)),
                            };
                            visit(point!(n, s, t), lhs, rhs);
                        }
                    }
                }
            }
            HSquare => {
                for m in dom.ms() {
                    let lo = if widen { 1 } else { m.max(dom.min_n) };
                    let hi = if widen { dom.max_n } else { (2 * m).min(dom.max_n) };
                    for n in lo..=hi {
                        let h = dp::h_table(Self::dims(m, n));
                        visit(point!(m, n), big(h[(n, m)].clone()), cf.h_via_square_signed(n, m));
                    }
                }
            }
            D1Split => {
                for m in dom.ms() {
                    for n in dom.ns() {
                        let lhs = big(dp::di_table(Self::dims(m, n), 1)?[(n, m)].clone());
                        for s in 1..=n {
                            visit(point!(m, n, s), lhs.clone(), big(cf.d1_split(n, m, s)?));
                        }
                    }
                }
            }
            DBoundary | DBoundaryPrinted => {
                let ranges = if id == DBoundary {
                    BoundaryRanges::Corrected
                } else {
                    BoundaryRanges::Printed
                };
                for m in dom.ms() {
                    for n in dom.ns() {
                        let d = dp::d_table(Self::dims(m, n));
                        for s in 1..=n {
                            for t in 1..=m {
                                visit(point!(m, n, s, t), big(d[(s, t)].clone()), cf.d_boundary_signed(m, s, t, ranges));
                            }
                        }
                    }
                }
            }
            InnerProduct => {
                for m in dom.ms() {
                    for n in dom.ns() {
                        let dims = Self::dims(m, n);
                        let total = big(dp::imn(dims));
                        for a in 1..=n {
                            visit(point!(m, n, a), total.clone(), big(cf.i_inner(dims, a)?));
                        }
                    }
                }
            }
            SFree | SFreePrinted => {
                for y in 0..=dom.max_y {
                    for x in -(y as i64)..=y as i64 {
                        let rhs = if id == SFree {
                            cf.s_free_closed(x, y)
                        } else {
                            cf.s_free_printed(x, y)
                        };
                        visit(point!(y, x), big(self.oracle.brute_free(x, y)?), big(rhs));
                    }
                }
            }
            S2 => {
                for m in dom.ms() {
                    let max_span = if widen { dom.max_n.saturating_sub(1) } else { (m + 1).min(dom.max_n.saturating_sub(1)) };
                    for span in 0..=max_span {
                        let dims = Self::dims(m, span + 1);
                        for b in 1..=m {
                            for e in 1..=m {
                                let (from, to) = (Cell::new(1, b), Cell::new(span + 1, e));
                                let lhs = big(dp::bounded_pair_count(dims, from, to)?);
                                visit(point!(m, span, b, e), lhs, cf.s2_signed(m, from, to));
                            }
                        }
                    }
                }
            }
            MotzkinEdge => {
                for n in dom.ns() {
                    let d1 = dp::di_table(Self::dims(n, n), 1)?;
                    for s in 1..=n {
                        visit(point!(n, s), big(d1[(s, 1)].clone()), big(cf.motzkin(s - 1)));
                    }
                }
            }
            CatalanEdge => {
                for n in dom.ns() {
                    let a = dp::a_table(n)?;
                    for k in 0..=(n - 1) / 2 {
                        visit(point!(n, k), big(a[(2 * k + 1, 1)].clone()), big(cf.catalan(k)));
                    }
                }
            }
            FlipSymmetry => {
                for m in dom.ms() {
                    for n in dom.ns() {
                        let dims = Self::dims(m, n);
                        let tables = (1..=m).map(|i| dp::di_table(dims, i)).collect::<Result<Vec<_>>>()?;
                        for i in 1..=m {
                            for s in 1..=n {
                                for t in 1..=m {
                                    let lhs = big(tables[i - 1][(s, t)].clone());
                                    let rhs = big(tables[m - i][(s, m + 1 - t)].clone());
                                    visit(point!(m, n, i, s, t), lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
            Reversal => {
                for n in dom.ns() {
                    let dims = Self::dims(n, n);
                    visit(point!(n), big(dp::d_table(dims)[(n, n)].clone()), big(dp::h_table(dims)[(n, n)].clone()));
                }
            }
        }
        Ok(())
    }

    pub fn run_identity(&self, spec: &IdentitySpec) -> Result<IdentityReport> {
        self.check_caps(spec)?;
        let mut cases = 0u64;
        let mut failures = 0u64;
        let mut first = None;
        self.sweep(spec.id, &spec.domain, false, &mut |point, lhs, rhs| {
            cases += 1;
            if lhs != rhs {
                failures += 1;
                first.get_or_insert_with(|| Counterexample {
                    point,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        })?;
        let verdict = match (spec.expected, failures) {
            (Expected::Pass, 0) => Verdict::Pass,
            (Expected::DocumentedFailure, f) if f > 0 => Verdict::DocumentedFailureConfirmed,
            _ => Verdict::Fail,
        };
        Ok(IdentityReport {
            spec: *spec,
            cases_checked: cases,
            failures,
            first_counterexample: first,
            verdict,
        })
    }

    pub fn run_suite(&self, specs: &[IdentitySpec]) -> Result<Vec<IdentityReport>> {
        specs.iter().map(|s| self.run_identity(s)).collect()
    }

    /// Finds, for each table height in `search`, how far the identity holds
    /// along its free axis, ignoring any stated side condition.
    pub fn calibrate_domain(&self, id: IdentityId, search: Domain) -> Result<Calibration> {
        use IdentityId::*;
        let axis = match id {
            HSquare => "n",
            S2 => "span",
            DBoundary | DBoundaryPrinted => "s",
            other => return Err(domain(format!("{other} has no calibrated side condition"))),
        };
        self.check_caps(&IdentitySpec::default_for(id).with_domain(search))?;
        let mut first_fail: Vec<Option<usize>> = vec![None; search.max_m + 1];
        self.sweep(id, &search, true, &mut |point, lhs, rhs| {
            if lhs != rhs {
                let m = point.get("m").unwrap_or(0) as usize;
                let v = point.get(axis).unwrap_or(0) as usize;
                let slot = &mut first_fail[m];
                *slot = Some(slot.map_or(v, |f| f.min(v)));
            }
        })?;
        let lowest = if axis == "span" { 0 } else { 1 };
        let mut per_m = Vec::new();
        let mut box_limit = Vec::new();
        for m in search.ms() {
            let limit = if axis == "span" { search.max_n.saturating_sub(1) } else { search.max_n };
            let got = match first_fail[m] {
                None => Some(limit),
                Some(f) if f > lowest => Some(f - 1),
                Some(_) => None,
            };
            per_m.push((m, got));
            box_limit.push((m, limit));
        }
        Ok(Calibration {
            id,
            axis,
            search,
            per_m,
            box_limit,
        })
    }
}
