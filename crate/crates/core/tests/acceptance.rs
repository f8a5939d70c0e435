//! Acceptance criteria. Each test prints one `[PASS]` / `[FAIL]` line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1` to see them.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use latpath::closed::{BoundaryRanges, ClosedForms};
use latpath::format::parse_csv;
use latpath::oracle::{Oracle, WordFilter};
use latpath::verifier::{Domain, Expected, IdentityId, IdentitySpec, Verdict, Verifier};
use latpath::{dp, BigCount, Cell, Family, TableDims};
use num_bigint::BigInt;

type Check = Result<String, String>;

fn report(id: u32, name: &str, limit: Duration, check: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(note) if elapsed > limit => Err(format!("{note}; took {elapsed:?}, limit {limit:?}")),
        other => other,
    };
    match outcome {
        Ok(note) => println!("[PASS] criterion {id}: {name} ({elapsed:.2?}) {note}"),
        Err(why) => {
            println!("[FAIL] criterion {id}: {name} ({elapsed:.2?}) {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_latpath"))
        .args(args)
        .env_remove("LATPATH_ORACLE_CAP")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn big(v: u64) -> BigCount {
    BigCount::from(v)
}

fn dims(m: usize, n: usize) -> TableDims {
    TableDims::new(m, n).unwrap()
}

/// Printed table rows, top row first; row `t` starts at column `s = t`.
fn expect_triangle(table: &latpath::CountMatrix, printed: &[&[u64]], what: &str) -> Vec<String> {
    let top = printed.len();
    let mut mismatches = Vec::new();
    for (k, row) in printed.iter().enumerate() {
        let t = top - k;
        for (j, &want) in row.iter().enumerate() {
            let s = t + j;
            let got = &table[(s, t)];
            if *got != big(want) {
                mismatches.push(format!("{what}({s},{t}): printed {want}, computed {got}"));
            }
        }
    }
    mismatches
}

const TABLE1_D1: &[&[u64]] = &[
    &[1],
    &[1, 7],
    &[1, 6, 27],
    &[1, 5, 20, 70],
    &[1, 4, 14, 44, 133],
    &[1, 3, 9, 25, 69, 189],
    &[1, 2, 5, 12, 30, 76, 196],
    &[1, 1, 2, 4, 9, 21, 51, 127],
];

const TABLE1_A: &[&[u64]] = &[
    &[1],
    &[1, 0],
    &[1, 0, 6],
    &[1, 0, 5, 0],
    &[1, 0, 4, 0, 14],
    &[1, 0, 3, 0, 9, 0],
    &[1, 0, 2, 0, 5, 0, 14],
    &[1, 0, 1, 0, 2, 0, 5, 0],
];

const TABLE2_D1: &[&[u64]] = &[
    &[1, 5, 19, 63, 195, 579],
    &[1, 4, 14, 44, 133, 384, 1096],
    &[1, 3, 9, 25, 69, 189, 517, 1413],
    &[1, 2, 5, 12, 30, 76, 196, 512, 1352],
    &[1, 1, 2, 4, 9, 21, 51, 127, 323, 835],
];

const TABLE2_FOOTER: [u64; 10] = [1, 2, 5, 13, 36, 95, 259, 708, 1931, 5275];

#[test]
fn criterion_1_golden_tables() {
    report(1, "Table 1 (D^1 and A, 8x8)", Duration::from_secs(1), || {
        let d1 = parse_csv(&cli(&["table", "--kind", "d1", "-m", "8", "-n", "8", "--format", "csv"])?, Family::Di(1))
            .map_err(|e| e.to_string())?;
        let a = parse_csv(&cli(&["table", "--kind", "a", "-m", "8", "-n", "8", "--format", "csv"])?, Family::A)
            .map_err(|e| e.to_string())?;
        let mut bad = expect_triangle(&d1, TABLE1_D1, "D^1");
        bad.extend(expect_triangle(&a, TABLE1_A, "A"));
        let md = cli(&["table", "--kind", "d1", "-m", "8", "-n", "8"])?;
        if !md.contains("| 1 | 1 | 1 | 2 | 4 | 9 | 21 | 51 | 127 |") {
            bad.push("markdown bottom row".into());
        }
        let populated: usize = TABLE1_D1.iter().map(|r| r.len()).sum();
        if populated != 36 {
            bad.push(format!("expected 36 populated entries, transcribed {populated}"));
        }
        if d1[(8, 4)] != big(133) || a[(7, 1)] != big(5) || a[(8, 2)] != big(14) || a[(8, 8)] != big(1) {
            bad.push("spot values".into());
        }
        if bad.is_empty() {
            Ok("72 entries exact".into())
        } else {
            Err(bad.join("; "))
        }
    });
}

#[test]
fn criterion_2_table_two() {
    report(2, "Table 2 (D^1 in 5x10, H(s,s) footer)", Duration::from_secs(1), || {
        let d1 = parse_csv(&cli(&["table", "--kind", "d1", "-m", "5", "-n", "10", "--format", "csv"])?, Family::Di(1))
            .map_err(|e| e.to_string())?;
        let mut bad = expect_triangle(&d1, TABLE2_D1, "D^1");
        let md = cli(&["table", "--kind", "d1", "-m", "5", "-n", "10"])?;
        let footer: Vec<u64> = md
            .lines()
            .find(|l| l.starts_with("| H(s,s) |"))
            .ok_or("no H(s,s) footer")?
            .split('|')
            .skip(2)
            .filter(|c| !c.trim().is_empty())
            .map(|c| c.trim().parse().unwrap())
            .collect();
        for (k, (&got, &want)) in footer.iter().zip(&TABLE2_FOOTER).enumerate() {
            if got != want {
                bad.push(format!("H({0},{0}): printed {want}, computed {got}", k + 1));
            }
        }
        if footer.len() != TABLE2_FOOTER.len() {
            bad.push(format!("footer has {} values", footer.len()));
        }
        if bad.is_empty() {
            Ok("all entries exact".into())
        } else {
            Err(bad.join("; "))
        }
    });
}

#[test]
fn criterion_3_worked_examples() {
    report(3, "worked examples (133, 195, 1931)", Duration::from_secs(1), || {
        let cf = ClosedForms::default();
        let mut bad = Vec::new();

        let terms: Vec<(BigCount, BigCount)> = (0..=2)
            .map(|i| (cf.binomial(7, 4 - 2 * i), cf.a_closed(4 + 2 * i as usize, 4).unwrap()))
            .collect();
        let want = [(35, 1), (21, 4), (1, 14)];
        for ((c, a), (wc, wa)) in terms.iter().zip(want) {
            if (c, a) != (&big(wc), &big(wa)) {
                bad.push(format!("D^1(8,4) term {c}*{a}, want {wc}*{wa}"));
            }
        }
        if cf.d1_via_a(8, 4).unwrap() != big(133) {
            bad.push("D^1(8,4) != 133".into());
        }

        let split: Vec<(BigCount, BigCount)> = (1..=5)
            .map(|i| (cf.confined_d1(5, 5, i), cf.confined_d1(5, 5, 6 - i)))
            .collect();
        let want = [(9, 1), (12, 4), (9, 9), (4, 12), (1, 9)];
        for ((x, y), (wx, wy)) in split.iter().zip(want) {
            if (x, y) != (&big(wx), &big(wy)) {
                bad.push(format!("D^1(9,5) split term {x}*{y}, want {wx}*{wy}"));
            }
        }
        if cf.d1_split(9, 5, 5).unwrap() != big(195) {
            bad.push("D^1(9,5) != 195".into());
        }

        if cf.d_boundary(dims(9, 9), 9, 9).unwrap() != big(2123) || dp::d_table(dims(9, 9))[(9, 9)] != big(2123) {
            bad.push("D(9,9) != 2123".into());
        }
        let corrections: Vec<(u64, BigCount)> = (5..=8).map(|i| (3u64.pow(8 - i as u32), cf.confined_d1(5, i, 5))).collect();
        let want = [(27, 1), (9, 5), (3, 19), (1, 63)];
        for ((p, d), (wp, wd)) in corrections.iter().zip(want) {
            if (*p, d) != (wp, &big(wd)) {
                bad.push(format!("H(9,5) correction {p}*{d}, want {wp}*{wd}"));
            }
        }
        if cf.h_via_square(9, 5).unwrap() != big(1931) || dp::h_table(dims(5, 9))[(9, 5)] != big(1931) {
            bad.push("H(9,5) != 1931".into());
        }
        if bad.is_empty() {
            Ok("35+84+14, 9+48+81+48+9, 2123-192".into())
        } else {
            Err(bad.join("; "))
        }
    });
}

#[test]
fn criterion_4_figure_one() {
    report(4, "Figure 1 (I_2(3) = 8)", Duration::from_secs(1), || {
        let mut total = 0u64;
        for from in 1..=2 {
            for to in 1..=2 {
                let (f, t) = (from.to_string(), to.to_string());
                let out = cli(&["count", "-m", "2", "-n", "3", "--from-col", "1", "--from-row", &f, "--to-col", "3", "--to-row", &t])?;
                total += out.trim().parse::<u64>().map_err(|e| e.to_string())?;
            }
        }
        let words: BTreeSet<String> = cli(&["words", "--length", "2", "-m", "2", "-n", "3", "--trace"])?
            .lines()
            .map(str::to_owned)
            .collect();
        let want: BTreeSet<String> = ["111", "112", "121", "122", "222", "221", "212", "211"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let seq = cli(&["sequence", "--target", "imn-fixed-m", "-m", "2", "--max-n", "3"])?;
        if total == 8 && words == want && seq.lines().last() == Some("8") {
            Ok("8 row-words".into())
        } else {
            Err(format!("count total {total}, words {words:?}, sequence {seq:?}"))
        }
    });
}

#[test]
fn criterion_5_identity_suite() {
    report(5, "identity suite (verify all)", Duration::from_secs(60), || {
        let must_pass = [
            IdentityId::AClosed,
            IdentityId::D1ViaA,
            IdentityId::D1Closed,
            IdentityId::D1Split,
            IdentityId::DBoundary,
            IdentityId::InnerProduct,
            IdentityId::HSquare,
            IdentityId::SFree,
            IdentityId::S2,
            IdentityId::FlipSymmetry,
            IdentityId::Reversal,
        ];
        let suite = IdentitySpec::default_suite();
        let reports = Verifier::new(Oracle::new(14)).run_suite(&suite).map_err(|e| e.to_string())?;
        let mut bad = Vec::new();
        for id in must_pass {
            let r = reports.iter().find(|r| r.spec.id == id).ok_or(format!("{id} missing"))?;
            if r.verdict != Verdict::Pass || r.failures != 0 || r.cases_checked == 0 {
                bad.push(format!("{id}: {} with {} failures", r.verdict, r.failures));
            }
        }
        let d = |id| IdentitySpec::default_for(id).domain;
        if d(IdentityId::DBoundary) != Domain::new(6, 12, 0) || d(IdentityId::SFree).max_y != 10 {
            bad.push("default grids differ from m <= 6, n <= 12, y <= 10".into());
        }
        let out = Command::new(env!("CARGO_BIN_EXE_latpath")).args(["verify"]).output().map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            bad.push(format!("`verify all` exited {:?}", out.status.code()));
        }
        let cases: u64 = reports.iter().map(|r| r.cases_checked).sum();
        if bad.is_empty() {
            Ok(format!("{} identities, {cases} grid points", reports.len()))
        } else {
            Err(bad.join("; "))
        }
    });
}

#[test]
fn criterion_6_errata() {
    report(6, "errata confirmation and H-SQUARE calibration", Duration::from_secs(60), || {
        let v = Verifier::default();
        let mut bad = Vec::new();
        let mut notes = Vec::new();
        for id in [IdentityId::DBoundaryPrinted, IdentityId::SFreePrinted] {
            let spec = IdentitySpec::default_for(id);
            assert_eq!(spec.expected, Expected::DocumentedFailure);
            let r = v.run_identity(&spec).map_err(|e| e.to_string())?;
            match (&r.verdict, &r.first_counterexample) {
                (Verdict::DocumentedFailureConfirmed, Some(cx)) => {
                    notes.push(format!("{id} first fails at {} ({} vs {})", cx.point, cx.lhs, cx.rhs))
                }
                _ => bad.push(format!("{id}: {}", r.verdict)),
            }
        }

        // the 2x3, s=3, t=1 point: brute force 4, printed ranges 8
        let cf = ClosedForms::default();
        let brute = Oracle::default()
            .count_words(2, WordFilter::confined(dims(2, 3)).end(1))
            .map_err(|e| e.to_string())?;
        let printed = cf.d_boundary_signed(2, 3, 1, BoundaryRanges::Printed);
        if brute != big(4) || printed != BigInt::from(8) {
            bad.push(format!("2x3 (3,1): brute {brute}, printed {printed}"));
        }

        let cal = v
            .calibrate_domain(IdentityId::HSquare, Domain::new(5, 12, 0))
            .map_err(|e| e.to_string())?;
        for &(m, bound) in &cal.per_m {
            // every n in [m, 2m] must lie inside the calibrated region
            if bound.is_none_or(|b| b < 2 * m) {
                bad.push(format!("H-SQUARE fails inside m <= n <= 2m at m={m}: {bound:?}"));
            }
            if 2 * m + 2 <= 12 {
                let outside = cf.h_via_square_signed(2 * m + 2, m);
                let truth = BigInt::from(dp::h_table(dims(m, 2 * m + 2))[(2 * m + 2, m)].clone());
                if outside == truth {
                    bad.push(format!("H-SQUARE unexpectedly holds at m={m}, n={}", 2 * m + 2));
                }
            }
        }
        notes.push(cal.summary());
        if bad.is_empty() {
            Ok(notes.join("; "))
        } else {
            Err(bad.join("; "))
        }
    });
}

#[test]
fn criterion_7_known_sequences() {
    report(7, "Motzkin and Catalan edges", Duration::from_secs(1), || {
        let d1 = dp::di_table(dims(8, 8), 1).unwrap();
        let motzkin: Vec<BigCount> = (1..=8).map(|s| d1[(s, 1)].clone()).collect();
        let a = dp::a_table(9).unwrap();
        let catalan: Vec<BigCount> = (0..=4).map(|k| a[(2 * k + 1, 1)].clone()).collect();
        if motzkin == [1u64, 1, 2, 4, 9, 21, 51, 127].map(big) && catalan == [1u64, 1, 2, 5, 14].map(big) {
            Ok(String::new())
        } else {
            Err(format!("motzkin {motzkin:?}, catalan {catalan:?}"))
        }
    });
}

#[test]
fn criterion_8_property_suite() {
    report(8, "property suite", Duration::from_secs(60), || {
        let mut bad = Vec::new();
        for y in 0..=12usize {
            let total: BigCount = (-(y as i64)..=y as i64).map(|x| dp::free_count(x, y)).sum();
            if total != BigCount::from(3u8).pow(y as u32) {
                bad.push(format!("sum of S(x,{y}) = {total}"));
            }
        }
        let oracle = Oracle::default();
        let mut pairs = 0u64;
        for m in 1..=5 {
            for n in 1..=5 {
                let d = dims(m, n);
                for c0 in 1..=n {
                    for c1 in c0..=n {
                        for r0 in 1..=m {
                            for r1 in 1..=m {
                                let (a, b) = (Cell::new(c0, r0), Cell::new(c1, r1));
                                pairs += 1;
                                if oracle.brute_pair_count(d, a, b).unwrap() != dp::bounded_pair_count(d, a, b).unwrap() {
                                    bad.push(format!("{d} {a}->{b}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        let cf = ClosedForms::default();
        for m in 1..=5 {
            for n in 1..=9 {
                let d = dims(m, n);
                let total = dp::imn(d);
                for a in 1..=n {
                    if cf.i_inner(d, a).unwrap() != total {
                        bad.push(format!("inner product {d} a={a}"));
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(format!("{pairs} cell pairs"))
        } else {
            Err(bad.join("; "))
        }
    });
}
