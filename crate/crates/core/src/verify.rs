//! Named suites that check the count triangles against independent routes:
//! closed forms, the exhaustive generators, the improper-edge census, the
//! Ramanujan polynomials, and the tree/forest decomposition.
//!
//! Every suite takes the triangles as data so a harness can hand in a
//! tampered [`TriangleSet`] and watch the suite fail.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{EnumerationError, Oracle, ZMode};
use crate::numeric::{
    binomial, catalan, double_factorial_odd, factorial, rising_factorial, BigNat,
};
use crate::tables::{f_count_literal, prescribed_root_forest_count, TriangleKind, TriangleSet};
use crate::tree::OrderedTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("triangle {kind} only has rows up to {have}, suite needs {need}")]
    TablesTooSmall {
        kind: TriangleKind,
        have: usize,
        need: usize,
    },
    #[error(
        "unknown suite {0:?} (expected rowsum, oracle, shor, ramanujan, decomposition or all)"
    )]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    RowSum,
    Oracle,
    Shor,
    Ramanujan,
    Decomposition,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::RowSum,
        Suite::Oracle,
        Suite::Shor,
        Suite::Ramanujan,
        Suite::Decomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RowSum => "rowsum",
            Suite::Oracle => "oracle",
            Suite::Shor => "shor",
            Suite::Ramanujan => "ramanujan",
            Suite::Decomposition => "decomposition",
        }
    }

    /// Whether the suite walks the generators up to `max_n` and is therefore
    /// bound by the enumeration cap.
    pub fn enumerates(self) -> bool {
        matches!(self, Suite::Oracle | Suite::Decomposition)
    }
}

impl std::str::FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Expected or observed value of a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckValue {
    Scalar(BigNat),
    Row(Vec<BigNat>),
    Signed(Vec<BigInt>),
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn row<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
            f.write_str("(")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        }
        match self {
            CheckValue::Scalar(v) => write!(f, "{v}"),
            CheckValue::Row(v) => row(f, v),
            CheckValue::Signed(v) => row(f, v),
        }
    }
}

impl Serialize for CheckValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        fn strings<S: Serializer, T: ToString>(s: S, v: &[T]) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }
        match self {
            CheckValue::Scalar(v) => s.serialize_str(&v.to_string()),
            CheckValue::Row(v) => strings(s, v),
            CheckValue::Signed(v) => strings(s, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub params: BTreeMap<&'static str, usize>,
    pub expected: CheckValue,
    pub actual: CheckValue,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub all_passed: bool,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    checks: &'a [Check],
    all_passed: bool,
    elapsed_ms: u64,
}

impl VerificationReport {
    fn finish(suite: Suite, mut checks: Vec<Check>, started: Instant) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport {
            suite: suite.name().to_string(),
            all_passed: checks.iter().all(|c| c.passed),
            checks,
            elapsed: started.elapsed(),
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            suite: &self.suite,
            checks: &self.checks,
            all_passed: self.all_passed,
            elapsed_ms: self.elapsed.as_millis() as u64,
        })
        .expect("report serializes")
    }

    /// One line per check plus a summary, without timings.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out += &format!(
                "{status} {} expected={} actual={}",
                c.id, c.expected, c.actual
            );
            if let Some(note) = &c.note {
                out += &format!(" note=\"{note}\"");
            }
            out.push('\n');
        }
        let failed = self.failed().count();
        out += &format!(
            "suite {}: {} checks, {} failed, {}\n",
            self.suite,
            self.checks.len(),
            failed,
            if self.all_passed {
                "all passed"
            } else {
                "FAILED"
            }
        );
        out
    }
}

fn check(
    id: String,
    params: &[(&'static str, usize)],
    expected: CheckValue,
    actual: CheckValue,
) -> Check {
    Check {
        id,
        params: params.iter().copied().collect(),
        passed: expected == actual,
        expected,
        actual,
        note: None,
    }
}

fn row_of(tables: &TriangleSet, kind: TriangleKind, n: usize) -> Vec<BigNat> {
    tables
        .get(kind)
        .row(n)
        .map(<[BigNat]>::to_vec)
        .unwrap_or_default()
}

fn entry(tables: &TriangleSet, kind: TriangleKind, n: usize, k: usize) -> BigNat {
    tables.get(kind).get(n, k).cloned().unwrap_or_default()
}

fn require(tables: &TriangleSet, kind: TriangleKind, need: usize) -> Result<(), VerifyError> {
    let have = tables.get(kind).max_n();
    if have < need {
        Err(VerifyError::TablesTooSmall { kind, have, need })
    } else {
        Ok(())
    }
}

fn require_cap(oracle: &Oracle, n: usize) -> Result<(), VerifyError> {
    if n > oracle.cap() {
        Err(EnumerationError::CapExceeded {
            n,
            cap: oracle.cap(),
        }
        .into())
    } else {
        Ok(())
    }
}

/// Row sums of `o` against the number of ordered trees on `[0, n]`, and the
/// two closed forms of that number against each other.
pub fn verify_row_sums(
    tables: &TriangleSet,
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    require(tables, TriangleKind::O, max_n)?;
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let rising = rising_factorial(n as u64 + 1, n as u64);
        let sum: BigNat = row_of(tables, TriangleKind::O, n).iter().sum();
        checks.push(check(
            format!("rowsum/n={n:02}"),
            &[("n", n)],
            CheckValue::Scalar(rising.clone()),
            CheckValue::Scalar(sum),
        ));
        checks.push(check(
            format!("tree-count-forms/n={n:02}"),
            &[("n", n)],
            CheckValue::Scalar(factorial(n as u64 + 1) * catalan(n as u64)),
            CheckValue::Scalar(rising),
        ));
    }
    Ok(VerificationReport::finish(Suite::RowSum, checks, started))
}

/// `o`, `z` and `f` rows against exhaustive censuses. `z` is checked in both
/// generator modes, and the `f` diagonal is reported with the value the
/// general product formula gives there.
pub fn verify_against_oracles(
    tables: &TriangleSet,
    oracle: &Oracle,
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    require_cap(oracle, max_n)?;
    for kind in [TriangleKind::O, TriangleKind::Z, TriangleKind::F] {
        require(tables, kind, max_n)?;
    }
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let p = [("n", n)];
        let o = oracle.tabulate_o(n)?;
        checks.push(check(
            format!("o-row/n={n:02}"),
            &p,
            CheckValue::Row(o.row(n + 1)),
            CheckValue::Row(row_of(tables, TriangleKind::O, n)),
        ));

        let z_filter = oracle.tabulate_z(n, ZMode::Filter)?;
        let z_built = oracle.tabulate_z(n, ZMode::Construct)?;
        checks.push(check(
            format!("z-row/n={n:02}"),
            &p,
            CheckValue::Row(z_filter.row(n + 1)),
            CheckValue::Row(row_of(tables, TriangleKind::Z, n)),
        ));
        checks.push(check(
            format!("z-modes/n={n:02}"),
            &p,
            CheckValue::Row(z_filter.row(n + 1)),
            CheckValue::Row(z_built.row(n + 1)),
        ));
        let decreasing = oracle.tabulate_decreasing(n)?;
        checks.push(check(
            format!("z-diagonal/n={n:02}"),
            &p,
            CheckValue::Scalar(double_factorial_odd(n as u64)),
            CheckValue::Scalar(entry(tables, TriangleKind::Z, n, n)),
        ));
        checks.push(check(
            format!("decreasing/n={n:02}"),
            &p,
            CheckValue::Scalar(decreasing.total.clone()),
            CheckValue::Scalar(double_factorial_odd(n as u64)),
        ));

        let f = oracle.tabulate_f(n)?;
        checks.push(check(
            format!("f-row/n={n:02}"),
            &p,
            CheckValue::Row(f.row(n + 1)),
            CheckValue::Row(row_of(tables, TriangleKind::F, n)),
        ));
        let mut diag = check(
            format!("f-diagonal/n={n:02}"),
            &[("n", n), ("k", n)],
            CheckValue::Scalar(f.count(n)),
            CheckValue::Scalar(entry(tables, TriangleKind::F, n, n)),
        );
        diag.note = Some(if n == 0 {
            "f(0,0) = 1 is the empty forest".to_string()
        } else {
            format!(
                "adopted f({n},{n}) = 1 from enumeration; the general product formula read literally gives {}",
                f_count_literal(n as u64, n as u64)
            )
        });
        checks.push(diag);
    }
    Ok(VerificationReport::finish(Suite::Oracle, checks, started))
}

/// `z(n, .)` against `r(n + 1, .)` for `n <= max_n`, and the `r` rows against
/// the improper-edge census of all rooted labeled trees for every row the
/// oracle cap allows.
pub fn verify_shor_link(
    tables: &TriangleSet,
    oracle: &Oracle,
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    require(tables, TriangleKind::Z, max_n)?;
    require(tables, TriangleKind::R, max_n + 1)?;
    let mut checks = Vec::new();
    for n in 0..=max_n {
        checks.push(check(
            format!("z-vs-r/n={n:02}"),
            &[("n", n)],
            CheckValue::Row(row_of(tables, TriangleKind::R, n + 1)),
            CheckValue::Row(row_of(tables, TriangleKind::Z, n)),
        ));
    }
    for n in 1..=(max_n + 1).min(oracle.cap()) {
        let census = oracle.tabulate_rooted(n)?;
        checks.push(check(
            format!("r-census/n={n:02}"),
            &[("n", n)],
            CheckValue::Row(census.row(n)),
            CheckValue::Row(row_of(tables, TriangleKind::R, n)),
        ));
        checks.push(check(
            format!("rooted-total/n={n:02}"),
            &[("n", n)],
            CheckValue::Scalar(BigNat::from(n).pow(n as u32 - 1)),
            CheckValue::Scalar(census.total),
        ));
    }
    Ok(VerificationReport::finish(Suite::Shor, checks, started))
}

/// Coefficients of `R_n` against row `n` of `r`, and `R_n` against the value
/// the improper-edge recurrence predicts from `R_{n-1}`.
pub fn verify_ramanujan(
    tables: &TriangleSet,
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    require(tables, TriangleKind::R, max_n.max(1))?;
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let poly = tables
            .ramanujan(n)
            .map(|p| p.coefficients().to_vec())
            .unwrap_or_default();
        let r_row: Vec<BigInt> = row_of(tables, TriangleKind::R, n)
            .into_iter()
            .map(BigInt::from)
            .collect();
        checks.push(check(
            format!("poly-vs-r/n={n:02}"),
            &[("n", n)],
            CheckValue::Signed(trim(r_row)),
            CheckValue::Signed(poly.clone()),
        ));
        if n >= 2 {
            let prev = tables
                .ramanujan(n - 1)
                .map(|p| p.coefficients().to_vec())
                .unwrap_or_default();
            let at = |i: usize| prev.get(i).cloned().unwrap_or_default();
            // r(n,k) = (n-1) r(n-1,k) + (n+k-2) r(n-1,k-1)
            let predicted: Vec<BigInt> = (0..n)
                .map(|k| {
                    let mut c = at(k) * BigInt::from(n - 1);
                    if k > 0 {
                        c += at(k - 1) * BigInt::from(n + k - 2);
                    }
                    c
                })
                .collect();
            checks.push(check(
                format!("poly-recurrence/n={n:02}"),
                &[("n", n)],
                CheckValue::Signed(trim(predicted)),
                CheckValue::Signed(poly),
            ));
        }
    }
    Ok(VerificationReport::finish(
        Suite::Ramanujan,
        checks,
        started,
    ))
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Groups every tree on `[0, n]` by `(k, m)`, where `k` is the MD edge count
/// and `m + 1` the vertex count of its decreasing core with increasing
/// leaves, and checks each group against
/// `binom(n+1, m+1) z(m, k) p(n-k, m-k)`. Also checks that splitting and
/// grafting are mutually inverse on every tree.
pub fn verify_decomposition(
    tables: &TriangleSet,
    oracle: &Oracle,
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    require_cap(oracle, max_n)?;
    require(tables, TriangleKind::Z, max_n)?;
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let mut groups: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let mut total = 0u64;
        let mut round_trips = 0u64;
        for t in oracle.ordered_trees(n)? {
            total += 1;
            let (z, y) = t.split_unchecked();
            let k = t.md_edge_count();
            let m = z.len() - 1;
            *groups.entry((k, m)).or_insert(0) += 1;
            if let Ok(back) = OrderedTree::graft(&z, &y) {
                if back == t && back.split_unchecked() == (z, y) {
                    round_trips += 1;
                }
            }
        }
        checks.push(check(
            format!("round-trip/n={n:02}"),
            &[("n", n)],
            CheckValue::Scalar(BigNat::from(total)),
            CheckValue::Scalar(BigNat::from(round_trips)),
        ));
        for k in 0..=n {
            for m in k..=n {
                let term = binomial(n as u64 + 1, m as i64 + 1)
                    * entry(tables, TriangleKind::Z, m, k)
                    * prescribed_root_forest_count((n - k) as u64, (m - k) as u64);
                let size = groups.get(&(k, m)).copied().unwrap_or(0);
                checks.push(check(
                    format!("group/n={n:02}/k={k:02}/m={m:02}"),
                    &[("n", n), ("k", k), ("m", m)],
                    CheckValue::Scalar(term),
                    CheckValue::Scalar(BigNat::from(size)),
                ));
            }
        }
    }
    Ok(VerificationReport::finish(
        Suite::Decomposition,
        checks,
        started,
    ))
}

/// Runs one suite.
pub fn run_suite(
    suite: Suite,
    tables: &TriangleSet,
    oracle: &Oracle,
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    match suite {
        Suite::RowSum => verify_row_sums(tables, max_n),
        Suite::Oracle => verify_against_oracles(tables, oracle, max_n),
        Suite::Shor => verify_shor_link(tables, oracle, max_n),
        Suite::Ramanujan => verify_ramanujan(tables, max_n),
        Suite::Decomposition => verify_decomposition(tables, oracle, max_n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(r: &'a VerificationReport, id: &str) -> &'a Check {
        r.checks
            .iter()
            .find(|c| c.id == id)
            .unwrap_or_else(|| panic!("no check {id}"))
    }

    #[test]
    fn row_sums() {
        let t = TriangleSet::compute(12);
        let r = verify_row_sums(&t, 3).unwrap();
        assert!(r.all_passed);
        assert_eq!(
            find(&r, "rowsum/n=03").actual,
            CheckValue::Scalar(BigNat::from(120u8))
        );
        assert!(verify_row_sums(&t, 0).unwrap().all_passed);
        assert!(verify_row_sums(&t, 12).unwrap().all_passed);
        assert!(verify_row_sums(&t, 13).is_err());
    }

    #[test]
    fn oracle_suite_small() {
        let t = TriangleSet::compute(3);
        let r = verify_against_oracles(&t, &Oracle::default(), 3).unwrap();
        assert!(r.all_passed, "{}", r.to_plain());
        let d = find(&r, "f-diagonal/n=03");
        assert_eq!(d.actual, CheckValue::Scalar(BigNat::from(1u8)));
        assert!(d.note.as_deref().unwrap().contains("gives 3"));
        assert!(verify_against_oracles(&t, &Oracle::with_cap(2), 3).is_err());
    }

    #[test]
    fn shor_and_ramanujan() {
        let t = TriangleSet::compute(8);
        let r = verify_shor_link(&t, &Oracle::with_cap(4), 8).unwrap();
        assert!(r.all_passed, "{}", r.to_plain());
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.id.starts_with("r-census"))
                .count(),
            4
        );
        let r = verify_ramanujan(&t, 8).unwrap();
        assert!(r.all_passed, "{}", r.to_plain());
    }

    #[test]
    fn decomposition_groups() {
        let t = TriangleSet::compute(3);
        let r = verify_decomposition(&t, &Oracle::default(), 3).unwrap();
        assert!(r.all_passed, "{}", r.to_plain());
        assert_eq!(
            find(&r, "group/n=02/k=00/m=01").actual,
            CheckValue::Scalar(BigNat::from(3u8))
        );
        assert_eq!(
            find(&r, "group/n=02/k=00/m=02").actual,
            CheckValue::Scalar(BigNat::from(2u8))
        );
        assert_eq!(
            find(&r, "group/n=03/k=03/m=03").actual,
            CheckValue::Scalar(BigNat::from(15u8))
        );
    }

    #[test]
    fn tampering_is_detected() {
        let mut t = TriangleSet::compute(3);
        t.z.set(2, 1, BigNat::from(5u8));
        assert!(
            !verify_shor_link(&t, &Oracle::default(), 3)
                .unwrap()
                .all_passed
        );
        assert!(
            !verify_decomposition(&t, &Oracle::default(), 3)
                .unwrap()
                .all_passed
        );
        assert!(verify_row_sums(&t, 3).unwrap().all_passed);
    }

    #[test]
    fn json_shape() {
        let t = TriangleSet::compute(1);
        let v = verify_row_sums(&t, 1).unwrap().to_json_value();
        assert_eq!(v["suite"], "rowsum");
        assert_eq!(v["all_passed"], true);
        assert!(v["elapsed_ms"].is_u64());
        let c = &v["checks"][0];
        assert_eq!(c["id"], "rowsum/n=00");
        assert_eq!(c["expected"], "1");
        assert_eq!(c["params"]["n"], 0);
        assert!(c.get("note").is_none());
    }

    #[test]
    fn suite_names() {
        assert_eq!("Shor".parse::<Suite>().unwrap(), Suite::Shor);
        assert!("everything".parse::<Suite>().is_err());
    }
}
