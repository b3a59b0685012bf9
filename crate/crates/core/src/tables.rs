//! The four count triangles `o`, `z`, `f`, `r` and the Ramanujan polynomials.
//!
//! * `z(n, k)`: ordered trees on `[0, n]` made of a decreasing tree with `k`
//!   edges plus `n - k` increasing leaves.
//! * `f(n, k)`: forests on `[1, n]` of `k` ordered trees with unordered roots.
//! * `o(n, k)`: ordered trees on `[0, n]` whose maximal decreasing subtree has
//!   `k` edges.
//! * `r(n, k)`: rooted labeled trees on `[1, n]` with `k` improper edges.
//!
//! All triangles are filled row-major so no recursion depth grows with `n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{double_factorial_odd, pascal_rows, rising_factorial, BigNat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("column k={k} is out of range for row n={n}")]
    ColumnOutOfRange { n: u64, k: u64 },
    #[error("triangle {0} has no row 0; rows start at n=1")]
    NoZeroRow(TriangleKind),
    #[error("unknown triangle kind {0:?} (expected one of o, z, f, r)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    O,
    Z,
    F,
    R,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 4] = [
        TriangleKind::O,
        TriangleKind::Z,
        TriangleKind::F,
        TriangleKind::R,
    ];

    /// First valid row index. `r(0, .)` is undefined, so R starts at 1.
    pub fn first_row(self) -> usize {
        match self {
            TriangleKind::R => 1,
            _ => 0,
        }
    }

    /// Number of columns in row `n`: `n + 1`, or `n` for R.
    pub fn row_len(self, n: usize) -> usize {
        match self {
            TriangleKind::R => n,
            _ => n + 1,
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TriangleKind::O => "o",
            TriangleKind::Z => "z",
            TriangleKind::F => "f",
            TriangleKind::R => "r",
        };
        f.write_str(s)
    }
}

impl FromStr for TriangleKind {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "o" => Ok(TriangleKind::O),
            "z" => Ok(TriangleKind::Z),
            "f" => Ok(TriangleKind::F),
            "r" => Ok(TriangleKind::R),
            _ => Err(CountError::UnknownKind(s.to_string())),
        }
    }
}

/// A lower-triangular table of exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTriangle {
    kind: TriangleKind,
    max_n: usize,
    rows: Vec<Vec<BigNat>>,
}

impl CountTriangle {
    fn from_rows(kind: TriangleKind, max_n: usize, rows: Vec<Vec<BigNat>>) -> Self {
        debug_assert_eq!(rows.len(), max_n + 1 - kind.first_row());
        CountTriangle { kind, max_n, rows }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn row(&self, n: usize) -> Option<&[BigNat]> {
        n.checked_sub(self.kind.first_row())
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigNat> {
        self.row(n).and_then(|r| r.get(k))
    }

    /// Overwrites one entry and returns the previous value. Used by test
    /// harnesses that check the verification suites notice a bad entry.
    pub fn set(&mut self, n: usize, k: usize, value: BigNat) -> Option<BigNat> {
        let i = n.checked_sub(self.kind.first_row())?;
        let slot = self.rows.get_mut(i)?.get_mut(k)?;
        Some(std::mem::replace(slot, value))
    }

    /// `(n, row)` pairs in increasing `n`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigNat])> {
        let first = self.kind.first_row();
        self.rows
            .iter()
            .enumerate()
            .map(move |(i, r)| (i + first, r.as_slice()))
    }

    /// `(n, k, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigNat)> {
        self.rows()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }
}

/// Dense polynomial with arbitrary-precision integer coefficients; index `i`
/// holds the coefficient of `x^i`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.sign() == Sign::Minus {
                    " - "
                } else {
                    " + "
                })?;
            } else if c.sign() == Sign::Minus {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.magnitude();
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}x")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rows `0..=max_n` of `z`, by
/// `z(n,k) = n z(n-1,k) + (n+k-1) z(n-1,k-1)` for `0 <= k < n` and
/// `z(n,n) = (2n-1)!!`.
pub fn z_rows(max_n: usize) -> Vec<Vec<BigNat>> {
    let mut rows: Vec<Vec<BigNat>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![BigNat::one()]);
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..n {
            let mut v = &prev[k] * n;
            if k > 0 {
                v += &prev[k - 1] * (n + k - 1);
            }
            row.push(v);
        }
        row.push(double_factorial_odd(n as u64));
        rows.push(row);
    }
    rows
}

/// `z(n, k)`; zero for `k < 0` or `k > n`.
pub fn z_count(n: u64, k: i64) -> BigNat {
    if k < 0 || k as u64 > n {
        return BigNat::zero();
    }
    if k as u64 == n {
        return double_factorial_odd(n);
    }
    z_rows(n as usize)
        .swap_remove(n as usize)
        .swap_remove(k as usize)
}

/// Forests in `F(n', k')` whose root set is a fixed `k'`-subset, i.e.
/// `f(n', k') / binom(n', k')` evaluated without division:
/// `k' (n'+1)(n'+2)...(2n'-k'-1)` for `0 < k' < n'`, 1 for `k' = n'`, and 0
/// when `k' = 0 < n'` or `k' > n'`.
pub fn prescribed_root_forest_count(n_prime: u64, k_prime: u64) -> BigNat {
    if k_prime > n_prime || (k_prime == 0 && n_prime > 0) {
        BigNat::zero()
    } else if k_prime == n_prime {
        BigNat::one()
    } else {
        rising_factorial(n_prime + 1, n_prime - k_prime - 1) * k_prime
    }
}

/// `f(n, k)`. The diagonal is `f(n, n) = 1` (the single forest of isolated
/// roots); reading the general product at `k = n` would give `n` instead.
pub fn f_count(n: u64, k: u64) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    crate::numeric::binomial(n, k as i64) * prescribed_root_forest_count(n, k)
}

/// The value the general product formula for `f` gives when read literally at
/// `(n, k)`, with no boundary special-casing beyond the empty product. Kept for
/// reporting the diagonal discrepancy.
pub fn f_count_literal(n: u64, k: u64) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let upper = (2 * n).checked_sub(k + 1);
    let len = upper.map_or(0, |u| (u + 1).saturating_sub(n + 1));
    crate::numeric::binomial(n, k as i64) * k * rising_factorial(n + 1, len)
}

fn prescribed_rows(max_n: usize) -> Vec<Vec<BigNat>> {
    (0..=max_n)
        .map(|n| {
            // p(n, k) = k * (n+1)^{(n-k-1)}; the rising product grows as k falls
            let mut row = vec![BigNat::zero(); n + 1];
            row[n] = BigNat::one();
            let mut product = BigNat::one();
            for k in (1..n).rev() {
                if k + 1 < n {
                    product *= 2 * n - k - 1;
                }
                row[k] = &product * k;
            }
            row
        })
        .collect()
}

fn f_rows(max_n: usize) -> Vec<Vec<BigNat>> {
    let pascal = pascal_rows(max_n);
    prescribed_rows(max_n)
        .into_iter()
        .enumerate()
        .map(|(n, p)| {
            p.into_iter()
                .enumerate()
                .map(|(k, v)| v * &pascal[n][k])
                .collect()
        })
        .collect()
}

fn o_rows(max_n: usize) -> Vec<Vec<BigNat>> {
    let z = z_rows(max_n);
    let p = prescribed_rows(max_n);
    let pascal = pascal_rows(max_n + 1);
    (0..=max_n)
        .map(|n| {
            let mut row: Vec<BigNat> = (0..n)
                .map(|k| {
                    // the m = k term carries p(n-k, 0) = 0
                    (k + 1..=n)
                        .map(|m| &pascal[n + 1][m + 1] * &z[m][k] * &p[n - k][m - k])
                        .sum()
                })
                .collect();
            row.push(double_factorial_odd(n as u64));
            row
        })
        .collect()
}

/// `o(n, k)` as a sum over the size `m + 1` of the subtree formed by the
/// maximal decreasing subtree and its increasing leaves:
/// `sum_{k <= m <= n} binom(n+1, m+1) z(m, k) p(n-k, m-k)` for `k < n`, and
/// `(2n-1)!!` for `k = n`.
pub fn o_count(n: u64, k: u64) -> Result<BigNat, CountError> {
    if k > n {
        return Err(CountError::ColumnOutOfRange { n, k });
    }
    if k == n {
        return Ok(double_factorial_odd(n));
    }
    let z = z_rows(n as usize);
    let sum = (k..=n)
        .map(|m| {
            crate::numeric::binomial(n + 1, (m + 1) as i64)
                * &z[m as usize][k as usize]
                * prescribed_root_forest_count(n - k, m - k)
        })
        .sum();
    Ok(sum)
}

/// Rows `1..=max_n` of `r`, by `r(n,k) = (n-1) r(n-1,k) + (n+k-2) r(n-1,k-1)`
/// from `r(1, 0) = 1`.
fn r_rows(max_n: usize) -> Vec<Vec<BigNat>> {
    let mut rows: Vec<Vec<BigNat>> = Vec::with_capacity(max_n);
    if max_n == 0 {
        return rows;
    }
    rows.push(vec![BigNat::one()]);
    for n in 2..=max_n {
        let prev = &rows[n - 2];
        let row = (0..n)
            .map(|k| {
                let mut v = prev.get(k).map_or_else(BigNat::zero, |x| x * (n - 1));
                if k > 0 {
                    v += &prev[k - 1] * (n + k - 2);
                }
                v
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `r(n, k)`; zero for `k >= n`. Rejects `n = 0`.
pub fn r_count(n: u64, k: u64) -> Result<BigNat, CountError> {
    if n == 0 {
        return Err(CountError::NoZeroRow(TriangleKind::R));
    }
    if k >= n {
        return Ok(BigNat::zero());
    }
    Ok(r_rows(n as usize)
        .swap_remove(n as usize - 1)
        .swap_remove(k as usize))
}

/// `R_n(x)` from `R_1 = 1` and `R_{m+1} = m (1 + x) R_m + x^2 R_m'`.
pub fn ramanujan_poly(n: u64) -> Result<IntPolynomial, CountError> {
    ramanujan_polys(n as usize).map(|mut v| v.pop().expect("n >= 1"))
}

/// `R_1, ..., R_max_n`.
pub fn ramanujan_polys(max_n: usize) -> Result<Vec<IntPolynomial>, CountError> {
    if max_n == 0 {
        return Err(CountError::NoZeroRow(TriangleKind::R));
    }
    let mut polys = vec![IntPolynomial::new(vec![BigInt::one()])];
    for m in 1..max_n {
        let cur = polys.last().expect("nonempty");
        let d = cur.derivative();
        let m_big = BigInt::from(m);
        let len = cur.coefficients().len() + 1;
        let next = (0..len)
            .map(|j| {
                // m (1 + x) R_m contributes m c_j + m c_{j-1}; x^2 R_m' contributes d_{j-2}
                let mut c = &m_big * cur.coefficient(j);
                if j >= 1 {
                    c += &m_big * cur.coefficient(j - 1);
                }
                if j >= 2 {
                    c += d.coefficient(j - 2);
                }
                c
            })
            .collect();
        polys.push(IntPolynomial::new(next));
    }
    Ok(polys)
}

/// Materializes rows up to `max_n` of the given triangle. The R triangle has
/// no row 0, so `(R, 0)` is rejected.
pub fn build_triangle(kind: TriangleKind, max_n: usize) -> Result<CountTriangle, CountError> {
    let rows = match kind {
        TriangleKind::Z => z_rows(max_n),
        TriangleKind::F => f_rows(max_n),
        TriangleKind::O => o_rows(max_n),
        TriangleKind::R => {
            if max_n == 0 {
                return Err(CountError::NoZeroRow(kind));
            }
            r_rows(max_n)
        }
    };
    Ok(CountTriangle::from_rows(kind, max_n, rows))
}

/// One triangle of each kind, sized for the verification suites at `max_n`.
/// R carries one extra row because `z(n, k)` pairs with `r(n + 1, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSet {
    pub o: CountTriangle,
    pub z: CountTriangle,
    pub f: CountTriangle,
    pub r: CountTriangle,
    pub ramanujan: Vec<IntPolynomial>,
}

impl TriangleSet {
    pub fn compute(max_n: usize) -> Self {
        let build = |kind, n| build_triangle(kind, n).expect("row ranges are valid");
        TriangleSet {
            o: build(TriangleKind::O, max_n),
            z: build(TriangleKind::Z, max_n),
            f: build(TriangleKind::F, max_n),
            r: build(TriangleKind::R, max_n + 1),
            ramanujan: ramanujan_polys(max_n + 1).expect("max_n + 1 >= 1"),
        }
    }

    pub fn get(&self, kind: TriangleKind) -> &CountTriangle {
        match kind {
            TriangleKind::O => &self.o,
            TriangleKind::Z => &self.z,
            TriangleKind::F => &self.f,
            TriangleKind::R => &self.r,
        }
    }

    pub fn get_mut(&mut self, kind: TriangleKind) -> &mut CountTriangle {
        match kind {
            TriangleKind::O => &mut self.o,
            TriangleKind::Z => &mut self.z,
            TriangleKind::F => &mut self.f,
            TriangleKind::R => &mut self.r,
        }
    }

    /// `R_n`, for `n >= 1`.
    pub fn ramanujan(&self, n: usize) -> Option<&IntPolynomial> {
        n.checked_sub(1).and_then(|i| self.ramanujan.get(i))
    }
}
