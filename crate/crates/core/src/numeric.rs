//! Exact combinatorial primitives over arbitrary-precision naturals.
//!
//! Everything here is a pure function returning a [`BigNat`]; nothing in the
//! counting paths ever touches floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision natural number used for every count in the crate.
pub type BigNat = BigUint;

/// Rising factorial `m (m+1) ... (m+k-1)`. The empty product (`k = 0`) is 1
/// for every `m`, including `m = 0`.
pub fn rising_factorial(m: u64, k: u64) -> BigNat {
    (0..k).fold(BigNat::one(), |acc, i| acc * (m + i))
}

/// `n!`
pub fn factorial(n: u64) -> BigNat {
    rising_factorial(1, n)
}

/// Odd double factorial `(2n-1)(2n-3) ... 3 * 1`, with `(-1)!! = 1` at `n = 0`.
pub fn double_factorial_odd(n: u64) -> BigNat {
    (1..=n).fold(BigNat::one(), |acc, i| acc * (2 * i - 1))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigNat {
    if k < 0 || k as u64 > n {
        return BigNat::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // each partial product is itself a binomial coefficient, so the division is exact
    (0..k).fold(BigNat::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// The `n`-th Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigNat {
    binomial(2 * n, n as i64) / (n + 1)
}

/// Rows `0..=max_n` of Pascal's triangle.
pub fn pascal_rows(max_n: usize) -> Vec<Vec<BigNat>> {
    let mut rows: Vec<Vec<BigNat>> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let row = (0..=n)
            .map(|k| {
                if k == 0 || k == n {
                    BigNat::one()
                } else {
                    &rows[n - 1][k - 1] + &rows[n - 1][k]
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}
