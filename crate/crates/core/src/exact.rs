//! Exact arbitrary-precision evaluation of the super Catalan closed
//! formulas and the two alternating-sum identities.
//!
//! Everything here is a pure function of its arguments. Binomial
//! coefficients are computed multiplicatively (no factorial tables), so
//! the census DP can drive `m` into the thousands without holding huge
//! intermediate factorials.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision nonnegative integer; carries every count and
/// formula value in the crate.
pub type BigNat = num_bigint::BigUint;

/// Signed arbitrary-precision integer for alternating partial sums.
pub type SignedBig = num_bigint::BigInt;

/// Division that fails unless the remainder is exactly zero.
pub fn exact_div(num: &BigNat, den: &BigNat) -> Result<BigNat> {
    if den.is_zero() {
        return Err(Error::DivisionByZero(num.clone()));
    }
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::ExactDivision {
            num: num.clone(),
            den: den.clone(),
            rem,
        });
    }
    Ok(quot)
}

/// Binomial coefficient `C(n, k)`.
///
/// `k` may be any integer; out-of-range values yield 0 so that the
/// identity sums below can run over a safe symmetric window of `k`.
pub fn binomial(n: u64, k: i64) -> BigNat {
    if k < 0 || k as u64 > n {
        return BigNat::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigNat::one();
    for i in 1..=k {
        // acc stays integral after every step: it equals C(n-k+i, i).
        acc = acc * BigNat::from(n - k + i) / BigNat::from(i);
    }
    acc
}

/// Catalan number `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Result<BigNat> {
    exact_div(&binomial(2 * n, n as i64), &BigNat::from(n + 1))
}

/// Super Catalan number `S(m, n) = (2m)!(2n)! / (m! n! (m+n)!)`, computed
/// as `C(2m, m) C(2n, n) / C(m+n, m)` with the division checked exact.
///
/// The zero-remainder check is load-bearing: integrality of `S(m, n)` is
/// the claim everything else builds on.
pub fn super_catalan_direct(m: u64, n: u64) -> Result<BigNat> {
    let num = binomial(2 * m, m as i64) * binomial(2 * n, n as i64);
    exact_div(&num, &binomial(m + n, m as i64))
}

/// `S(m, n)` by the Von Szily alternating sum
/// `sum_k (-1)^k C(2n, n-k) C(2m, m+k)`.
pub fn super_catalan_vonszily(m: u64, n: u64) -> Result<BigNat> {
    let window = m.min(n) as i64;
    let mut sum = SignedBig::zero();
    for k in -window..=window {
        let term = SignedBig::from(binomial(2 * n, n as i64 - k) * binomial(2 * m, m as i64 + k));
        if k.rem_euclid(2) == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    signed_to_nat(sum)
}

/// `S(m, m+s)` by the shifted alternating sum
/// `sum_k (-1)^k C(2m, m-k) C(2s, s+2k)`.
pub fn super_catalan_shifted(m: u64, s: u64) -> Result<BigNat> {
    let window = m.min(s) as i64;
    let mut sum = SignedBig::zero();
    for k in -window..=window {
        let term =
            SignedBig::from(binomial(2 * m, m as i64 - k) * binomial(2 * s, s as i64 + 2 * k));
        if k.rem_euclid(2) == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    signed_to_nat(sum)
}

/// Closed forms for `S(m, m+s)` at small shifts:
/// `C(2m,m)`, `2 C(2m,m)`, `2(2m+3) C_m`, `4(2m+5) C_m` for `s = 0..=3`.
pub fn closed_form(m: u64, s: u64) -> Result<BigNat> {
    match s {
        0 => Ok(binomial(2 * m, m as i64)),
        1 => Ok(binomial(2 * m, m as i64) * BigNat::from(2u32)),
        2 => Ok(catalan(m)? * BigNat::from(2 * (2 * m + 3))),
        3 => Ok(catalan(m)? * BigNat::from(4 * (2 * m + 5))),
        _ => Err(Error::ShiftOutOfRange { s, max: 3 }),
    }
}

fn signed_to_nat(sum: SignedBig) -> Result<BigNat> {
    if sum.is_negative() {
        return Err(Error::NegativeSum(sum));
    }
    // Safe after the sign check.
    Ok(sum.to_biguint().expect("nonnegative"))
}
