//! Exact arithmetic substrate: arbitrary-precision rationals and Bernoulli numbers.
//!
//! Every coefficient in the crate is a [`Rational`], always stored in lowest
//! terms with a positive denominator, so structural equality is numeric
//! equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` in lowest terms with a positive denominator.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num.into(), den))
}

/// Integer as a rational.
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num/den` for small constants known to be valid.
pub(crate) fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"-20/63"`, `"7"`, `"+3/2"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |message: &str| Error::Parse { input: s.to_string(), position: 0, message: message.to_string() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| err("invalid numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("invalid denominator"))?;
    rat(num, den)
}

/// Returns the value as an integer when the denominator is 1.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

pub fn is_positive_integer(r: &Rational) -> bool {
    r.is_integer() && r.numer().is_positive()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli number `B_k` for even `k`, in the convention `B_2 = 1/6`, which
/// makes `-2k/B_k` the normalizing factor of `E_k`.
///
/// Uses `sum_{j=0}^{k} C(k+1, j) B_j = 0`. Odd `k > 1` is rejected (those
/// numbers vanish and are never needed here); `k = 1` is rejected as well
/// since its sign is convention-dependent.
pub fn bernoulli(k: u32) -> Result<Rational> {
    if k % 2 == 1 {
        return Err(Error::Unsupported(format!("Bernoulli number of odd index {k}")));
    }
    let k = k as usize;
    let mut b: Vec<Rational> = Vec::with_capacity(k + 1);
    b.push(Rational::one());
    for m in 1..=k {
        if m > 1 && m % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                s += Rational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
            }
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    Ok(b.swap_remove(k))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorization as `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Evaluates a polynomial given by ascending coefficients at `x`.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}
