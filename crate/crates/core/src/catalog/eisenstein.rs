//! Divisor functions and the Eisenstein series `E_k`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::arith::{bernoulli, divisors, int, Rational};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// `sigma_r(n)` for a positive integer `n`; 0 for `n = 0`.
pub fn sigma_int(r: u32, n: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    divisors(n).into_iter().map(|d| Pow::pow(BigInt::from(d), r)).sum()
}

/// `sigma_r(x)`, extended by zero to arguments that are not positive integers.
pub fn sigma(r: u32, x: &Rational) -> BigInt {
    if !x.is_integer() || *x <= Rational::zero() {
        return BigInt::zero();
    }
    match u64::try_from(x.to_integer()) {
        Ok(n) => sigma_int(r, n),
        Err(_) => panic!("sigma argument {x} exceeds u64"),
    }
}

/// `sigma_r(n / d)` for integers, zero unless `d | n`.
pub fn sigma_frac(r: u32, n: u64, d: u64) -> BigInt {
    if d == 0 || !n.is_multiple_of(d) {
        BigInt::zero()
    } else {
        sigma_int(r, n / d)
    }
}

/// Sieve of `sigma_r(n)` for `n < len`.
pub fn sigma_table(r: u32, len: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); len];
    for d in 1..len {
        let p: BigInt = Pow::pow(BigInt::from(d), r);
        for m in (d..len).step_by(d) {
            t[m] += &p;
        }
    }
    t
}

/// `-2k / B_k`, the coefficient multiplying `sigma_{k-1}` in `E_k`.
pub fn eisenstein_normalizer(k: u32) -> Result<Rational> {
    Ok(int(-2 * k as i64) / bernoulli(k)?)
}

/// `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n` for even `k >= 4`.
pub fn eisenstein(k: u32, prec: usize) -> Result<QSeries> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Unsupported(format!("Eisenstein series of weight {k} (need even k >= 4)")));
    }
    Ok(eisenstein_like(k, eisenstein_normalizer(k)?, prec))
}

/// The quasimodular `E_2 = 1 - 24 sum sigma(n) q^n`.
pub fn eisenstein2(prec: usize) -> QSeries {
    eisenstein_like(2, int(-24), prec)
}

fn eisenstein_like(k: u32, c: Rational, prec: usize) -> QSeries {
    let table = sigma_table(k - 1, prec);
    QSeries::from_fn(prec, |n| if n == 0 { Rational::one() } else { &c * Rational::from_integer(table[n].clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_int(1, 6), BigInt::from(12));
        assert_eq!(sigma(3, &frac(5, 2)), BigInt::zero());
        assert_eq!(sigma(0, &int(1)), BigInt::one());
        assert_eq!(sigma(1, &int(0)), BigInt::zero());
        assert_eq!(sigma(1, &int(-4)), BigInt::zero());
        assert_eq!(sigma_frac(3, 10, 5), BigInt::from(9));
        assert_eq!(sigma_frac(3, 10, 3), BigInt::zero());
        let t = sigma_table(3, 50);
        for n in 1..50u64 {
            assert_eq!(t[n as usize], sigma_int(3, n));
        }
    }

    #[test]
    fn eisenstein_leading_coefficients() {
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(e4, QSeries::from_integers([1, 240, 2160]));
        let e6 = eisenstein(6, 2).unwrap();
        assert_eq!(e6, QSeries::from_integers([1, -504]));
        for k in (4..=14).step_by(2) {
            assert_eq!(eisenstein(k, 5).unwrap().coeff(0), &int(1));
        }
        assert!(eisenstein(2, 5).is_err());
        assert!(eisenstein(5, 5).is_err());
    }

    #[test]
    fn e2_coefficients() {
        let e2 = eisenstein2(3);
        assert_eq!(e2, QSeries::from_integers([1, -24, -72]));
    }

    #[test]
    fn e4_squared_is_e8() {
        let e4 = eisenstein(4, 30).unwrap();
        assert_eq!(&e4 * &e4, eisenstein(8, 30).unwrap());
        let e6 = eisenstein(6, 30).unwrap();
        assert_eq!(&e4 * &e6, eisenstein(10, 30).unwrap());
    }
}
