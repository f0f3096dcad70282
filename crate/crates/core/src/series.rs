//! Truncated power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] of precision `P` stores the coefficients of `q^0 .. q^(P-1)`
//! and is known only modulo `q^P`. Binary operations return the smaller of
//! the two precisions and never extend a series with zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Series whose precision is the number of coefficients given.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(int).collect())
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(vec![Rational::zero(); prec])
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(Rational::one(), prec)
    }

    pub fn constant(c: Rational, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `c * q^exp`, truncated at `prec`.
    pub fn monomial(exp: usize, c: Rational, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if exp < prec {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Builds a series from a coefficient function `n -> a(n)`.
    pub fn from_fn(prec: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..prec).map(f).collect())
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` beyond the precision.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// Coefficient of `q^n`.
    ///
    /// # Panics
    /// If `n` is not below the precision.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs[..prec.min(self.precision())].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision());
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `q^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let p = self.precision();
        let mut out = vec![Rational::zero(); p];
        for (n, c) in self.coeffs.iter().enumerate().take(p.saturating_sub(k)) {
            out[n + k] = c.clone();
        }
        Self::new(out)
    }

    /// `f(tz)`: the substitution `q -> q^t`. The precision is unchanged.
    pub fn dilate(&self, t: usize) -> Self {
        assert!(t >= 1, "dilation factor must be positive");
        let p = self.precision();
        let mut out = vec![Rational::zero(); p];
        for (m, c) in self.coeffs.iter().enumerate() {
            let n = m * t;
            if n >= p {
                break;
            }
            out[n] = c.clone();
        }
        Self::new(out)
    }

    /// `f(tz)` at precision `prec`, which may exceed the input precision as
    /// long as `t * P_f >= prec`.
    pub fn dilate_to(&self, t: usize, prec: usize) -> Self {
        assert!(t >= 1, "dilation factor must be positive");
        assert!(self.precision() * t >= prec, "dilating precision {} by {t} cannot reach {prec}", self.precision());
        let mut out = vec![Rational::zero(); prec];
        for (m, c) in self.coeffs.iter().enumerate() {
            let n = m * t;
            if n >= prec {
                break;
            }
            out[n] = c.clone();
        }
        Self::new(out)
    }

    /// `D = q d/dq`: multiplies the coefficient of `q^n` by `n`.
    pub fn qderiv(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if c.is_zero() { Rational::zero() } else { c * int(n) })
                .collect(),
        )
    }

    /// The derivative of the dilated series: coefficient `n * a(n/b)`, which
    /// is `qderiv(dilate(f, b))`.
    pub fn scaled_deriv(&self, b: usize) -> Self {
        assert!(b >= 1, "dilation factor must be positive");
        let p = self.precision();
        let mut out = vec![Rational::zero(); p];
        for (m, c) in self.coeffs.iter().enumerate() {
            let n = m * b;
            if n >= p {
                break;
            }
            if !c.is_zero() {
                out[n] = c * int(n);
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.precision();
        let c0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            Some(_) => return Err(Error::NotInvertible),
            None => return Ok(Self::zero(0)),
        };
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(p);
        out.push(inv0.clone());
        for n in 1..p {
            let mut s = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() && !out[n - k].is_zero() {
                    s += a * &out[n - k];
                }
            }
            out.push(-s * &inv0);
        }
        Ok(Self::new(out))
    }

    /// Integer power; negative exponents go through [`QSeries::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let p = self.precision();
        let mut base = self.clone();
        let mut acc = Self::one(p);
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        if e < 0 {
            acc.inverse()
        } else {
            Ok(acc)
        }
    }

    /// Least common denominator of all coefficients.
    fn common_denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) })
    }

    /// Coefficients scaled to integers by `common_denominator`.
    fn integer_parts(&self, den: &BigInt, prec: usize) -> Vec<BigInt> {
        self.coeffs[..prec].iter().map(|c| c.numer() * (den / c.denom())).collect()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        let (da, db) = (self.common_denominator(), other.common_denominator());
        let a = self.integer_parts(&da, p);
        let b = other.integer_parts(&db, p);
        let mut out = vec![BigInt::zero(); p];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..p - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Self::new(out.into_iter().map(|c| Rational::new(c, den.clone())).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        Self::new(self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| f(a, b)).collect())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.precision())
    }
}

/// Euler's function `prod_{n>=1} (1 - q^n)` via the pentagonal number theorem.
pub fn euler_function(prec: usize) -> QSeries {
    let mut out = vec![Rational::zero(); prec];
    if prec > 0 {
        out[0] = Rational::one();
    }
    for k in 1i64.. {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let g1 = (k * (3 * k - 1) / 2) as usize;
        let g2 = (k * (3 * k + 1) / 2) as usize;
        if g1 >= prec {
            break;
        }
        out[g1] = sign.clone();
        if g2 < prec {
            out[g2] = sign;
        }
    }
    QSeries::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use proptest::prelude::*;

    fn s(v: &[i64]) -> QSeries {
        QSeries::from_integers(v.iter().copied())
    }

    #[test]
    fn add_takes_min_precision() {
        let f = s(&[1, 1, 0]);
        let g = s(&[1, -1]);
        assert_eq!(&f + &g, s(&[2, 0]));
        assert_eq!(&f + &QSeries::zero(3), f);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = s(&[1, -1, 0, 0, 0, 0]);
        let geom = s(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(&one_minus_q * &geom, QSeries::one(6));
        assert_eq!(one_minus_q.inverse().unwrap(), geom);
        assert!(matches!(s(&[0, 1]).inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn rational_products() {
        let f = QSeries::new(vec![frac(1, 2), frac(1, 3), frac(0, 1)]);
        let g = QSeries::new(vec![frac(2, 5), int(1), frac(-1, 7)]);
        let p = &f * &g;
        assert_eq!(p.coeff(0), &frac(1, 5));
        assert_eq!(p.coeff(1), &(frac(1, 2) + frac(2, 15)));
        assert_eq!(p.coeff(2), &(frac(-1, 14) + frac(1, 3)));
    }

    #[test]
    fn dilation_and_derivatives() {
        let f = s(&[0, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(f.dilate(3), s(&[0, 0, 0, 1, 0, 0, 1, 0]));
        assert_eq!(f.dilate(1), f);
        assert_eq!(f.truncate(3).dilate_to(3, 8), f.dilate(3));
        assert_eq!(s(&[0, 0, 0, 1, 0]).qderiv(), s(&[0, 0, 0, 3, 0]));
        assert!(QSeries::one(5).qderiv().is_zero());
        assert!(QSeries::one(5).scaled_deriv(3).is_zero());
        assert_eq!(f.scaled_deriv(2), f.dilate(2).qderiv());
        assert_eq!(f.shift(2), s(&[0, 0, 0, 1, 1, 0, 0, 0]));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = s(&[1, 2, -1, 3, 0, 5]);
        assert_eq!(f.pow(3).unwrap(), &(&f * &f) * &f);
        assert_eq!(f.pow(0).unwrap(), QSeries::one(6));
        assert_eq!(&f.pow(-2).unwrap() * &(&f * &f), QSeries::one(6));
    }

    #[test]
    fn euler_function_matches_product() {
        let p = 40;
        let mut prod = QSeries::one(p);
        for n in 1..p {
            prod = &prod
                * &QSeries::new(
                    (0..p)
                        .map(|i| match i {
                            0 => int(1),
                            i if i == n => int(-1),
                            _ => Rational::zero(),
                        })
                        .collect(),
                );
        }
        assert_eq!(euler_function(p), prod);
    }

    fn series(prec: usize) -> impl Strategy<Value = QSeries> {
        proptest::collection::vec((-20i64..20, 1i64..6), prec)
            .prop_map(|v| QSeries::new(v.into_iter().map(|(n, d)| frac(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_laws(f in series(12), g in series(12), h in series(12)) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f + &g, &g + &f);
        }

        #[test]
        fn leibniz(f in series(15), g in series(15)) {
            prop_assert_eq!((&f * &g).qderiv(), &(&f.qderiv() * &g) + &(&f * &g.qderiv()));
        }

        #[test]
        fn dilation_is_a_homomorphism(f in series(15), g in series(15), t in 1usize..5) {
            prop_assert_eq!((&f * &g).dilate(t), &f.dilate(t) * &g.dilate(t));
            prop_assert_eq!((&f + &g).dilate(t), &f.dilate(t) + &g.dilate(t));
        }

        #[test]
        fn scaled_deriv_is_deriv_of_dilation(f in series(20), b in 1usize..6) {
            prop_assert_eq!(f.scaled_deriv(b), f.dilate(b).qderiv());
        }
    }
}
