//! Dedekind eta products `prod eta(t z)^m` and their q-expansions.

use std::fmt;

use num_traits::Zero;

use crate::arith::{frac, int, Rational};
use crate::error::{Error, Result};
use crate::series::{euler_function, QSeries};

/// Formal product of `eta(t z)^m` factors, stored as `(t, m)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaProduct {
    factors: Vec<(u64, i64)>,
}

impl EtaProduct {
    /// Merges repeated dilations and drops zero exponents.
    pub fn new(factors: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut merged: Vec<(u64, i64)> = Vec::new();
        for (t, m) in factors {
            if t == 0 {
                return Err(Error::Unsupported("eta dilation must be positive".into()));
            }
            match merged.iter_mut().find(|(u, _)| *u == t) {
                Some((_, e)) => *e += m,
                None => merged.push((t, m)),
            }
        }
        merged.retain(|&(_, m)| m != 0);
        merged.sort_unstable();
        Ok(Self { factors: merged })
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// `(sum t*m) / 24`, the exponent of the leading power of `q`.
    pub fn lead_order(&self) -> Rational {
        let s: i64 = self.factors.iter().map(|&(t, m)| t as i64 * m).sum();
        frac(s, 24)
    }

    /// `(sum m) / 2`.
    pub fn weight(&self) -> Rational {
        let s: i64 = self.factors.iter().map(|&(_, m)| m).sum();
        frac(s, 2)
    }

    /// Least common multiple of the dilations.
    pub fn max_dilation(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &(t, _)| num_integer::lcm(acc, t))
    }

    /// q-expansion to precision `prec`.
    pub fn expand(&self, prec: usize) -> Result<QSeries> {
        let lead = self.lead_order();
        if !lead.is_integer() || lead < Rational::zero() {
            return Err(Error::FractionalPower(lead));
        }
        let shift: usize =
            lead.to_integer().try_into().map_err(|_| Error::Unsupported("eta product order too large".into()))?;
        if shift >= prec {
            return Ok(QSeries::zero(prec));
        }
        let inner = prec - shift;
        let euler = euler_function(inner);
        let mut numer = QSeries::one(inner);
        let mut denom = QSeries::one(inner);
        for &(t, m) in &self.factors {
            let part = euler.dilate(t as usize).pow(m.abs())?;
            if m > 0 {
                numer = &numer * &part;
            } else {
                denom = &denom * &part;
            }
        }
        let body = &numer * &denom.inverse()?;
        let mut coeffs = vec![Rational::zero(); prec];
        for (n, c) in body.into_coeffs().into_iter().enumerate() {
            coeffs[n + shift] = c;
        }
        Ok(QSeries::new(coeffs))
    }
}

impl fmt::Display for EtaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("eta[")?;
        for (i, (t, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}^{m}")?;
        }
        f.write_str("]")
    }
}

/// Expands `prod eta(t z)^m` for the given `(t, m)` pairs.
pub fn eta_expand(factors: &[(u64, i64)], prec: usize) -> Result<QSeries> {
    EtaProduct::new(factors.iter().copied())?.expand(prec)
}

/// Ramanujan's `Delta = eta(z)^24`.
pub fn delta(prec: usize) -> QSeries {
    eta_expand(&[(1, 24)], prec).expect("eta(z)^24 has integral order")
}

/// `tau(n)` by the recursion `(1 - n) tau(n) = 24 sum_{m<n} sigma(m) tau(n - m)`.
pub fn tau_by_recursion(n_max: usize) -> Vec<Rational> {
    let mut tau = vec![Rational::zero(); n_max + 1];
    if n_max >= 1 {
        tau[1] = int(1);
    }
    for n in 2..=n_max {
        let mut s = Rational::zero();
        for m in 1..n {
            s += int(crate::catalog::sigma_int(1, m as u64)) * &tau[n - m];
        }
        tau[n] = s * int(24) / int(1 - n as i64);
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct product over `(1 - q^{tn})`, one factor at a time.
    fn naive(factors: &[(u64, i64)], prec: usize) -> QSeries {
        let lead: i64 = factors.iter().map(|&(t, m)| t as i64 * m).sum::<i64>() / 24;
        let mut acc = QSeries::one(prec);
        for &(t, m) in factors {
            let mut n = 1;
            while (t as usize) * n < prec {
                let f = QSeries::one(prec) - QSeries::monomial(t as usize * n, int(1), prec);
                let f = if m > 0 { f } else { f.inverse().unwrap() };
                for _ in 0..m.abs() {
                    acc = &acc * &f;
                }
                n += 1;
            }
        }
        acc.shift(lead as usize)
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(6);
        let expect = [0, 1, -24, 252, -1472, 4830];
        assert_eq!(d, QSeries::from_integers(expect));
        assert_eq!(naive(&[(1, 24)], 6), d);
    }

    #[test]
    fn level_five_product_starts_at_q() {
        let p = EtaProduct::new([(1, 4), (5, 4)]).unwrap();
        assert_eq!(p.lead_order(), int(1));
        assert_eq!(p.weight(), int(4));
        let f = p.expand(12).unwrap();
        assert_eq!(f.valuation(), Some(1));
        assert_eq!(f.coeff(1), &int(1));
        assert_eq!(f.coeff(2), &int(-4));
        assert_eq!(f, naive(&[(1, 4), (5, 4)], 12));
    }

    #[test]
    fn eta_quotient_with_negative_exponent() {
        let p = EtaProduct::new([(4, 32), (1, -8)]).unwrap();
        assert_eq!(p.lead_order(), int(5));
        let f = p.expand(30).unwrap();
        assert_eq!(f.valuation(), Some(5));
        assert_eq!(f.coeff(5), &int(1));
        assert_eq!(f, naive(&[(4, 32), (1, -8)], 30));
    }

    #[test]
    fn fractional_order_is_rejected() {
        let err = eta_expand(&[(1, 2), (2, 8), (5, 8)], 10).unwrap_err();
        assert!(matches!(err, Error::FractionalPower(_)));
        assert!(eta_expand(&[(1, 1)], 10).is_err());
    }

    #[test]
    fn factors_merge() {
        let p = EtaProduct::new([(2, 3), (1, 1), (2, -3)]).unwrap();
        assert_eq!(p.factors(), &[(1, 1)]);
        assert_eq!(p.to_string(), "eta[1^1]");
    }

    #[test]
    fn tau_recursion_matches_eta24() {
        let d = delta(51);
        let tau = tau_by_recursion(50);
        for n in 1..=50 {
            assert_eq!(&tau[n], d.coeff(n), "n={n}");
        }
    }
}
