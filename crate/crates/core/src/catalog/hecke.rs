//! Extending a truncated eigenform q-expansion by Hecke multiplicativity.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::arith::{factorize, Rational};
use crate::error::{Error, Result};

/// Coefficients `a(0) .. a(prec-1)`, `None` where an unlisted prime is needed.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSeries {
    pub coeffs: Vec<Option<Rational>>,
}

impl PartialSeries {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// First index with no certified coefficient.
    pub fn first_unavailable(&self) -> Option<usize> {
        self.coeffs.iter().position(Option::is_none)
    }

    pub fn unavailable(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter_map(|(n, c)| c.is_none().then_some(n)).collect()
    }
}

/// `a(p^e)` from `a(p)` by `a(p^{r+1}) = a(p) a(p^r) - [p not| N] p^{k-1} a(p^{r-1})`.
fn prime_power(ap: &Rational, p: u64, e: u32, k: u32, level: u64) -> Rational {
    let chi: Rational = if level.is_multiple_of(p) {
        Rational::zero()
    } else {
        Rational::from_integer(Pow::pow(BigInt::from(p), k - 1))
    };
    let (mut prev, mut cur) = (Rational::one(), ap.clone());
    for _ in 1..e {
        let next = ap * &cur - &chi * &prev;
        prev = cur;
        cur = next;
    }
    if e == 0 {
        Rational::one()
    } else {
        cur
    }
}

/// `a(n)` predicted from the prime coefficients of `initial` alone, or `None`
/// when some prime factor of `n` lies beyond the listed data.
pub fn hecke_predict(initial: &[Rational], k: u32, level: u64, n: u64) -> Option<Rational> {
    if n == 0 {
        return initial.first().cloned();
    }
    let mut acc = Rational::one();
    for (p, e) in factorize(n) {
        let ap = initial.get(p as usize)?;
        acc *= prime_power(ap, p, e, k, level);
    }
    Some(acc)
}

/// Listed coefficients verbatim below `initial.len()`, Hecke predictions
/// beyond. `initial` starts at `q^0` and must have `a(1) = 1`.
pub fn hecke_extend(initial: &[Rational], k: u32, level: u64, prec: usize) -> Result<PartialSeries> {
    if initial.get(1) != Some(&Rational::one()) {
        return Err(Error::Precondition("eigenform must be normalized with a(1) = 1".into()));
    }
    let coeffs = (0..prec)
        .map(|n| match initial.get(n) {
            Some(c) => Some(c.clone()),
            None => hecke_predict(initial, k, level, n as u64),
        })
        .collect();
    Ok(PartialSeries { coeffs })
}

/// Listed indices whose value disagrees with the prediction from primes.
pub fn hecke_inconsistencies(initial: &[Rational], k: u32, level: u64) -> Vec<usize> {
    (1..initial.len())
        .filter(|&n| hecke_predict(initial, k, level, n as u64).is_some_and(|v| v != initial[n]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::eta::delta;

    const D10_4: [i64; 26] = [
        0, 1, 0, 228, 0, -666, 0, -6328, 0, 32301, 0, -30420, 0, -32338, 0, -151848, 0, 590994, 0, 34676, 0, -1442784,
        0, 1048536, 0, -1509569,
    ];

    fn listed() -> Vec<Rational> {
        D10_4.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn predicts_listed_level_four_values() {
        let a = listed();
        assert_eq!(hecke_predict(&a, 10, 4, 9), Some(int(32301)));
        assert_eq!(hecke_predict(&a, 10, 4, 15), Some(int(-151848)));
        assert_eq!(hecke_predict(&a, 10, 4, 21), Some(int(-1442784)));
        assert_eq!(hecke_predict(&a, 10, 4, 25), Some(int(-1509569)));
        assert_eq!(hecke_predict(&a, 10, 4, 1), Some(int(1)));
        assert!(hecke_inconsistencies(&a, 10, 4).is_empty());
    }

    #[test]
    fn unlisted_primes_are_unavailable() {
        let ext = hecke_extend(&listed(), 10, 4, 100).unwrap();
        assert_eq!(ext.first_unavailable(), Some(29));
        assert!(ext.coeffs[58].is_none());
        assert!(ext.coeffs[27].is_some());
        assert_eq!(ext.coeffs[9], Some(int(32301)));
        assert!(hecke_extend(&[int(0), int(2)], 4, 1, 5).is_err());
    }

    #[test]
    fn reproduces_tau_from_its_primes() {
        let d = delta(200);
        let init: Vec<Rational> = d.coeffs()[..26].to_vec();
        let ext = hecke_extend(&init, 12, 1, 200).unwrap();
        for (n, c) in ext.coeffs.iter().enumerate() {
            if let Some(c) = c {
                assert_eq!(c, d.coeff(n), "n={n}");
            }
        }
    }
}
