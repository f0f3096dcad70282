//! Spaces `M_k(Gamma_0(N))`: dimensions, Sturm bounds and materialized bases.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{divisors, frac, int, prime_divisors, Rational};
use crate::catalog::expr::FormRef;
use crate::series::QSeries;

/// `[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)`.
pub fn index(level: u64) -> u64 {
    prime_divisors(level).into_iter().fold(level, |acc, p| acc / p * (p + 1))
}

/// Exponent through which agreement certifies equality in `M_k(Gamma_0(N))`:
/// `floor(k * index / 12) + 1`.
pub fn sturm_bound(k: u32, level: u64) -> usize {
    (k as u64 * index(level) / 12 + 1) as usize
}

fn euler_phi(n: u64) -> u64 {
    prime_divisors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// Number of cusps of `Gamma_0(N)`.
pub fn cusps(level: u64) -> u64 {
    divisors(level).into_iter().map(|d| euler_phi(d.gcd(&(level / d)))).sum()
}

fn elliptic_points(level: u64) -> (u64, u64) {
    let primes = prime_divisors(level);
    let nu2 = if level.is_multiple_of(4) {
        0
    } else {
        primes
            .iter()
            .map(|&p| match p {
                2 => 1,
                p if p % 4 == 1 => 2,
                _ => 0,
            })
            .product()
    };
    let nu3 = if level.is_multiple_of(9) {
        0
    } else {
        primes
            .iter()
            .map(|&p| match p {
                3 => 1,
                p if p % 3 == 1 => 2,
                _ => 0,
            })
            .product()
    };
    (nu2, nu3)
}

/// `dim M_k(Gamma_0(N))` for even `k >= 2`, trivial character.
pub fn dimension(k: u32, level: u64) -> usize {
    assert!(k.is_multiple_of(2) && k >= 2, "dimension formula needs even k >= 2");
    let mu = index(level);
    let c = cusps(level);
    let (nu2, nu3) = elliptic_points(level);
    let g: Rational = int(1) + frac(mu as i64, 12) - frac(nu2 as i64, 4) - frac(nu3 as i64, 3) - frac(c as i64, 2);
    let g = g.to_integer().to_i64().expect("genus fits in i64");
    let (k, c, nu2, nu3) = (k as i64, c as i64, nu2 as i64, nu3 as i64);
    let dim = if k == 2 {
        g + c - 1
    } else {
        let cusp = (k - 1) * (g - 1) + (k / 2 - 1) * c + nu2 * (k / 4) + nu3 * (k / 3);
        cusp + c
    };
    dim as usize
}

/// A basis of `M_k(N)` with its q-expansions.
#[derive(Clone, Debug)]
pub struct SpaceDescriptor {
    pub weight: u32,
    pub level: u64,
    pub basis: Vec<FormRef>,
    pub series: Vec<QSeries>,
    pub sturm: usize,
}

impl SpaceDescriptor {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn precision(&self) -> usize {
        self.series.iter().map(QSeries::precision).min().unwrap_or(0)
    }

    /// `sum c_i basis_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> QSeries {
        assert_eq!(coeffs.len(), self.series.len(), "one coefficient per basis element");
        let mut acc = QSeries::zero(self.precision());
        for (c, s) in coeffs.iter().zip(&self.series) {
            acc = &acc + &s.scale(c);
        }
        acc
    }
}
