//! The dilated Ramanujan–Serre derivative and the forms built from it.
//!
//! Every function returns a plain [`QSeries`]; whether the result is modular
//! is established separately by [`crate::linalg::express_in_basis`].

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::arith::{frac, gcd_u64, int, lcm_u64, Rational};
use crate::catalog::{eisenstein, eisenstein2, Catalog, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{express_in_basis, LinearCombination};
use crate::series::QSeries;

fn e2_at(t: u64, prec: usize) -> QSeries {
    let t = t as usize;
    eisenstein2(prec.div_ceil(t).max(1)).dilate_to(t, prec)
}

fn ek_at(k: u32, t: u64, prec: usize) -> Result<QSeries> {
    let t = t as usize;
    Ok(eisenstein(k, prec.div_ceil(t).max(1))?.dilate_to(t, prec))
}

fn check_positive(a: u64, b: u64) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("dilations a and b must be positive".into()));
    }
    Ok(())
}

fn check_coprime(a: u64, b: u64) -> Result<()> {
    check_positive(a, b)?;
    if gcd_u64(a, b) != 1 {
        return Err(Error::Precondition(format!("gcd({a}, {b}) = {} but must be 1", gcd_u64(a, b))));
    }
    Ok(())
}

fn check_weight(k: u32) -> Result<()> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Unsupported(format!("weight {k}: need an even weight >= 4")));
    }
    Ok(())
}

/// `Df(bz) - (k/12) a E_2(az) f(bz)` to precision `prec`, where `f` has
/// weight `k` and is given undilated with `b * P_f >= prec`.
pub fn theta(f: &QSeries, k: u32, a: u64, b: u64, prec: usize) -> Result<QSeries> {
    check_positive(a, b)?;
    if f.precision() * (b as usize) < prec {
        return Err(Error::Precondition(format!(
            "input precision {} dilated by {b} does not reach {prec}",
            f.precision()
        )));
    }
    let fb = f.dilate_to(b as usize, prec);
    let c = frac(i64::from(k) * a as i64, 12);
    Ok(fb.qderiv() - (e2_at(a, prec) * &fb).scale(&c))
}

/// `theta(E_k, k, a, b)`.
pub fn theta_eisenstein(k: u32, a: u64, b: u64, prec: usize) -> Result<QSeries> {
    check_weight(k)?;
    check_positive(a, b)?;
    let ek = eisenstein(k, prec.div_ceil(b as usize).max(1))?;
    theta(&ek, k, a, b, prec)
}

/// `(6/b) D E_2(az) + (6/a) D E_2(bz) - E_2(az) E_2(bz)`, weight 4.
pub fn phi(a: u64, b: u64, prec: usize) -> Result<QSeries> {
    check_coprime(a, b)?;
    let (ea, eb) = (e2_at(a, prec), e2_at(b, prec));
    Ok(ea.qderiv().scale(&frac(6, b as i64)) + eb.qderiv().scale(&frac(6, a as i64)) - &ea * &eb)
}

/// The weight-`k+4` form
/// `D^2 E_k(bz) + (ka(k+1)/12) D E_2(az) E_k(bz) - (a(k+1)/6) E_2(az) D E_k(bz)`.
pub fn second_form_a(k: u32, a: u64, b: u64, prec: usize) -> Result<QSeries> {
    check_weight(k)?;
    check_coprime(a, b)?;
    let (kk, aa) = (i64::from(k), a as i64);
    let ekb = ek_at(k, b, prec)?;
    let e2a = e2_at(a, prec);
    let dekb = ekb.qderiv();
    Ok(dekb.qderiv() + (e2a.qderiv() * &ekb).scale(&frac(kk * aa * (kk + 1), 12))
        - (&e2a * &dekb).scale(&frac(aa * (kk + 1), 6)))
}

/// `theta(theta(E_k, k, a, b), k + 2, a, 1)`, the two-step construction
/// that [`second_form_a`] simplifies.
pub fn theta_twice(k: u32, a: u64, b: u64, prec: usize) -> Result<QSeries> {
    let inner = theta_eisenstein(k, a, b, prec)?;
    theta(&inner, k + 2, a, 1, prec)
}

/// The scalar `c` with `theta_twice - second_form_a = c E_4(az) E_k(bz)`.
///
/// Fails with [`Error::Precondition`] if the difference is not such a
/// multiple through `prec`.
pub fn theta_twice_defect(k: u32, a: u64, b: u64, prec: usize) -> Result<Rational> {
    let diff = theta_twice(k, a, b, prec)? - second_form_a(k, a, b, prec)?;
    let base = ek_at(4, a, prec)? * ek_at(k, b, prec)?;
    let c = diff.coeff(0).clone();
    if diff != base.scale(&c) {
        return Err(Error::Precondition(format!(
            "theta composition differs from the closed form by more than a multiple of E4({a}z)E{k}({b}z)"
        )));
    }
    Ok(c)
}

/// The weight-6 form
/// `(6/b) D^2 E_2(az) + (6/a) D^2 E_2(bz) - E_2(az)[3 D E_2(bz) + (2a/b) D E_2(az)]
///  + E_2(bz)[3 D E_2(az) + (a/3) E_4(az)]`.
pub fn second_form_b(a: u64, b: u64, prec: usize) -> Result<QSeries> {
    check_coprime(a, b)?;
    let (aa, bb) = (a as i64, b as i64);
    let (ea, eb) = (e2_at(a, prec), e2_at(b, prec));
    let (dea, deb) = (ea.qderiv(), eb.qderiv());
    let e4a = ek_at(4, a, prec)?;
    let left = deb.scale(&int(3)) + dea.scale(&frac(2 * aa, bb));
    let right = dea.scale(&int(3)) + e4a.scale(&frac(aa, 3));
    Ok(dea.qderiv().scale(&frac(6, bb)) + deb.qderiv().scale(&frac(6, aa)) - &ea * &left + &eb * &right)
}

/// One of the four constructions, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `theta(E_k, k, a, b)` in weight `k + 2`.
    Theta { k: u32, a: u64, b: u64 },
    /// [`phi`] in weight 4.
    Phi { a: u64, b: u64 },
    /// [`second_form_a`] in weight `k + 4`.
    FormA { k: u32, a: u64, b: u64 },
    /// [`second_form_b`] in weight 6.
    FormB { a: u64, b: u64 },
}

/// Names accepted by [`Construction::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Theta,
    Phi,
    FormA,
    FormB,
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "theta" => Ok(Self::Theta),
            "phi" => Ok(Self::Phi),
            "forma" | "form-a" => Ok(Self::FormA),
            "formb" | "form-b" => Ok(Self::FormB),
            _ => Err(Error::Unsupported(format!("unknown construction `{s}` (theta, phi, formA, formB)"))),
        }
    }
}

impl Construction {
    /// Builds a construction; `k` is required for `theta` and `formA`.
    pub fn new(kind: ConstructionKind, a: u64, b: u64, k: Option<u32>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| Error::Precondition("this construction needs a weight k".into()));
        let c = match kind {
            ConstructionKind::Theta => Self::Theta { k: need_k()?, a, b },
            ConstructionKind::Phi => Self::Phi { a, b },
            ConstructionKind::FormA => Self::FormA { k: need_k()?, a, b },
            ConstructionKind::FormB => Self::FormB { a, b },
        };
        Ok(c)
    }

    pub fn weight(&self) -> u32 {
        match *self {
            Self::Theta { k, .. } => k + 2,
            Self::Phi { .. } => 4,
            Self::FormA { k, .. } => k + 4,
            Self::FormB { .. } => 6,
        }
    }

    /// Level of the space the construction lands in.
    pub fn level(&self) -> u64 {
        match *self {
            Self::Theta { a, b, .. } | Self::Phi { a, b } | Self::FormA { a, b, .. } | Self::FormB { a, b } => {
                lcm_u64(a, b)
            }
        }
    }

    pub fn series(&self, prec: usize) -> Result<QSeries> {
        match *self {
            Self::Theta { k, a, b } => theta_eisenstein(k, a, b, prec),
            Self::Phi { a, b } => phi(a, b, prec),
            Self::FormA { k, a, b } => second_form_a(k, a, b, prec),
            Self::FormB { a, b } => second_form_b(a, b, prec),
        }
    }

    /// The series written in the catalog basis of its space, certified
    /// through `prec` (raised to the Sturm window plus five if smaller).
    pub fn derive(&self, catalog: &Catalog, prec: usize) -> Result<LinearCombination> {
        let space = self.space(catalog, prec)?;
        let prec = prec.max(space.sturm + 6);
        let space = if space.precision() < prec { self.space(catalog, prec)? } else { space };
        express_in_basis(&self.series(prec)?, &space)
    }

    pub fn space(&self, catalog: &Catalog, prec: usize) -> Result<SpaceDescriptor> {
        catalog.space_basis(self.weight(), self.level(), prec)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Theta { k, a, b } => write!(f, "theta(E{k}; a={a}, b={b})"),
            Self::Phi { a, b } => write!(f, "phi(a={a}, b={b})"),
            Self::FormA { k, a, b } => write!(f, "formA(E{k}; a={a}, b={b})"),
            Self::FormB { a, b } => write!(f, "formB(a={a}, b={b})"),
        }
    }
}

/// `true` when every coefficient of `s` is zero.
pub fn vanishes(s: &QSeries) -> bool {
    s.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::delta;
    use proptest::prelude::*;

    #[test]
    fn theta_kills_delta() {
        let d = delta(40);
        assert!(vanishes(&theta(&d, 12, 1, 1, 40).unwrap()));
    }

    #[test]
    fn theta_e4_leading_terms() {
        let t = theta_eisenstein(4, 1, 2, 10).unwrap();
        assert_eq!(t.coeff(0), &frac(-1, 3));
        assert_eq!(t.coeff(1), &int(8));
    }

    #[test]
    fn theta_constant_term() {
        for (k, a, b) in [(4, 1, 2), (6, 3, 1), (8, 4, 1), (10, 2, 3)] {
            let t = theta_eisenstein(k, a, b, 5).unwrap();
            assert_eq!(t.coeff(0), &frac(-(i64::from(k) * a as i64), 12));
        }
    }

    #[test]
    fn phi_values() {
        let p = phi(1, 1, 60).unwrap();
        assert_eq!(p, eisenstein(4, 60).unwrap().scale(&int(-1)));
        assert_eq!(phi(3, 5, 5).unwrap().coeff(0), &int(-1));
        assert!(matches!(phi(2, 4, 5), Err(Error::Precondition(_))));
    }

    #[test]
    fn form_a_constant_vanishes() {
        assert!(second_form_a(4, 1, 2, 5).unwrap().coeff(0).is_zero());
    }

    #[test]
    fn form_a_first_coefficient() {
        // D^2 E4 + (20/12) DE2 E4 - (5/6) E2 DE4 at q: 240 - 40 - 200.
        let f = second_form_a(4, 1, 1, 5).unwrap();
        assert_eq!(f.coeff(1), &int(0));
        let f = second_form_a(4, 1, 2, 5).unwrap();
        assert_eq!(f.coeff(1), &frac(-40, 1));
    }

    #[test]
    fn theta_twice_differs_by_e4_multiple() {
        for (k, a, b) in [(4, 1, 2), (6, 2, 1), (8, 1, 3), (10, 3, 2)] {
            let c = theta_twice_defect(k, a, b, 30).unwrap();
            let (k, a) = (i64::from(k), a as i64);
            assert_eq!(c, frac(k * (k + 2) * a * a, 144));
        }
    }

    #[test]
    fn form_b_constant() {
        assert_eq!(second_form_b(1, 2, 5).unwrap().coeff(0), &frac(1, 3));
    }

    #[test]
    fn derive_first_combination() {
        let comb = Construction::Theta { k: 4, a: 1, b: 2 }.derive(Catalog::shared(), 20).unwrap();
        assert_eq!(comb.coefficients, vec![frac(-1, 63), frac(-20, 63)]);
        assert_eq!(comb.to_string(), "E6(z): -1/63, E6(2z): -20/63");
    }

    #[test]
    fn constructions_land_in_their_spaces() {
        let cat = Catalog::shared();
        for c in [
            Construction::FormA { k: 4, a: 1, b: 2 },
            Construction::FormB { a: 1, b: 2 },
            Construction::Phi { a: 2, b: 3 },
        ] {
            assert!(c.derive(cat, 20).is_ok(), "{c}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn theta_is_linear(
            f in proptest::collection::vec(-50i64..50, 12),
            g in proptest::collection::vec(-50i64..50, 12),
            (an, ad, bn, bd) in (-9i64..9, 1i64..9, -9i64..9, 1i64..9),
            (k, a, b) in (2u32..7, 1u64..4, 1u64..4),
        ) {
            let k = 2 * k;
            let (f, g) = (QSeries::from_integers(f), QSeries::from_integers(g));
            let (al, be) = (frac(an, ad), frac(bn, bd));
            let prec = 12;
            let lhs = theta(&(f.scale(&al) + g.scale(&be)), k, a, b, prec).unwrap();
            let rhs = theta(&f, k, a, b, prec).unwrap().scale(&al) + theta(&g, k, a, b, prec).unwrap().scale(&be);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
