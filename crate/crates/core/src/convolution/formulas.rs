//! Closed forms for convolution sums obtained from basis expansions of the
//! dilated derivative constructions.
//!
//! Each builder takes the relevant [`LinearCombination`]s and returns a
//! [`ClosedForm`] valid for `n >= 1`. [`derive_closed_form`] picks the
//! construction for a given sum and runs the whole pipeline.

use num_traits::{One, Zero};

use crate::arith::{bernoulli, frac, gcd_u64, int, Rational};
use crate::catalog::Catalog;
use crate::convolution::closed_form::{ClosedForm, CoefficientTable, Func, Poly};
use crate::error::{Error, Result};
use crate::linalg::LinearCombination;
use crate::operators::Construction;

fn r(c: Rational) -> Poly {
    Poly::constant(c)
}

/// `c0 + c1 n + c2 n^2`.
fn quadratic(c0: Rational, c1: Rational, c2: Rational) -> Poly {
    Poly::new(vec![c0, c1, c2])
}

fn sigma(p: Poly, order: u32, d: u64) -> ClosedForm {
    ClosedForm::term(p, Func::Sigma(order), d)
}

/// `sum_i c_i a_i(n)` for `n >= 1`, with Eisenstein basis elements written
/// as divisor sums.
pub fn basis_sum(comb: &LinearCombination) -> Result<ClosedForm> {
    let mut out = ClosedForm::zero();
    for (b, c) in comb.terms() {
        out = &out + &ClosedForm::from_basis_coefficient(b, c)?;
    }
    Ok(out)
}

fn check_weight(k: u32) -> Result<()> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Unsupported(format!("weight {k}: need an even weight >= 4")));
    }
    Ok(())
}

fn check_comb(comb: &LinearCombination, weight: u32, what: &str) -> Result<()> {
    if comb.weight != weight {
        return Err(Error::Precondition(format!(
            "{what} needs a combination of weight {weight}, got weight {}",
            comb.weight
        )));
    }
    Ok(())
}

fn check_coprime(a: u64, b: u64) -> Result<()> {
    if a == 0 || b == 0 || gcd_u64(a, b) != 1 {
        return Err(Error::Precondition(format!("need coprime positive a, b; got ({a}, {b})")));
    }
    Ok(())
}

/// `W^{1,k-1}_{a,b}(n)` from the expansion `comb` of `theta(E_k, k, a, b)`:
/// `(B_k/2k) sigma(n/a) + (1/24 - n/(2ka)) sigma_{k-1}(n/b) - (B_k/(4ak^2)) sum alpha_i a_i(n)`.
pub fn w1k_closed_form(a: u64, b: u64, k: u32, comb: &LinearCombination) -> Result<ClosedForm> {
    check_weight(k)?;
    check_comb(comb, k + 2, "the theta expansion")?;
    let (bk, kk, aa) = (bernoulli(k)?, int(k), int(a));
    let mut out = sigma(r(&bk / (int(2) * &kk)), 1, a);
    out = &out + &sigma(Poly::new(vec![frac(1, 24), -(int(2) * &kk * &aa).recip()]), k - 1, b);
    let scale = -&bk / (int(4) * &aa * &kk * &kk);
    Ok(&out + &basis_sum(comb)?.scale(&scale))
}

/// `W_{a,b}(n)` from the expansion `comb` of `phi(a, b)`:
/// `(1/24)(1 - 6n/b) sigma(n/a) + (1/24)(1 - 6n/a) sigma(n/b) - (1/576) sum beta_i b_i(n)`.
pub fn w11_closed_form(a: u64, b: u64, comb: &LinearCombination) -> Result<ClosedForm> {
    check_coprime(a, b)?;
    check_comb(comb, 4, "the phi expansion")?;
    let c = frac(1, 24);
    let left = sigma(Poly::new(vec![c.clone(), -frac(1, 4 * b as i64)]), 1, a);
    let right = sigma(Poly::new(vec![c, -frac(1, 4 * a as i64)]), 1, b);
    Ok(&(&left + &right) + &basis_sum(comb)?.scale(&frac(-1, 576)))
}

/// `sum_{l+m=n} l sigma(l) sigma(m) = (5/24) n sigma_3(n) - (1/24)(6n^2 - n) sigma(n)`.
pub fn weighted_unit_closed_form() -> ClosedForm {
    &sigma(Poly::monomial(frac(5, 24), 1), 3, 1) + &sigma(quadratic(Rational::zero(), frac(1, 24), frac(-1, 4)), 1, 1)
}

/// `sum_{al+bm=n} l sigma(l) sigma_{k-1}(m)` from the combination
/// `inner` of `theta(E_k, k, a, b)` and `outer` of the weight `k+4` form
/// [`crate::operators::second_form_a`].
pub fn weighted_w1k_closed_form(
    a: u64,
    b: u64,
    k: u32,
    inner: &LinearCombination,
    outer: &LinearCombination,
) -> Result<ClosedForm> {
    check_weight(k)?;
    check_coprime(a, b)?;
    check_comb(outer, k + 4, "the second-form expansion")?;
    let (bk, aa) = (bernoulli(k)?, int(a));
    let (k1, k2) = (int(k + 1), int(k + 2));
    let lead = int(12) * &aa * &aa * &k1 * &k2;
    let mut out = sigma(quadratic(Rational::zero(), -(&aa * &k1) / &lead, int(6) / &lead), k - 1, b);
    out = &out + &sigma(Poly::monomial(&bk / (int(2) * &aa * &k2), 1), 1, a);
    let w = w1k_closed_form(a, b, k, inner)?;
    out = &out + &w.mul_poly(&Poly::monomial(int(2) / (&aa * &k2), 1));
    let scale = &bk / (int(4) * &aa * &aa * int(k) * &k1 * &k2);
    Ok(&out + &basis_sum(outer)?.scale(&scale))
}

/// `sum_{al+bm=n} l sigma(l) sigma(m)` for coprime `a, b`, not both 1, from
/// the expansions of `phi(a, b)` (`phi`), `theta(E_4, 4, b, a)` (`theta`)
/// and the weight-6 form [`crate::operators::second_form_b`] (`form_b`).
pub fn weighted_w11_closed_form(
    a: u64,
    b: u64,
    phi: &LinearCombination,
    theta: &LinearCombination,
    form_b: &LinearCombination,
) -> Result<ClosedForm> {
    check_coprime(a, b)?;
    if a == 1 && b == 1 {
        return Err(Error::Precondition("a = b = 1 is covered by the l + m = n formula".into()));
    }
    check_comb(form_b, 6, "the second-form expansion")?;
    let (aa, bb) = (int(a), int(b));
    let c = (int(144) * &aa).recip();
    let p_a = quadratic(Rational::zero(), int(3) - int(2) * &aa / &bb, int(6) / &bb).scale(&c);
    let p_b = quadratic(&aa / int(3), int(-3), int(6) / &aa).scale(&c);
    let mut out = &sigma(p_a, 1, a) + &sigma(p_b, 1, b);
    out = &out + &sigma(r(frac(-5, 216)), 3, a);
    out = &out + &w11_closed_form(a, b, phi)?.mul_poly(&Poly::monomial((int(2) * &aa).recip(), 1));
    out = &out + &w1k_closed_form(b, a, 4, theta)?.scale(&frac(5, 9));
    out = &out + &weighted_unit_closed_form().at_div(a).scale(&(&aa / (int(3) * &bb)));
    Ok(&out + &basis_sum(form_b)?.scale(&(int(6 * 576) * &aa).recip()))
}

/// Closed form for `sum_{al+bm=n} l^e sigma_r(l) sigma_s(m)` derived from
/// scratch: builds the matching construction, expands it in its space and
/// applies the corresponding formula.
///
/// Handles `e = 0` with `min(r, s) = 1` and `e = 1` with `r = 1` or `s = 1`.
/// A common factor of `a` and `b` is divided out first.
pub fn derive_closed_form(catalog: &Catalog, a: u64, b: u64, e: u32, r: u32, s: u32) -> Result<ClosedForm> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("a and b must be positive".into()));
    }
    if e > 1 {
        return Err(Error::OutOfScope(format!(
            "weight l^{e} leads to triple convolution sums; only e = 0 and e = 1 are supported"
        )));
    }
    if r.is_multiple_of(2) || s.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("divisor orders must be odd; got ({r}, {s})")));
    }
    let g = gcd_u64(a, b);
    if g > 1 {
        return Ok(derive_closed_form(catalog, a / g, b / g, e, r, s)?.at_div(g));
    }
    let derive = |c: Construction| c.derive(catalog, 0);
    match (e, r, s) {
        (0, 1, 1) => w11_closed_form(a, b, &derive(Construction::Phi { a, b })?),
        (0, 1, s) => w1k_closed_form(a, b, s + 1, &derive(Construction::Theta { k: s + 1, a, b })?),
        (0, r, 1) => derive_closed_form(catalog, b, a, 0, 1, r),
        (1, 1, 1) if a == 1 && b == 1 => Ok(weighted_unit_closed_form()),
        (1, 1, 1) => weighted_w11_closed_form(
            a,
            b,
            &derive(Construction::Phi { a, b })?,
            &derive(Construction::Theta { k: 4, a: b, b: a })?,
            &derive(Construction::FormB { a, b })?,
        ),
        (1, 1, s) => weighted_w1k_closed_form(
            a,
            b,
            s + 1,
            &derive(Construction::Theta { k: s + 1, a, b })?,
            &derive(Construction::FormA { k: s + 1, a, b })?,
        ),
        (1, r, 1) => {
            // a sum l sigma_r(l) sigma(m) = n W^{r,1}_{a,b}(n) - b sum m sigma_r(l) sigma(m)
            let total = derive_closed_form(catalog, a, b, 0, r, 1)?.mul_poly(&Poly::n());
            let other = derive_closed_form(catalog, b, a, 1, 1, r)?.scale(&int(b));
            Ok((&total - &other).scale(&int(a).recip()))
        }
        _ => Err(Error::Unsupported(format!("no construction evaluates sums with sigma_{r} and sigma_{s} together"))),
    }
}

/// Replaces every brute-force atom `W[...]` in `form` by its derived
/// closed form.
pub fn expand_atoms(catalog: &Catalog, form: &ClosedForm) -> Result<ClosedForm> {
    let mut out = ClosedForm::zero();
    for (f, d, p) in form.terms() {
        let piece = match f {
            Func::Conv { a, b, e, r, s } => derive_closed_form(catalog, *a, *b, *e, *r, *s)?.at_div(d).mul_poly(p),
            _ => ClosedForm::term(p.clone(), f.clone(), d),
        };
        out = &out + &piece;
    }
    Ok(out)
}

fn eval_at(form: &ClosedForm, n: u64, table: &mut CoefficientTable<'_>) -> Result<Rational> {
    match form.eval(n, table)? {
        Some(v) => Ok(v),
        None => {
            let form = form.forms().first().map(|s| s.to_string()).unwrap_or_default();
            Err(Error::Unavailable { form, index: n as usize })
        }
    }
}

/// Value of [`w1k_closed_form`] at `n`.
pub fn formula_w1k(
    a: u64,
    b: u64,
    k: u32,
    n: u64,
    comb: &LinearCombination,
    table: &mut CoefficientTable<'_>,
) -> Result<Rational> {
    eval_at(&w1k_closed_form(a, b, k, comb)?, n, table)
}

/// Value of [`w11_closed_form`] at `n`.
pub fn formula_w11(
    a: u64,
    b: u64,
    n: u64,
    comb: &LinearCombination,
    table: &mut CoefficientTable<'_>,
) -> Result<Rational> {
    eval_at(&w11_closed_form(a, b, comb)?, n, table)
}

/// Value of [`weighted_w1k_closed_form`] at `n`.
pub fn formula_weighted_w1k(
    a: u64,
    b: u64,
    k: u32,
    n: u64,
    inner: &LinearCombination,
    outer: &LinearCombination,
    table: &mut CoefficientTable<'_>,
) -> Result<Rational> {
    eval_at(&weighted_w1k_closed_form(a, b, k, inner, outer)?, n, table)
}

/// Value of [`weighted_w11_closed_form`] at `n`; `combs` holds the phi, theta and
/// second-form expansions in that order.
pub fn formula_weighted_w11(
    a: u64,
    b: u64,
    n: u64,
    combs: [&LinearCombination; 3],
    table: &mut CoefficientTable<'_>,
) -> Result<Rational> {
    eval_at(&weighted_w11_closed_form(a, b, combs[0], combs[1], combs[2])?, n, table)
}

/// Value of [`weighted_unit_closed_form`] at `n >= 1`.
pub fn formula_weighted_unit(n: u64) -> Rational {
    let n3 = Rational::from_integer(crate::catalog::sigma_int(3, n));
    let n1 = Rational::from_integer(crate::catalog::sigma_int(1, n));
    let nn = int(n);
    frac(5, 24) * &nn * n3 - (int(6) * &nn * &nn - &nn) / int(24) * n1
}

/// `true` if `v` is an integer.
pub fn is_integral(v: &Rational) -> bool {
    v.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::brute::w_weighted_brute;

    fn check_against_brute(
        form: &ClosedForm,
        a: u64,
        b: u64,
        e: u32,
        r: u32,
        s: u32,
        range: std::ops::RangeInclusive<u64>,
    ) {
        let cat = Catalog::shared();
        let mut t = CoefficientTable::new(cat, *range.end());
        let mut checked = 0;
        for n in range {
            let Some(v) = form.eval(n, &mut t).unwrap() else {
                continue;
            };
            assert!(is_integral(&v), "non-integral value {v} at n = {n} for {form}");
            let brute = w_weighted_brute(a, b, e, r, s, n).unwrap();
            assert_eq!(v, Rational::from_integer(brute), "n = {n}, W[{a},{b};{e};{r},{s}]: {form}");
            checked += 1;
        }
        assert!(checked > 0);
    }

    fn theta(k: u32, a: u64, b: u64) -> LinearCombination {
        Construction::Theta { k, a, b }.derive(Catalog::shared(), 0).unwrap()
    }

    fn phi(a: u64, b: u64) -> LinearCombination {
        Construction::Phi { a, b }.derive(Catalog::shared(), 0).unwrap()
    }

    #[test]
    fn w1k_examples() {
        let cat = Catalog::shared();
        let mut t = CoefficientTable::new(cat, 10);
        let c = theta(4, 1, 3);
        assert_eq!(formula_w1k(1, 3, 4, 4, &c, &mut t).unwrap(), int(1));
        assert_eq!(formula_w1k(1, 2, 4, 1, &theta(4, 1, 2), &mut t).unwrap(), int(0));
        assert_eq!(formula_w1k(1, 1, 4, 2, &theta(4, 1, 1), &mut t).unwrap(), int(1));
        let f = w1k_closed_form(1, 3, 4, &c).unwrap();
        let published =
            "-1/240*sigma(n) + (1/24 - n/8)*sigma3(n/3) + 1/1040*sigma5(n) + 9/104*sigma5(n/3) + 1/312*Delta_6_3(n)";
        assert_eq!(f, ClosedForm::parse(published).unwrap());
    }

    #[test]
    fn w1k_matches_brute_force() {
        for (a, b) in [(1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (2, 3)] {
            for k in [4, 6] {
                check_against_brute(&w1k_closed_form(a, b, k, &theta(k, a, b)).unwrap(), a, b, 0, 1, k - 1, 1..=40);
            }
        }
    }

    #[test]
    fn w11_examples() {
        let cat = Catalog::shared();
        let mut t = CoefficientTable::new(cat, 10);
        assert_eq!(formula_w11(1, 1, 3, &phi(1, 1), &mut t).unwrap(), int(6));
        let c = phi(3, 5);
        assert_eq!(formula_w11(3, 5, 2, &c, &mut t).unwrap(), int(0));
        assert_eq!(formula_w11(3, 5, 8, &c, &mut t).unwrap(), int(1));
        for (a, b) in [(1, 1), (1, 2), (1, 15), (3, 5), (2, 15), (5, 6)] {
            check_against_brute(&w11_closed_form(a, b, &phi(a, b)).unwrap(), a, b, 0, 1, 1, 1..=40);
        }
    }

    #[test]
    fn weighted_unit_against_brute_force() {
        assert_eq!(formula_weighted_unit(1), int(0));
        assert_eq!(formula_weighted_unit(2), int(1));
        assert_eq!(formula_weighted_unit(3), int(9));
        check_against_brute(&weighted_unit_closed_form(), 1, 1, 1, 1, 1, 1..=60);
        for n in 1..=60 {
            assert_eq!(formula_weighted_unit(n), Rational::from_integer(w_weighted_brute(1, 1, 1, 1, 1, n).unwrap()));
        }
    }

    #[test]
    fn weighted_w1k_examples() {
        let cat = Catalog::shared();
        let mut t = CoefficientTable::new(cat, 10);
        let formb = |k, a, b| Construction::FormA { k, a, b }.derive(cat, 0).unwrap();
        let (i, o) = (theta(4, 1, 2), formb(4, 1, 2));
        assert_eq!(formula_weighted_w1k(1, 2, 4, 3, &i, &o, &mut t).unwrap(), int(1));
        assert_eq!(formula_weighted_w1k(1, 2, 4, 1, &i, &o, &mut t).unwrap(), int(0));
        let (i, o) = (theta(4, 1, 3), formb(4, 1, 3));
        assert_eq!(formula_weighted_w1k(1, 3, 4, 4, &i, &o, &mut t).unwrap(), int(1));
        for (a, b, k) in [(1, 2, 4), (2, 1, 4), (1, 3, 4), (1, 2, 6)] {
            let f = weighted_w1k_closed_form(a, b, k, &theta(k, a, b), &formb(k, a, b)).unwrap();
            check_against_brute(&f, a, b, 1, 1, k - 1, 1..=30);
        }
    }

    #[test]
    fn weighted_w11_examples() {
        let cat = Catalog::shared();
        let mut t = CoefficientTable::new(cat, 10);
        for (a, b, n, want) in [(1, 2, 3, 1), (2, 3, 5, 1), (1, 2, 1, 0)] {
            let fb = Construction::FormB { a, b }.derive(cat, 0).unwrap();
            let v = formula_weighted_w11(a, b, n, [&phi(a, b), &theta(4, b, a), &fb], &mut t).unwrap();
            assert_eq!(v, int(want));
        }
        for (a, b) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3)] {
            check_against_brute(&derive_closed_form(cat, a, b, 1, 1, 1).unwrap(), a, b, 1, 1, 1, 1..=30);
        }
        assert!(matches!(
            weighted_w11_closed_form(1, 1, &phi(1, 1), &theta(4, 1, 1), &phi(1, 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn derivation_dispatch() {
        let cat = Catalog::shared();
        for (a, b, e, r, s) in [(2, 4, 0, 1, 3), (3, 1, 0, 3, 1), (1, 2, 1, 3, 1), (2, 1, 1, 5, 1), (1, 1, 1, 1, 1)] {
            check_against_brute(&derive_closed_form(cat, a, b, e, r, s).unwrap(), a, b, e, r, s, 1..=25);
        }
        assert!(matches!(derive_closed_form(cat, 1, 1, 2, 1, 1), Err(Error::OutOfScope(_))));
        assert!(matches!(derive_closed_form(cat, 1, 1, 0, 3, 3), Err(Error::Unsupported(_))));
        let w = ClosedForm::parse("W[1,1;1;1,1](n) - n/2*W[1,1;0;1,1](n)").unwrap();
        assert!(expand_atoms(cat, &w).unwrap().is_empty());
    }
}
