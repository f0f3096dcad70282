//! Direct evaluation of convolution sums over `al + bm = n`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::catalog::sigma_int;
use crate::error::{Error, Result};

/// `W^{r,s}_{a,b}(n) = sum_{al+bm=n} sigma_r(l) sigma_s(m)` over positive `l, m`.
pub fn w_brute(a: u64, b: u64, r: u32, s: u32, n: u64) -> BigInt {
    weighted(a, b, 0, r, s, n)
}

/// `sum_{al+bm=n} l^e sigma_r(l) sigma_s(m)` for `e` in `{0, 1}`.
pub fn w_weighted_brute(a: u64, b: u64, e: u32, r: u32, s: u32, n: u64) -> Result<BigInt> {
    if e > 1 {
        return Err(Error::OutOfScope(format!(
            "weight l^{e} leads to triple convolution sums; only e = 0 and e = 1 are supported"
        )));
    }
    Ok(weighted(a, b, e, r, s, n))
}

fn weighted(a: u64, b: u64, e: u32, r: u32, s: u32, n: u64) -> BigInt {
    assert!(a > 0 && b > 0, "a and b must be positive");
    let mut acc = BigInt::zero();
    let mut l = 1;
    while a * l < n {
        let rest = n - a * l;
        if rest.is_multiple_of(b) {
            let term = sigma_int(r, l) * sigma_int(s, rest / b);
            acc += if e == 1 { term * l } else { term };
        }
        l += 1;
    }
    acc
}

/// `b * sum m sigma(l) sigma_s(m) - (n W^{1,s}_{a,b}(n) - a * sum l sigma(l) sigma_s(m))`,
/// all sums over `al + bm = n`. Zero for every input since `al + bm = n`.
pub fn reflection_residual(a: u64, b: u64, s: u32, n: u64) -> BigInt {
    let m_weighted = weighted(b, a, 1, s, 1, n);
    let l_weighted = weighted(a, b, 1, 1, s, n);
    b * m_weighted - (n * w_brute(a, b, 1, s, n) - a * l_weighted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_values() {
        assert_eq!(w_brute(1, 1, 1, 1, 2), big(1));
        assert_eq!(w_brute(1, 1, 1, 1, 3), big(6));
        assert_eq!(w_brute(1, 3, 1, 3, 4), big(1));
        assert_eq!(w_weighted_brute(1, 2, 1, 1, 1, 3).unwrap(), big(1));
        assert_eq!(w_weighted_brute(1, 1, 1, 1, 1, 2).unwrap(), big(1));
        assert_eq!(w_weighted_brute(3, 5, 0, 1, 1, 8).unwrap(), w_brute(3, 5, 1, 1, 8));
        assert!(matches!(w_weighted_brute(1, 1, 2, 1, 1, 5), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn besge_identity() {
        // W_{1,1}(n) = (5 sigma_3(n) + (1 - 6n) sigma(n)) / 12
        for n in 1..60u64 {
            let rhs = (5 * sigma_int(3, n) + (1 - 6 * n as i64) * sigma_int(1, n)) / 12;
            assert_eq!(w_brute(1, 1, 1, 1, n), rhs, "n = {n}");
        }
    }

    #[test]
    fn reflection_examples() {
        assert!(reflection_residual(2, 3, 1, 12).is_zero());
        assert!(reflection_residual(1, 2, 3, 7).is_zero());
        assert!(reflection_residual(3, 5, 1, 30).is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn symmetric_in_roles(a in 1u64..7, b in 1u64..7, r in 0u32..4, s in 0u32..4, n in 1u64..80) {
            prop_assert_eq!(w_brute(a, b, r, s, n), w_brute(b, a, s, r, n));
        }

        #[test]
        fn vanishes_below_a_plus_b(a in 1u64..20, b in 1u64..20, r in 0u32..4, s in 0u32..4) {
            for n in 0..a + b {
                prop_assert!(w_brute(a, b, r, s, n).is_zero());
            }
        }

        #[test]
        fn reflection_vanishes(a in 1u64..8, b in 1u64..8, s in 0u32..6, n in 1u64..120) {
            prop_assert!(reflection_residual(a, b, 2 * s + 1, n).is_zero());
        }
    }
}
