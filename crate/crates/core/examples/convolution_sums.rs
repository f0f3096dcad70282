//! Derives closed forms for `sum_{al+bm=n} sigma_r(l) sigma_s(m)` and
//! compares them with direct summation.

use qconv::convolution::{derive_closed_form, w_brute, CoefficientTable};
use qconv::{Catalog, Rational};

fn main() -> qconv::Result<()> {
    let cat = Catalog::shared();
    for (a, b, r, s) in [(1, 2, 1, 3), (1, 3, 1, 5), (3, 5, 1, 1), (2, 3, 1, 1), (1, 4, 1, 7)] {
        let form = derive_closed_form(cat, a, b, 0, r, s)?;
        println!("W[{a},{b}; sigma{r}, sigma{s}](n) = {form}");
        let mut table = CoefficientTable::new(cat, 100);
        let mut agree = 0;
        let mut clipped = 0;
        for n in 1..=100 {
            match form.eval(n, &mut table)? {
                Some(v) if v == Rational::from(w_brute(a, b, r, s, n)) => agree += 1,
                Some(v) => println!("  n={n}: formula {v}, brute {}", w_brute(a, b, r, s, n)),
                None => clipped += 1,
            }
        }
        println!("  agrees with brute force on {agree} of 100 indices ({clipped} unavailable)");
    }
    Ok(())
}
