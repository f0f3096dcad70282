//! Evaluates `sum_{al+bm=n} l sigma_r(l) sigma_s(m)` from derived closed
//! forms and checks the reflection identity.

use qconv::convolution::{derive_closed_form, reflection_residual, w_weighted_brute, CoefficientTable};
use qconv::{Catalog, Rational};

fn main() -> qconv::Result<()> {
    let cat = Catalog::shared();
    for (a, b, r, s) in [(1, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (1, 2, 1, 3), (1, 3, 3, 1)] {
        let form = derive_closed_form(cat, a, b, 1, r, s)?;
        let mut table = CoefficientTable::new(cat, 60);
        let ok = (1..=60).all(|n| {
            let brute = Rational::from(w_weighted_brute(a, b, 1, r, s, n).expect("e = 1"));
            form.eval(n, &mut table).expect("evaluable").is_none_or(|v| v == brute)
        });
        println!("sum l sigma{r}(l) sigma{s}(m), al+bm=n, (a,b)=({a},{b}): matches n=1..60: {ok}");
        println!("  {form}");
    }
    let zero = (1..=50).all(|n| reflection_residual(2, 3, 3, n) == 0.into());
    println!("reflection residual for (2,3), sigma3 vanishes for n=1..50: {zero}");
    match w_weighted_brute(1, 1, 2, 1, 1, 5) {
        Ok(v) => println!("e=2: {v}"),
        Err(e) => println!("e=2: {e}"),
    }
    Ok(())
}
