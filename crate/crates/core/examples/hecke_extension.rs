//! Extends a newform known only through q^25 by Hecke multiplicativity and
//! shows which coefficients stay out of reach.

use qconv::catalog::hecke::{hecke_extend, hecke_predict};
use qconv::Catalog;

fn main() -> qconv::Result<()> {
    let cat = Catalog::shared().clone().with_completion(false);
    let listed = cat.partial_series("Delta_10_4", 26)?;
    let initial: Vec<_> = listed.coeffs.iter().map(|c| c.clone().expect("listed prefix")).collect();
    for n in [9, 15, 21, 25] {
        let predicted = hecke_predict(&initial[..n], 10, 4, n as u64);
        println!("a({n}) listed {} predicted {:?}", initial[n], predicted.map(|p| p.to_string()));
    }
    let ext = hecke_extend(&initial, 10, 4, 80)?;
    println!("extended through q^79; unavailable indices: {:?}", ext.unavailable());
    let full = Catalog::shared().series("Delta_10_4", 80)?;
    let consistent = ext.coeffs.iter().enumerate().all(|(n, c)| c.as_ref().is_none_or(|c| c == full.coeff(n)));
    println!("agrees with the completed expansion wherever defined: {consistent}");
    Ok(())
}
