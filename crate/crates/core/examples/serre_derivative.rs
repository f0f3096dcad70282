//! Applies the dilated Ramanujan-Serre derivative to Eisenstein series and
//! writes the results in the catalog bases.

use qconv::catalog::eisenstein;
use qconv::operators::{theta, Construction, ConstructionKind};
use qconv::Catalog;

fn main() -> qconv::Result<()> {
    let e4 = eisenstein(4, 12)?;
    println!("theta(E4; 1, 2) = {}", theta(&e4, 4, 1, 2, 12)?);

    let cat = Catalog::shared();
    for (kind, a, b, k) in [
        (ConstructionKind::Theta, 1, 2, Some(4)),
        (ConstructionKind::Theta, 1, 4, Some(6)),
        (ConstructionKind::Phi, 1, 1, None),
        (ConstructionKind::Phi, 1, 3, None),
        (ConstructionKind::FormA, 1, 2, Some(4)),
        (ConstructionKind::FormB, 1, 2, None),
    ] {
        let c = Construction::new(kind, a, b, k)?;
        let comb = c.derive(cat, 0)?;
        println!("{c} in M_{}({}), certified through q^{}:", c.weight(), c.level(), comb.certified_precision - 1);
        println!("  {comb}");
    }
    Ok(())
}
