//! Prints the catalog basis of each listed space with its dimension and
//! Sturm bound.

use qconv::Catalog;

fn main() -> qconv::Result<()> {
    let cat = Catalog::shared();
    for (k, level) in cat.listed_spaces() {
        let space = cat.space_basis(k, level, 8)?;
        println!("M_{k}({level}): dimension {}, Sturm bound {}", space.dimension(), space.sturm);
        for (b, s) in space.basis.iter().zip(&space.series) {
            println!("  {b:<18} {s}");
        }
    }
    Ok(())
}
