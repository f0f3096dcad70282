//! Verifies every shipped identity over its default range and prints one
//! line per identity, with any disagreement between published and derived
//! constants.

use qconv::convolution::IdentityCatalog;
use qconv::Catalog;

fn main() -> qconv::Result<()> {
    let ids = IdentityCatalog::shipped()?;
    let all: Vec<_> = ids.identities().iter().collect();
    let reports = ids.verify_all(&all, Catalog::shared(), None);
    for r in &reports {
        let derived = match &r.derived {
            None => "-".to_string(),
            Some(d) if d.agrees => "derived agrees".to_string(),
            Some(d) => match &d.error {
                Some(e) => format!("no derivation: {e}"),
                None => format!("derived differs in {} terms", d.differences.len()),
            },
        };
        println!("{:<16} {:<8} n={}..{} checked={} {}", r.id, r.status, r.range[0], r.range[1], r.checked, derived);
        if let Some(d) = &r.first_discrepancy {
            println!("    first discrepancy at n={}: lhs {} rhs {}", d.n, d.lhs, d.rhs);
        }
        for t in r.derived.iter().flat_map(|d| &d.differences) {
            println!("    {}: published {} derived {}", t.term, t.published, t.derived);
        }
    }
    Ok(())
}
