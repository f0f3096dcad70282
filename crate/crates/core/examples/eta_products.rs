//! Expands eta quotients and checks relations between eta products and
//! catalog forms.

use qconv::eta::{delta, tau_by_recursion};
use qconv::{Catalog, EtaProduct};

fn main() -> qconv::Result<()> {
    let f = EtaProduct::new([(1, 8), (2, 8)])?;
    println!("eta(z)^8 eta(2z)^8: weight {}, leading order {}", f.weight(), f.lead_order());
    println!("  {}", f.expand(10)?);

    let d = delta(30);
    let tau = tau_by_recursion(29);
    println!("eta(z)^24 agrees with the tau recursion through q^29: {}", (1..30).all(|n| d.coeff(n) == &tau[n]));

    let cat = Catalog::shared();
    for (lhs, rhs) in [
        ("Delta_10_2(z)", "eta[1^16 2^4] + 32*eta[1^8 2^4 4^8]"),
        ("Delta_6_6(z)", "eta[1^5 2^5 3^1 6^1] + 9*eta[1^1 2^1 3^5 6^5]"),
    ] {
        let holds = cat.eval(lhs, 50)? == cat.eval(rhs, 50)?;
        println!("{lhs} = {rhs} through q^49: {holds}");
    }
    Ok(())
}
