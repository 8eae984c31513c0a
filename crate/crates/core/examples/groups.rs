//! The supported group families, their normal forms and the arithmetic of
//! F_p[G].
//!
//! ```bash
//! cargo run --example groups
//! ```

use std::sync::Arc;

use capring::algebra::{augmented_power, AlgebraElement};
use capring::groups::{build_group, GroupSpec};

fn main() -> capring::Result<()> {
    for spec in [
        "abelian:2,4",
        "heisenberg:p=3,n=2",
        "heisenberg:p=5,n=3",
        "ut:n=3,p=3",
        "ut:n=4,p=2",
    ] {
        let g = build_group(&spec.parse::<GroupSpec>()?)?;
        let gens: Vec<&str> = g.generators().iter().map(|x| x.name.as_str()).collect();
        println!("{spec:<20} |G| = {:<5} generators {:?}", g.order(), gens);
    }

    let g = Arc::new(build_group(&"heisenberg:p=3,n=2".parse::<GroupSpec>()?)?);
    let (x, y) = (
        g.generator("g1").expect("g1"),
        g.generator("h1").expect("h1"),
    );
    let comm = g.product([x, y, g.inverse(x), g.inverse(y)]);
    println!(
        "\nin H(3,2): [g1, h1] = {} with normal form {:?}",
        g.format_element(comm),
        g.decode(comm)
    );

    let f = g.field()?;
    let a = AlgebraElement::augmented(&g, f, x);
    let b = AlgebraElement::augmented(&g, f, y);
    let ab = a.multiply(&b)?;
    let ba = b.multiply(&a)?;
    println!(
        "(g1 - 1)(h1 - 1) has support {:?}",
        ab.support()
            .iter()
            .map(|&e| g.format_element(e))
            .collect::<Vec<_>>()
    );
    println!("it equals (h1 - 1)(g1 - 1): {}", ab == ba);
    println!("augmentation of the product: {}", ab.augmentation().value());

    let top = augmented_power(&g, f, x, 2);
    println!(
        "(g1 - 1)^2 coefficients on <g1>: {:?}",
        (0..3)
            .map(|i| top.coefficient(g.power(x, i)).value())
            .collect::<Vec<_>>()
    );
    println!(
        "(g1 - 1)^3 is zero: {}",
        augmented_power(&g, f, x, 3).is_zero()
    );
    Ok(())
}
