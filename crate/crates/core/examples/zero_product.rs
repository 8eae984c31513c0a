//! Builds the degree-filtered subspaces X_1, ..., X_k of F_p[G] and checks
//! by brute force that every product x_1 ⋯ x_k vanishes.
//!
//! ```bash
//! cargo run --release --example zero_product
//! ```

use std::sync::Arc;

use capring::groups::{build_group, GroupSpec};
use capring::subspaces::{build_family, default_filter_for, verify_zero_product, DegreeFilter};

fn main() -> capring::Result<()> {
    let specs = [
        "abelian:3,3",
        "abelian:2,2,2,2",
        "abelian:2,4",
        "heisenberg:p=3,n=2",
        "ut:n=4,p=2",
    ];
    for spec in specs {
        let group = Arc::new(build_group(&spec.parse::<GroupSpec>()?)?);
        let k = 3;
        let f = default_filter_for(&group, k)?;
        let xs = build_family(&group, &vec![f; k])?;
        let rep = verify_zero_product(&xs)?;
        println!(
            "{spec:<22} |G| = {:<4} t = {:?}  tuples = {:<8} zero product: {}",
            group.order(),
            xs.iter().map(|x| x.codim()).collect::<Vec<_>>(),
            rep.tuples_checked,
            rep.verified
        );
    }

    // Unequal shares still give a zero product as long as they sum to one.
    let group = Arc::new(build_group(&"abelian:5,5".parse::<GroupSpec>()?)?);
    let shares = [(1, 2), (1, 4), (1, 4)];
    let filters: Vec<DegreeFilter> = shares
        .iter()
        .map(|&(a, b)| DegreeFilter {
            eta: capring::subspaces::Rational::new(a, b),
            ..DegreeFilter::uniform(3, 2)
        })
        .collect();
    let xs = build_family(&group, &filters)?;
    let rep = verify_zero_product(&xs)?;
    println!(
        "abelian:5,5 with shares 1/2,1/4,1/4: t = {:?}, zero product: {}",
        xs.iter().map(|x| x.codim()).collect::<Vec<_>>(),
        rep.verified
    );
    Ok(())
}
