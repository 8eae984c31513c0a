//! Exact branch-and-bound search for sets free of solutions to an equation
//! g_1^{n_1} ⋯ g_k^{n_k} = 1, next to the bound from zero-product subspaces.
//!
//! ```bash
//! cargo run --release --example cap_set_search
//! ```

use std::sync::Arc;

use capring::combinatorics::{
    certify_equation_free, check_equation_free, EquationSpec, SearchConfig,
};
use capring::groups::{build_group, GroupSpec};
use capring::subspaces::{build_family, default_filter_for};

fn main() -> capring::Result<()> {
    let cases = [
        ("abelian:3", "1,1,-2"),
        ("abelian:3,3", "1,1,-2"),
        ("abelian:3,3,3", "1,1,-2"),
        ("abelian:5", "1,1,-2"),
        ("abelian:7", "1,1,-2"),
        ("abelian:5", "1,2,-3"),
        ("abelian:5,5", "1,1,-2"),
        ("heisenberg:p=3,n=2", "1,1,-2"),
    ];
    let config = SearchConfig::default();
    for (spec, eq) in cases {
        let group = Arc::new(build_group(&spec.parse::<GroupSpec>()?)?);
        let eq: EquationSpec = eq.parse()?;
        let f = default_filter_for(&group, eq.k())?;
        let xs = build_family(&group, &vec![f; eq.k()])?;
        let c = certify_equation_free(&group, &eq, &xs, &config)?;
        let witness: Vec<String> = c
            .search
            .witness
            .iter()
            .map(|&g| group.format_element(g))
            .collect();
        println!(
            "{spec:<20} eq {eq:<8} max = {:<3} (exact: {:<5}) bound = {:<4} nodes = {:<8} {{{}}}",
            c.search.size,
            c.search.exact,
            c.bound.bound,
            c.search.nodes,
            witness.join(", ")
        );
        assert!(c.sound);
        assert!(check_equation_free(&group, &eq, &c.search.witness)?.is_free());
    }

    // A set containing a progression is rejected with its first solution.
    let group = build_group(&"abelian:5".parse::<GroupSpec>()?)?;
    let w = check_equation_free(&group, &EquationSpec::three_ap(), &[0, 1, 2])?;
    println!("{{0,1,2}} in C5: first solution {:?}", w.violation);
    Ok(())
}
