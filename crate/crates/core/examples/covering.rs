//! Covers the product set A_1 ⋯ A_k by a small exceptional set C together
//! with products of rectangles B_i ⊆ A_i, and verifies the cover
//! independently.
//!
//! ```bash
//! cargo run --release --example covering
//! ```

use std::sync::Arc;

use capring::covering::{compute_cover, verify_cover, CoverInstance};
use capring::groups::{build_group, GroupSpec};
use capring::subspaces::{build_family, DegreeFilter};

fn main() -> capring::Result<()> {
    let group = Arc::new(build_group(&"abelian:3,3".parse::<GroupSpec>()?)?);
    let k = 2;
    let xs = build_family(&group, &vec![DegreeFilter::uniform(k + 1, 2); k + 1])?;
    let e = |a: u32, b: u32| group.encode(&[a, b]);
    let sets = vec![
        vec![e(0, 0)?, e(1, 0)?, e(0, 1)?, e(1, 1)?],
        vec![e(0, 0)?, e(2, 0)?, e(0, 2)?, e(2, 1)?, e(1, 2)?],
    ];
    let inst = CoverInstance::new(&group, xs, sets)?;
    let res = compute_cover(&inst)?;
    println!(
        "t = {:?}, dim W = {}, dim W_0 = {}",
        inst.codims(),
        res.dim_w,
        res.dim_w0
    );
    for (i, b) in res.b.iter().enumerate() {
        let names: Vec<String> = b.iter().map(|&g| group.format_element(g)).collect();
        println!("B{} = {{{}}}", i + 1, names.join(", "));
    }
    let c: Vec<String> = res.c.iter().map(|&g| group.format_element(g)).collect();
    println!("C  = {{{}}}", c.join(", "));
    for (g, why) in &res.ledger {
        println!("  {:<10} {why}", group.format_element(*g));
    }
    let verdict = verify_cover(&inst, &res);
    println!("cover verified: {}", verdict.verified);
    Ok(())
}
