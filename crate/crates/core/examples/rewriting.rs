//! Rewrites words in the augmentation generators z, x_i, y_i (Heisenberg)
//! or x_ij (unitriangular) into reduced monomials, and checks the result
//! against dense multiplication in F_p[G].
//!
//! ```bash
//! cargo run --example rewriting
//! ```

use std::sync::Arc;

use capring::groups::{build_group, GroupSpec};
use capring::rewriting::{format_word, nilpotency_check, Rewriter};

fn main() -> capring::Result<()> {
    let group = Arc::new(build_group(&"heisenberg:p=3,n=3".parse::<GroupSpec>()?)?);
    let mut rw = Rewriter::new(&group)?;
    for word in ["x1 y1", "y1 x1", "x2 y1 x1", "x1 x1 y1 y1", "z z z"] {
        let w = rw.parse_word(word)?;
        let r = rw.reduce(&w)?;
        let agrees = rw.expand(&r)? == rw.evaluate(&w)?;
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|(m, c)| format!("{c}·[{}]", format_word(&rw.monomial_word(m))))
            .collect();
        println!(
            "{word:<14} deg {} -> {}  (dense check: {agrees})",
            rw.degree(&w),
            if r.is_zero() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        );
    }

    let group = Arc::new(build_group(&"ut:n=4,p=2".parse::<GroupSpec>()?)?);
    let mut rw = Rewriter::new(&group)?;
    let w = rw.parse_word("x34 x12 x23")?;
    let r = rw.reduce(&w)?;
    println!(
        "\nUT_4(F_2): {} reduces to {} monomials of degree ≥ {}",
        format_word(&w),
        r.len(),
        rw.degree(&w)
    );

    // Any word above the maximal degree vanishes.
    for spec in [
        "heisenberg:p=3,n=2",
        "heisenberg:p=3,n=3",
        "ut:n=3,p=3",
        "ut:n=4,p=2",
    ] {
        let g = Arc::new(build_group(&spec.parse::<GroupSpec>()?)?);
        let rep = nilpotency_check(&g, 200, 0)?;
        println!(
            "{spec:<20} max degree {:<3} 200 random longer words vanish: {}",
            rep.max_degree,
            rep.verified()
        );
    }
    Ok(())
}
