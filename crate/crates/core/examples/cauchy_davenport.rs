//! Cauchy–Davenport in C_p through the group ring: with |A| + |B| + |C| = p + 2,
//! the product of the elements Σ c_j τ^j attached to the three sets is τ^{p−1}.
//!
//! ```bash
//! cargo run --example cauchy_davenport
//! ```

use capring::combinatorics::cauchy_davenport;

fn main() -> capring::Result<()> {
    let cases: [(u32, &[u32], &[u32], &[u32]); 4] = [
        (5, &[0, 1], &[0, 2], &[1, 3, 4]),
        (7, &[0, 1], &[0, 2, 3], &[0, 1, 2, 3]),
        (11, &[0, 3, 5, 9], &[1, 2, 4], &[0, 1, 2, 3, 4, 5]),
        (13, &[2, 7], &[0, 1, 2, 3, 4, 5, 6], &[1, 5, 8, 11, 12, 0]),
    ];
    for (p, a, b, c) in cases {
        let r = cauchy_davenport(p, a, b, c)?;
        println!(
            "p = {p:<3} |A|,|B|,|C| = {},{},{}  coefficients {:?}  product = τ^(p-1): {}  A+B+C = C_p: {}",
            a.len(),
            b.len(),
            c.len(),
            r.coefficients,
            r.equals_top_power,
            r.sumset_is_group
        );
        assert!(r.verified());
    }
    Ok(())
}
