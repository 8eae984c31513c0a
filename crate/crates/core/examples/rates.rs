//! Rate constants a_N(k) and κ_N, with the bound they give on t/|G| for
//! a few abelian groups.
//!
//! ```bash
//! cargo run --example rates
//! ```

use capring::subspaces::{analytic_bounds, default_filter, exact_codim, rate, to_f64, RateOrder};

fn main() -> capring::Result<()> {
    println!(
        "{:>4} {:>3} {:>14} {:>14} {:>14}",
        "N", "k", "a_N(k)", "argmin", "kappa_N/N"
    );
    for k in [3, 4, 5] {
        for order in ["2", "3", "4", "9", "inf"] {
            let order: RateOrder = order.parse()?;
            let r = rate(order, k)?;
            let per = match (order, r.kappa) {
                (RateOrder::Finite(n), Some(c)) => format!("{:.10}", c / n as f64),
                _ => "-".into(),
            };
            println!(
                "{order:>4} {:>3} {:>14.10} {:>14.10} {:>14}",
                k,
                r.value,
                r.argmin,
                per,
                order = order.to_string()
            );
        }
    }

    // The exact count of kept monomials never exceeds the Chernoff estimate.
    println!();
    for orders in [
        vec![3u64, 3, 3],
        vec![2, 2, 2, 2, 2, 2],
        vec![4, 9],
        vec![5, 5],
    ] {
        let k = 3;
        let f = default_filter(&orders, k)?;
        let t = exact_codim(&orders, &f)?;
        let size: u64 = orders.iter().product();
        let b = analytic_bounds(&orders, k)?;
        println!(
            "orders {:?}: t = {t}, t/|G| = {:.6} <= chernoff {:.6}, 2t = {}, prod kappa = {:.4}",
            orders,
            to_f64(&t) / size as f64,
            b.chernoff,
            &t * 2u32,
            b.kappa_product
        );
    }
    Ok(())
}
