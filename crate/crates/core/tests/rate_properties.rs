use std::sync::Arc;

use capring::groups::{build_group, GroupSpec};
use capring::subspaces::{
    build_family, build_filtered_subspace, convexity_defect, default_filter, default_filter_for,
    exact_codim, filter_family, rate, s_value, to_f64, verify_zero_product, DegreeFilter,
    RateOrder, Rational,
};
use proptest::prelude::*;

/// κ_N = min_{0<y<1} y^{-(N-1)/3} Σ_{j<N} y^j by golden-section search in y.
fn kappa_oracle(n: u64) -> f64 {
    let f =
        |y: f64| y.powf(-((n - 1) as f64) / 3.0) * (0..n).map(|j| y.powi(j as i32)).sum::<f64>();
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (1e-12, 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    f(0.5 * (a + b))
}

#[test]
fn kappa_matches_independent_oracle() {
    for n in 2..=64u64 {
        let r = rate(RateOrder::Finite(n), 3).unwrap();
        let k = r.kappa.unwrap();
        let oracle = kappa_oracle(n);
        assert!(
            (k - oracle).abs() < 1e-9 * oracle.max(1.0),
            "N = {n}: {k} vs {oracle}"
        );
        assert!((k - n as f64 * r.value).abs() < 1e-12 * k);
    }
}

#[test]
fn published_constants() {
    let a = |n: RateOrder, k| rate(n, k).unwrap();
    assert!((a(RateOrder::Finite(2), 3).value - 0.9449).abs() < 5e-4);
    assert!((a(RateOrder::Finite(4), 3).kappa.unwrap() - 3.61).abs() < 5e-3);
    assert!((a(RateOrder::Finite(9), 3).kappa.unwrap() / 9.0 - 0.872).abs() < 5e-4);
    assert!((a(RateOrder::Infinite, 3).value - 0.8414).abs() < 5e-4);
}

#[test]
fn rates_decrease_in_n() {
    for k in [3, 4, 5] {
        let values: Vec<f64> = (2..=64)
            .map(|n| rate(RateOrder::Finite(n), k).unwrap().value)
            .collect();
        for (i, w) in values.windows(2).enumerate() {
            assert!(w[1] < w[0], "k = {k}, N = {}", i + 3);
        }
        assert!(rate(RateOrder::Infinite, k).unwrap().value < values[values.len() - 1]);
    }
}

#[test]
fn objective_is_convex() {
    for k in [2, 3, 4, 5, 8] {
        for n in [2, 3, 4, 5, 9, 27, 64] {
            assert!(
                convexity_defect(RateOrder::Finite(n), k, 2001) > -1e-12,
                "N = {n}, k = {k}"
            );
        }
        assert!(convexity_defect(RateOrder::Infinite, k, 2001) > -1e-12);
    }
}

/// Every factor tuple with N_j prime powers > 1 and product at most `limit`.
fn order_tuples(limit: u64) -> Vec<Vec<u64>> {
    let prime_powers: Vec<u64> = (2..=limit)
        .filter(|&n| capring::groups::prime_of_power(n).is_some())
        .collect();
    let mut out = Vec::new();
    fn go(
        pp: &[u64],
        start: usize,
        prod: u64,
        limit: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..pp.len() {
            if prod * pp[i] > limit {
                break;
            }
            cur.push(pp[i]);
            go(pp, i, prod * pp[i], limit, cur, out);
            cur.pop();
        }
    }
    go(&prime_powers, 0, 1, limit, &mut Vec::new(), &mut out);
    out
}

#[test]
fn chernoff_dominance_k5() {
    let tuples = order_tuples(6561);
    assert!(tuples.len() > 1000);
    for orders in tuples {
        let size: u64 = orders.iter().product();
        let t = exact_codim(&orders, &default_filter(&orders, 5).unwrap()).unwrap();
        let bound: f64 = orders
            .iter()
            .map(|&n| rate(RateOrder::Finite(n), 5).unwrap().value)
            .product();
        assert!(to_f64(&t) / size as f64 <= bound + 1e-12, "{orders:?}");
    }
}

#[test]
fn exact_codim_matches_enumeration() {
    for spec in [
        "abelian:3,3",
        "abelian:2,2,2,2,2",
        "abelian:5,5",
        "abelian:4,8",
        "abelian:27",
        "abelian:3,9,9",
    ] {
        let g = Arc::new(build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap());
        let GroupSpec::Abelian { orders } = g.spec().clone() else {
            unreachable!()
        };
        for k in [2, 3, 4] {
            let f = default_filter_for(&g, k).unwrap();
            let x = build_filtered_subspace(&g, k, &f).unwrap();
            assert_eq!(
                exact_codim(&orders, &f).unwrap(),
                x.codim().into(),
                "{spec}, k = {k}"
            );
        }
    }
}

#[test]
fn zero_product_for_small_groups() {
    let specs = [
        "abelian:3",
        "abelian:2,2",
        "abelian:5",
        "abelian:3,3",
        "abelian:2,4",
        "abelian:2,2,2,2",
        "abelian:3,9",
        "abelian:5,5",
        "abelian:3,3,3",
        "abelian:2,2,2,2,2,2",
        "abelian:81",
        "heisenberg:p=3,n=2",
        "heisenberg:p=2,n=3",
        "ut:n=3,p=2",
        "ut:n=3,p=3",
        "ut:n=4,p=2",
    ];
    for spec in specs {
        let g = Arc::new(build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap());
        for k in [2, 3] {
            let xs = build_family(&g, &vec![default_filter_for(&g, k).unwrap(); k]).unwrap();
            let rep = verify_zero_product(&xs).unwrap();
            assert!(rep.verified, "{spec}, k = {k}: {:?}", rep.witness);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn s_values_decrease_in_n(x in 0.001f64..0.999, n in 2u64..40) {
        let a = s_value(RateOrder::Finite(n), x);
        let b = s_value(RateOrder::Finite(n + 1), x);
        prop_assert!(b < a);
        prop_assert!(s_value(RateOrder::Infinite, x) < b);
    }

    /// Unequal shares summing to one still give a zero product.
    #[test]
    fn unequal_shares_zero_product(idx in 0usize..4, cuts in prop::collection::vec(1i64..12, 2)) {
        let spec = ["abelian:3,3", "abelian:5,5", "heisenberg:p=3,n=2", "abelian:2,2,2,2"][idx];
        let g = Arc::new(build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap());
        let (a, b) = (cuts[0], cuts[1]);
        let den = a + b + 12;
        let etas = [Rational::new(a, den), Rational::new(b, den), Rational::new(12, den)];
        let n_weights = match g.spec() {
            GroupSpec::Abelian { orders } => orders.len(),
            _ => 0,
        };
        let weights = DegreeFilter::uniform(3, n_weights).weights;
        let fs = filter_family(&weights, &etas).unwrap();
        let xs = build_family(&g, &fs).unwrap();
        prop_assert!(verify_zero_product(&xs).unwrap().verified);
    }

    #[test]
    fn shares_must_sum_to_one(a in 1i64..10, b in 1i64..10) {
        let etas = [Rational::new(a, 20), Rational::new(b, 20)];
        prop_assume!(a + b != 20);
        prop_assert!(filter_family(&[Rational::new(1, 1)], &etas).is_err());
    }
}
