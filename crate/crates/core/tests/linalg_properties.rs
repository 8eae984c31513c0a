use std::collections::BTreeSet;

use capring::field::Fp;
use capring::linalg::{pointwise_product_span, rref, Matrix, Subspace};
use proptest::prelude::*;

fn vectors(p: u32, d: usize, max_count: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..p, d), 0..=max_count)
}

fn ordering(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..d).collect::<Vec<_>>()).prop_shuffle()
}

/// Every element of `w`, by running over all coefficient vectors on its basis.
fn all_elements(w: &Subspace) -> Vec<Vec<u32>> {
    let f = w.field();
    let p = f.modulus();
    let mut out = vec![vec![0u32; w.ambient_dim()]];
    for b in w.basis() {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                next.push(
                    v.iter()
                        .zip(b)
                        .map(|(&x, &y)| f.add(x, f.mul(c, y)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

fn extreme_supports(w: &Subspace, ordering: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut rank = vec![0; ordering.len()];
    for (i, &c) in ordering.iter().enumerate() {
        rank[c] = i;
    }
    let (mut lo, mut hi) = (BTreeSet::new(), BTreeSet::new());
    for v in all_elements(w) {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        if let (Some(&a), Some(&b)) = (
            support.iter().min_by_key(|&&i| rank[i]),
            support.iter().max_by_key(|&&i| rank[i]),
        ) {
            lo.insert(a);
            hi.insert(b);
        }
    }
    (lo.into_iter().collect(), hi.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn leaders_are_minimal_supports(vs in vectors(3, 7, 5), ord in ordering(7)) {
        let w = Subspace::span(Fp::new(3).unwrap(), 7, vs).unwrap();
        let leaders = w.leaders(&ord).unwrap();
        let outsiders = w.outsiders(&ord).unwrap();
        prop_assert_eq!(leaders.len(), w.dim());
        prop_assert_eq!(outsiders.len(), w.dim());
        let (lo, hi) = extreme_supports(&w, &ord);
        prop_assert_eq!(leaders, lo);
        prop_assert_eq!(outsiders, hi);
    }

    #[test]
    fn leaders_over_f5(vs in vectors(5, 5, 4), ord in ordering(5)) {
        let w = Subspace::span(Fp::new(5).unwrap(), 5, vs).unwrap();
        let (lo, hi) = extreme_supports(&w, &ord);
        prop_assert_eq!(w.leaders(&ord).unwrap(), lo);
        prop_assert_eq!(w.outsiders(&ord).unwrap(), hi);
    }

    #[test]
    fn intersection_dimension(a in vectors(3, 6, 5), b in vectors(3, 6, 5)) {
        let f = Fp::new(3).unwrap();
        let a = Subspace::span(f, 6, a).unwrap();
        let b = Subspace::span(f, 6, b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert!(i.dim() + 6 >= a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        // dim(a ∩ b) + dim(a + b) = dim a + dim b
        prop_assert_eq!(i.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
        let brute = all_elements(&a).into_iter().filter(|v| b.contains(v)).count();
        prop_assert_eq!(brute, 3usize.pow(i.dim() as u32));
    }

    #[test]
    fn rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(0i64..7, 5), 1..6)) {
        let f = Fp::new(7).unwrap();
        let m = Matrix::from_rows(f, &rows).unwrap();
        let once = rref(&m);
        let twice = rref(&once.reduced);
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.rank, m.rank());
    }

    #[test]
    fn rank_of_product(a in prop::collection::vec(prop::collection::vec(0i64..3, 4), 3),
                       b in prop::collection::vec(prop::collection::vec(0i64..3, 5), 4)) {
        let f = Fp::new(3).unwrap();
        let a = Matrix::from_rows(f, &a).unwrap();
        let b = Matrix::from_rows(f, &b).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn kernel_is_annihilated(rows in prop::collection::vec(prop::collection::vec(0i64..5, 6), 1..5)) {
        let f = Fp::new(5).unwrap();
        let m = Matrix::from_rows(f, &rows).unwrap();
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), 6);
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_returns_a_solution(rows in prop::collection::vec(prop::collection::vec(0i64..5, 4), 1..6),
                                x in prop::collection::vec(0u32..5, 4)) {
        let f = Fp::new(5).unwrap();
        let m = Matrix::from_rows(f, &rows).unwrap();
        let rhs = m.mul_vec(&x).unwrap();
        let sol = m.solve(&rhs).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), rhs);
    }

    /// codim Y ≤ Σ t_i, ≤ t_1 when all factors agree, and ≤ the sum over distinct factors.
    #[test]
    fn product_span_codimension(a in vectors(3, 6, 6), b in vectors(3, 6, 6), c in vectors(3, 6, 6),
                                pattern in 0usize..4) {
        let f = Fp::new(3).unwrap();
        let s = |v: Vec<Vec<u32>>| Subspace::span(f, 6, v).unwrap();
        let (a, b, c) = (s(a), s(b), s(c));
        let xs = match pattern {
            0 => vec![a.clone(), b.clone()],
            1 => vec![a.clone(), a.clone(), a.clone()],
            2 => vec![a.clone(), a.clone(), c.clone()],
            _ => vec![a.clone(), b.clone(), c.clone()],
        };
        let y = pointwise_product_span(&xs).unwrap();
        let total: usize = xs.iter().map(Subspace::codim).sum();
        prop_assert!(y.codim() <= total);
        if pattern == 1 {
            prop_assert!(y.codim() <= a.codim());
        }
        let mut distinct: Vec<&Subspace> = Vec::new();
        for x in &xs {
            if !distinct.iter().any(|z| z.same_as(x)) {
                distinct.push(x);
            }
        }
        prop_assert!(y.codim() <= distinct.iter().map(|z| z.codim()).sum::<usize>());
    }

    /// Brute-force oracle: every pointwise product of elements lies in Y.
    #[test]
    fn product_span_contains_products(a in vectors(3, 4, 2), b in vectors(3, 4, 2)) {
        let f = Fp::new(3).unwrap();
        let a = Subspace::span(f, 4, a).unwrap();
        let b = Subspace::span(f, 4, b).unwrap();
        let y = pointwise_product_span(&[a.clone(), b.clone()]).unwrap();
        let products: Vec<Vec<u32>> = all_elements(&a)
            .iter()
            .flat_map(|u| all_elements(&b).into_iter().map(move |v| u.iter().zip(&v).map(|(&x, &z)| x * z % 3).collect()))
            .collect();
        for p in &products {
            prop_assert!(y.contains(p));
        }
        prop_assert!(Subspace::span(f, 4, products).unwrap().same_as(&y));
    }
}

#[test]
fn explicit_leader_example() {
    let f = Fp::new(3).unwrap();
    let w = Subspace::span(f, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
    assert_eq!(w.leaders(&[0, 1, 2]).unwrap(), vec![0, 1]);
    assert_eq!(w.outsiders(&[0, 1, 2]).unwrap(), vec![1, 2]);
    let full = Subspace::full(Fp::new(5).unwrap(), 4);
    assert_eq!(full.leaders(&[0, 1, 2, 3]).unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(full.outsiders(&[0, 1, 2, 3]).unwrap(), vec![0, 1, 2, 3]);
}
