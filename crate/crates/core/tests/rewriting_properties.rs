use std::sync::Arc;

use capring::groups::{build_group, FiniteGroup, GroupSpec};
use capring::rewriting::{nilpotency_check, Letter, Rewriter};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap())
}

fn all_words(letters: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn all_short_words_over_smallest_heisenberg() {
    let g = group("heisenberg:p=3,n=2");
    let mut rw = Rewriter::new(&g).unwrap();
    let letters = rw.letters().to_vec();
    let words = all_words(&letters, 4);
    assert_eq!(words.len(), 1 + 3 + 9 + 27 + 81);
    for w in words {
        let r = rw.reduce(&w).unwrap();
        assert_eq!(rw.expand(&r).unwrap(), rw.evaluate(&w).unwrap(), "{w:?}");
        let d = rw.degree(&w);
        assert!(r.terms.keys().all(|m| rw.monomial_degree(m) >= d), "{w:?}");
    }
}

#[test]
fn random_long_words_match_dense_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for spec in [
        "heisenberg:p=3,n=2",
        "heisenberg:p=3,n=3",
        "ut:n=3,p=3",
        "ut:n=4,p=2",
        "heisenberg:p=5,n=2",
    ] {
        let g = group(spec);
        let mut rw = Rewriter::new(&g).unwrap();
        for _ in 0..120 {
            let len = rand::Rng::gen_range(&mut rng, 5..12);
            let w = rw.random_word(&mut rng, len);
            let r = rw.reduce(&w).unwrap();
            assert_eq!(
                rw.expand(&r).unwrap(),
                rw.evaluate(&w).unwrap(),
                "{spec}: {w:?}"
            );
        }
    }
}

#[test]
fn words_past_max_degree_vanish() {
    for spec in [
        "heisenberg:p=3,n=2",
        "heisenberg:p=2,n=3",
        "ut:n=3,p=3",
        "ut:n=4,p=2",
        "ut:n=3,p=5",
    ] {
        let rep = nilpotency_check(&group(spec), 300, 0).unwrap();
        assert!(rep.verified(), "{spec}: {:?}", rep.counterexample);
    }
}

#[test]
fn max_degrees() {
    let m = |s: &str| Rewriter::new(&group(s)).unwrap().max_degree();
    // (p−1)(2 + 2(n−1)) with z of degree 2 and every other letter of degree 1
    assert_eq!(m("heisenberg:p=3,n=2"), 8);
    assert_eq!(m("heisenberg:p=3,n=3"), 12);
    // (p−1) Σ (j − i) over 1 ≤ i < j ≤ n
    assert_eq!(m("ut:n=4,p=2"), 10);
    assert_eq!(m("ut:n=3,p=3"), 8);
}

#[test]
fn abelian_groups_are_rejected() {
    assert!(Rewriter::new(&group("abelian:3,3")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Reducing the two halves and multiplying agrees with reducing the whole word.
    #[test]
    fn split_and_merge(spec in prop::sample::select(vec!["heisenberg:p=3,n=2", "heisenberg:p=3,n=3", "ut:n=4,p=2", "ut:n=3,p=3"]),
                       seed in any::<u64>(), len in 1usize..10, cut in 0usize..10) {
        let g = group(spec);
        let mut rw = Rewriter::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rw.random_word(&mut rng, len);
        let cut = cut.min(w.len());
        let whole = rw.reduce(&w).unwrap();
        let left = rw.reduce(&w[..cut]).unwrap();
        let right = rw.reduce(&w[cut..]).unwrap();
        prop_assert_eq!(rw.multiply(&left, &right), whole.clone());
        // a second split point reassociates the product
        let cut2 = (cut + len / 2) % (w.len() + 1);
        let (a, b) = (cut.min(cut2), cut.max(cut2));
        let x = rw.reduce(&w[..a]).unwrap();
        let y = rw.reduce(&w[a..b]).unwrap();
        let z = rw.reduce(&w[b..]).unwrap();
        let xy = rw.multiply(&x, &y);
        let yz = rw.multiply(&y, &z);
        prop_assert_eq!(rw.multiply(&xy, &z), whole.clone());
        prop_assert_eq!(rw.multiply(&x, &yz), whole);
    }
}
