//! Leaders and outsiders of a subspace W ⊆ F^A under an ordering: the
//! leaders are the minimal support coordinates of vectors of W, there are
//! exactly dim W of them, and reversing the ordering gives the outsiders.
//!
//! ```bash
//! cargo run --example leaders
//! ```

use capring::field::Fp;
use capring::linalg::{leaders_outsiders, Subspace};

fn main() -> capring::Result<()> {
    let f = Fp::new(5)?;
    let vectors = vec![
        vec![0, 1, 1, 0, 2, 0],
        vec![0, 0, 3, 1, 0, 0],
        vec![0, 1, 4, 1, 2, 0],
    ];
    let w = Subspace::span(f, 6, vectors)?;
    println!("dim W = {}", w.dim());
    for ordering in [
        vec![0, 1, 2, 3, 4, 5],
        vec![5, 4, 3, 2, 1, 0],
        vec![2, 0, 4, 1, 5, 3],
    ] {
        let (l, o) = leaders_outsiders(&w, &ordering)?;
        println!("ordering {ordering:?}: leaders {l:?}, outsiders {o:?}");
        assert_eq!(l.len(), w.dim());
    }

    // Vectors vanishing on the leaders are zero: W meets the span of the
    // non-leader coordinates trivially.
    let l = w.leaders(&[0, 1, 2, 3, 4, 5])?;
    let rest: Vec<Vec<u32>> = (0..6)
        .filter(|c| !l.contains(c))
        .map(|c| (0..6).map(|j| u32::from(j == c)).collect())
        .collect();
    let complement = Subspace::span(f, 6, rest)?;
    println!(
        "dim (W ∩ span of non-leaders) = {}",
        w.intersect(&complement)?.dim()
    );
    Ok(())
}
