//! Constructive covering of product sets by zero-product subspaces.
//!
//! Given `X_0 X_1 ⋯ X_k = 0` with codimensions `t_i` and ordered sets
//! `A_1, …, A_k ⊆ G`, [`compute_cover`] produces `B_i ⊆ A_i` with
//! `|B_i| ≤ t_i` and `C ⊆ G` with `|C| ≤ t_0` such that
//!
//! ```text
//! A_1 ⋯ A_k ⊆ C ∪ B_1 A_2 ⋯ A_k ∪ A_1 B_2 ⋯ A_k ∪ … ∪ A_1 ⋯ A_{k−1} B_k.
//! ```
//!
//! Tuples of `A_1 × … × A_k` are ordered lexicographically from the
//! per-set orderings. `W` is the space of functions on tuples that factor
//! through the product map; its leaders are the minimal tuples of the
//! distinct products. `W_0 ⊆ W` collects the functions induced by `φ` with
//! `Σ φ(g) g^{−1} ∈ X_0`. `B_i` is `A_i` minus the outsiders of
//! `F^{A_i} ∩ X_i`, and `C` holds the products whose minimal tuple is not a
//! leader of `W_0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::{ElementIndex, FiniteGroup};
use crate::linalg::{Matrix, Subspace};
use crate::subspaces::{verify_zero_product, FilteredSubspace};

/// Largest `|A_1 × … × A_k|` handled by default.
pub const DEFAULT_TUPLE_CAP: usize = 20_000;

#[derive(Clone, Debug)]
pub struct CoverInstance {
    group: Arc<FiniteGroup>,
    subspaces: Vec<FilteredSubspace>,
    sets: Vec<Vec<ElementIndex>>,
}

impl CoverInstance {
    /// `subspaces` are `X_0, …, X_k`; each set is listed in its declared ordering.
    pub fn new(
        group: &Arc<FiniteGroup>,
        subspaces: Vec<FilteredSubspace>,
        sets: Vec<Vec<ElementIndex>>,
    ) -> Result<Self> {
        if sets.is_empty() || subspaces.len() != sets.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: sets.len() + 1,
                found: subspaces.len(),
            });
        }
        if subspaces.iter().any(|x| !x.group().same_group(group)) {
            return Err(Error::GroupMismatch);
        }
        for s in &sets {
            if s.is_empty() {
                return Err(Error::InvalidInput("empty set in cover instance".into()));
            }
            let mut seen = vec![false; group.order()];
            for &a in s {
                if a >= group.order() || std::mem::replace(&mut seen[a], true) {
                    return Err(Error::InvalidInput(format!(
                        "set {s:?} has a repeated or out-of-range element"
                    )));
                }
            }
        }
        Ok(CoverInstance {
            group: Arc::clone(group),
            subspaces,
            sets,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn subspaces(&self) -> &[FilteredSubspace] {
        &self.subspaces
    }

    pub fn sets(&self) -> &[Vec<ElementIndex>] {
        &self.sets
    }

    /// `t_0, …, t_k`.
    pub fn codims(&self) -> Vec<usize> {
        self.subspaces.iter().map(FilteredSubspace::codim).collect()
    }

    pub fn tuple_count(&self) -> Option<usize> {
        self.sets
            .iter()
            .try_fold(1usize, |acc, s| acc.checked_mul(s.len()))
    }

    /// All tuples in lexicographic order, as positions within each set.
    fn tuples(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for s in &self.sets {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..s.len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn product_of(&self, positions: &[usize]) -> ElementIndex {
        self.group
            .product(positions.iter().zip(&self.sets).map(|(&i, s)| s[i]))
    }
}

/// Why a product is covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverReason {
    /// The product lies in `C`.
    Exceptional,
    /// The minimal tuple has its `i`-th coordinate (1-based) in `B_i`.
    Rectangle(usize),
}

impl fmt::Display for CoverReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverReason::Exceptional => write!(f, "C"),
            CoverReason::Rectangle(i) => write!(f, "B{i}"),
        }
    }
}

impl Serialize for CoverReason {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub b: Vec<Vec<ElementIndex>>,
    pub c: Vec<ElementIndex>,
    /// Covering reason for every product.
    pub ledger: BTreeMap<ElementIndex, CoverReason>,
    pub dim_w: usize,
    pub dim_w0: usize,
    /// Leaders of `W_0` as element tuples.
    pub w0_leaders: Vec<Vec<ElementIndex>>,
    pub tuples: usize,
}

/// `A` minus the outsiders of `F^A ∩ X` under the order in which `A` is listed.
pub fn rectangle_set(x: &FilteredSubspace, set: &[ElementIndex]) -> Result<Vec<ElementIndex>> {
    let group = x.group();
    let field = group.field()?;
    let n = group.order();
    let span_a = Subspace::span(
        field,
        n,
        set.iter().map(|&a| {
            let mut v = vec![0; n];
            v[a] = 1;
            v
        }),
    )?;
    let meet = span_a.intersect(&x.to_subspace()?)?;
    let mut ordering = set.to_vec();
    ordering.extend((0..n).filter(|g| !set.contains(g)));
    let outsiders = meet.outsiders(&ordering)?;
    Ok(set
        .iter()
        .copied()
        .filter(|a| !outsiders.contains(a))
        .collect())
}

pub fn compute_cover(inst: &CoverInstance) -> Result<CoverResult> {
    compute_cover_with_cap(inst, DEFAULT_TUPLE_CAP)
}

pub fn compute_cover_with_cap(inst: &CoverInstance, cap: usize) -> Result<CoverResult> {
    let count = inst
        .tuple_count()
        .filter(|&c| c <= cap)
        .ok_or_else(|| Error::TooLarge(format!("more than {cap} tuples")))?;
    if !verify_zero_product(&inst.subspaces)?.verified {
        return Err(Error::NotZeroProduct);
    }
    let group = &inst.group;
    let field = group.field()?;
    let n = group.order();
    let k = inst.k();

    let mut b: Vec<Vec<ElementIndex>> = Vec::with_capacity(k);
    for i in 0..k {
        let x = &inst.subspaces[i + 1];
        let reuse =
            (0..i).find(|&j| inst.subspaces[j + 1].same_as(x) && inst.sets[j] == inst.sets[i]);
        b.push(match reuse {
            Some(j) => b[j].clone(),
            None => rectangle_set(x, &inst.sets[i])?,
        });
    }

    // Minimal tuple of each product; its position in tuple order orders the products.
    let tuples = inst.tuples();
    let mut first_tuple: Vec<Option<usize>> = vec![None; n];
    let mut products = Vec::new();
    for (idx, t) in tuples.iter().enumerate() {
        let g = inst.product_of(t);
        if first_tuple[g].is_none() {
            first_tuple[g] = Some(idx);
            products.push(g);
        }
    }

    // φ with Σ φ(g) g^{−1} ∈ X_0: the coefficient at h is φ(h^{−1}).
    let q0 = inst.subspaces[0].to_subspace()?.constraints();
    let mut m = Matrix::zeros(field, q0.rows(), n);
    for r in 0..q0.rows() {
        for g in 0..n {
            m.set(r, g, q0.get(r, group.inverse(g)));
        }
    }
    let phis = m.kernel();
    // f = φ restricted to products, with products listed by minimal tuple.
    let restricted: Vec<Vec<u32>> = phis
        .iter()
        .map(|phi| products.iter().map(|&g| phi[g]).collect())
        .collect();
    let w0 = Subspace::span(field, products.len(), restricted)?;
    let w0_leader_products: Vec<ElementIndex> = w0
        .leaders(&(0..products.len()).collect::<Vec<_>>())?
        .into_iter()
        .map(|pos| products[pos])
        .collect();

    let mut ledger = BTreeMap::new();
    let mut c = Vec::new();
    let mut w0_leaders = Vec::new();
    for &g in &products {
        let t = &tuples[first_tuple[g].expect("product has a tuple")];
        let elems: Vec<ElementIndex> = t.iter().zip(&inst.sets).map(|(&i, s)| s[i]).collect();
        if w0_leader_products.contains(&g) {
            let i = (0..k).find(|&i| b[i].contains(&elems[i])).ok_or_else(|| {
                Error::InvalidInput(format!("leader {elems:?} of W_0 escapes every rectangle"))
            })?;
            ledger.insert(g, CoverReason::Rectangle(i + 1));
            w0_leaders.push(elems);
        } else {
            ledger.insert(g, CoverReason::Exceptional);
            c.push(g);
        }
    }
    c.sort_unstable();
    Ok(CoverResult {
        b,
        c,
        ledger,
        dim_w: products.len(),
        dim_w0: w0.dim(),
        w0_leaders,
        tuples: count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub verified: bool,
    /// First product (in tuple order) outside the union.
    pub uncovered: Option<ElementIndex>,
    /// Failed cardinality or containment conditions, described.
    pub violations: Vec<String>,
}

/// Recomputes every product and checks the covering and cardinality conditions.
pub fn verify_cover(inst: &CoverInstance, res: &CoverResult) -> CoverVerdict {
    let codims = inst.codims();
    let mut violations = Vec::new();
    if res.c.len() > codims[0] {
        violations.push(format!("|C| = {} exceeds t_0 = {}", res.c.len(), codims[0]));
    }
    if res.b.len() != inst.k() {
        violations.push(format!("{} sets B_i for k = {}", res.b.len(), inst.k()));
    }
    for (i, (bi, ai)) in res.b.iter().zip(&inst.sets).enumerate() {
        if bi.len() > codims[i + 1] {
            violations.push(format!(
                "|B_{}| = {} exceeds t_{} = {}",
                i + 1,
                bi.len(),
                i + 1,
                codims[i + 1]
            ));
        }
        if bi.iter().any(|x| !ai.contains(x)) {
            violations.push(format!("B_{} is not contained in A_{}", i + 1, i + 1));
        }
    }

    let group = &inst.group;
    let mut covered = vec![false; group.order()];
    for &g in &res.c {
        if g < covered.len() {
            covered[g] = true;
        }
    }
    let tuples: Vec<(Vec<ElementIndex>, ElementIndex)> = inst
        .tuples()
        .into_iter()
        .map(|t| {
            let elems: Vec<ElementIndex> = t.iter().zip(&inst.sets).map(|(&i, s)| s[i]).collect();
            let g = group.product(elems.iter().copied());
            (elems, g)
        })
        .collect();
    for (elems, g) in &tuples {
        if elems.iter().zip(&res.b).any(|(a, bi)| bi.contains(a)) {
            covered[*g] = true;
        }
    }
    let uncovered = tuples.iter().map(|(_, g)| *g).find(|&g| !covered[g]);
    CoverVerdict {
        verified: violations.is_empty() && uncovered.is_none(),
        uncovered,
        violations,
    }
}

/// Bound for sets free of `g_1^{n_1} ⋯ g_k^{n_k} = 1` obtained by covering
/// `A^{n_1} ⋯ A^{n_{k−1}}` with `X_k` in the role of `X_0`: `t_k` plus one
/// `t_i` per class of equal `(X_i, n_i)` among the first `k − 1` indices.
pub fn covering_equation_bound(exponents: &[i64], xs: &[FilteredSubspace]) -> Result<usize> {
    if xs.len() != exponents.len() || xs.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: exponents.len(),
            found: xs.len(),
        });
    }
    let k = xs.len();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..k - 1 {
        if !reps
            .iter()
            .any(|&j| exponents[j] == exponents[i] && xs[j].same_as(&xs[i]))
        {
            reps.push(i);
        }
    }
    Ok(xs[k - 1].codim() + reps.iter().map(|&i| xs[i].codim()).sum::<usize>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;
    use crate::subspaces::{build_filtered_subspace, DegreeFilter};

    fn setup(spec: &str, k: usize) -> (Arc<FiniteGroup>, FilteredSubspace) {
        let g = Arc::new(build_group(&spec.parse().unwrap()).unwrap());
        let n = match g.spec() {
            crate::groups::GroupSpec::Abelian { orders } => orders.len(),
            _ => 0,
        };
        let x = build_filtered_subspace(&g, k + 1, &DegreeFilter::uniform(k + 1, n)).unwrap();
        (g, x)
    }

    #[test]
    fn c3_full_sets() {
        let (g, x) = setup("abelian:3", 2);
        assert_eq!(x.codim(), 1);
        let inst = CoverInstance::new(
            &g,
            vec![x.clone(), x.clone(), x],
            vec![vec![0, 1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        let res = compute_cover(&inst).unwrap();
        assert!(res.c.len() <= 1);
        assert!(res.b.iter().all(|b| b.len() <= 1));
        assert_eq!(res.b[0], res.b[1]);
        assert_eq!(res.dim_w, 3);
        assert!(res.dim_w - res.dim_w0 <= 1);
        assert!(verify_cover(&inst, &res).verified);
    }

    #[test]
    fn singletons() {
        let (g, x) = setup("abelian:3,3", 2);
        let inst =
            CoverInstance::new(&g, vec![x.clone(), x.clone(), x], vec![vec![4], vec![7]]).unwrap();
        let res = compute_cover(&inst).unwrap();
        assert_eq!(res.ledger.len(), 1);
        assert!(verify_cover(&inst, &res).verified);
    }

    #[test]
    fn negative_controls() {
        let (g, x) = setup("abelian:3,3", 2);
        let inst = CoverInstance::new(
            &g,
            vec![x.clone(), x.clone(), x],
            vec![vec![0, 1, 3, 4], vec![0, 1, 3, 4]],
        )
        .unwrap();
        let res = compute_cover(&inst).unwrap();
        assert!(verify_cover(&inst, &res).verified);

        let mut dumped = res.clone();
        dumped.c = res.ledger.keys().copied().collect();
        dumped.b = vec![Vec::new(), Vec::new()];
        let v = verify_cover(&inst, &dumped);
        assert!(!v.verified && !v.violations.is_empty());

        // Drop a C element that no rectangle reaches.
        let rect_covered = |g: ElementIndex| {
            inst.tuples().into_iter().any(|t| {
                let e: Vec<usize> = t.iter().zip(inst.sets()).map(|(&i, s)| s[i]).collect();
                inst.group().product(e.iter().copied()) == g
                    && e.iter().zip(&res.b).any(|(a, b)| b.contains(a))
            })
        };
        let pos = res
            .c
            .iter()
            .position(|&g| !rect_covered(g))
            .expect("a C element only C covers");
        let mut cut = res.clone();
        let lost = cut.c.remove(pos);
        assert_eq!(verify_cover(&inst, &cut).uncovered, Some(lost));
    }

    #[test]
    fn non_zero_product_is_rejected() {
        // The augmentation ideal of F_5[C_5] has a nonzero cube.
        let g = Arc::new(build_group(&"abelian:5".parse().unwrap()).unwrap());
        let f = DegreeFilter {
            weights: vec![1.into()],
            eta: crate::subspaces::Rational::new(1, 5),
            k: 3,
        };
        let x = build_filtered_subspace(&g, 3, &f).unwrap();
        let inst = CoverInstance::new(
            &g,
            vec![x.clone(), x.clone(), x],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        assert!(matches!(compute_cover(&inst), Err(Error::NotZeroProduct)));
    }
}
