//! Ground truth for the combinatorial bounds: equation-free sets, their
//! exact maxima on small groups, tri-colored product-free families, and the
//! constructive group-ring proof of Cauchy–Davenport.
//!
//! Equations are `g_1^{n_1} ⋯ g_k^{n_k} = 1` with `Σ n_i = 0`, evaluated left
//! to right. A set is equation-free when the only solutions drawn from it
//! have `g_1 = … = g_k`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{augmented_power, AlgebraElement};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groups::{build_group, ElementIndex, FiniteGroup, GroupSpec};
use crate::linalg::{pointwise_product_span, Matrix, Subspace};
use crate::subspaces::{verify_zero_product, FilteredSubspace};

/// Exponents `n_1, …, n_k` of an equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationSpec {
    exponents: Vec<i64>,
}

impl EquationSpec {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::InvalidEquation("need at least two exponents".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidEquation("exponents must be nonzero".into()));
        }
        if exponents.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidEquation(format!(
                "exponents {exponents:?} do not sum to 0"
            )));
        }
        Ok(EquationSpec { exponents })
    }

    /// `x y z^{-2} = 1`, three-term progressions.
    pub fn three_ap() -> Self {
        EquationSpec {
            exponents: vec![1, 1, -2],
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_three_ap(&self) -> bool {
        self.exponents == [1, 1, -2]
    }

    /// Checks `gcd(n_i, |G|) = 1` for every exponent.
    pub fn check_coprime(&self, order: usize) -> Result<()> {
        for &n in &self.exponents {
            if n.unsigned_abs().gcd(&(order as u64)) != 1 {
                return Err(Error::NotCoprime { exponent: n, order });
            }
        }
        Ok(())
    }
}

impl FromStr for EquationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidEquation(format!("bad exponent {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EquationSpec::new(exps)
    }
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Precomputed `a ↦ a^{n_i}` tables.
struct PowerTables<'a> {
    group: &'a FiniteGroup,
    tables: Vec<Vec<ElementIndex>>,
}

impl<'a> PowerTables<'a> {
    fn new(group: &'a FiniteGroup, eq: &EquationSpec) -> Self {
        let tables = eq
            .exponents
            .iter()
            .map(|&n| group.elements().map(|a| group.power(a, n)).collect())
            .collect();
        PowerTables { group, tables }
    }

    fn k(&self) -> usize {
        self.tables.len()
    }

    /// Searches tuples over `pool` for a solution that is not constant and
    /// uses every element of `required` at least once. Tuples are visited in
    /// lexicographic order of pool positions.
    fn find_violation(
        &self,
        pool: &[ElementIndex],
        required: &[ElementIndex],
    ) -> Option<Vec<ElementIndex>> {
        let mut path = Vec::with_capacity(self.k());
        self.walk(pool, required, self.group.identity(), &mut path)
    }

    fn walk(
        &self,
        pool: &[ElementIndex],
        required: &[ElementIndex],
        prefix: ElementIndex,
        path: &mut Vec<ElementIndex>,
    ) -> Option<Vec<ElementIndex>> {
        let depth = path.len();
        let remaining = self.k() - depth;
        let missing = required.iter().filter(|r| !path.contains(r)).count();
        if missing > remaining {
            return None;
        }
        if depth == self.k() {
            let constant = path.iter().all(|&g| g == path[0]);
            return (prefix == self.group.identity() && !constant).then(|| path.clone());
        }
        for &a in pool {
            let next = self.group.multiply(prefix, self.tables[depth][a]);
            path.push(a);
            let found = self.walk(pool, required, next, path);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Verdict of [`check_equation_free`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub set: Vec<ElementIndex>,
    /// First violating tuple in lexicographic order, if any.
    pub violation: Option<Vec<ElementIndex>>,
}

impl WitnessSet {
    pub fn is_free(&self) -> bool {
        self.violation.is_none()
    }
}

fn normalize_set(group: &FiniteGroup, set: &[ElementIndex]) -> Result<Vec<ElementIndex>> {
    if let Some(&bad) = set.iter().find(|&&a| a >= group.order()) {
        return Err(Error::InvalidInput(format!(
            "element {bad} outside a group of order {}",
            group.order()
        )));
    }
    Ok(set
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// Scans all `|A|^k` tuples (ascending element order) for a non-constant solution.
pub fn check_equation_free(
    group: &FiniteGroup,
    eq: &EquationSpec,
    set: &[ElementIndex],
) -> Result<WitnessSet> {
    let set = normalize_set(group, set)?;
    let tables = PowerTables::new(group, eq);
    let violation = tables.find_violation(&set, &[]);
    Ok(WitnessSet { set, violation })
}

/// Limits for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Largest group order searched exactly.
    pub cap: usize,
    /// Exact cap for three-term progressions in elementary abelian groups.
    pub three_ap_cap: usize,
    /// Node budget; exceeding it downgrades the result to a lower bound.
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap: 30,
            three_ap_cap: 81,
            node_budget: 20_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub size: usize,
    pub witness: Vec<ElementIndex>,
    /// `true` when `size` is the proven maximum.
    pub exact: bool,
    /// Nodes expanded by the parallel pass; varies with scheduling.
    pub nodes: u64,
}

/// Branch and bound over sets of candidates with a shared incumbent.
///
/// `conflict(set, x, c)` must report whether `set ∪ {x, c}` contains a
/// forbidden configuration using both `x` and `c`, given that `set ∪ {x}`
/// and `set ∪ {c}` are both admissible.
struct Search<'a, F> {
    conflict: &'a F,
    best: AtomicUsize,
    best_set: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
}

impl<'a, F> Search<'a, F>
where
    F: Fn(&[usize], usize, usize) -> bool + Sync,
{
    fn offer(&self, set: &[usize]) {
        let mut guard = self.best_set.lock().expect("incumbent lock");
        if set.len() > guard.len() {
            *guard = set.to_vec();
            self.best.store(set.len(), Ordering::SeqCst);
        }
    }

    fn expand(&self, set: &mut Vec<usize>, cands: &[usize]) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        if set.len() > self.best.load(Ordering::SeqCst) {
            self.offer(set);
        }
        for (i, &x) in cands.iter().enumerate() {
            if set.len() + cands.len() - i <= self.best.load(Ordering::SeqCst) {
                return;
            }
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&c| !(self.conflict)(set, x, c))
                .collect();
            set.push(x);
            self.expand(set, &next);
            set.pop();
        }
    }

    /// Top level: branches on the next included candidate, in parallel.
    fn run(conflict: &'a F, start: Vec<usize>, cands: Vec<usize>, budget: u64) -> SearchResult {
        let s = Search {
            conflict,
            best: AtomicUsize::new(0),
            best_set: Mutex::new(Vec::new()),
            nodes: AtomicU64::new(0),
            budget,
            aborted: AtomicBool::new(false),
        };
        s.offer(&start);
        (0..cands.len()).into_par_iter().for_each(|i| {
            if start.len() + cands.len() - i <= s.best.load(Ordering::SeqCst) {
                return;
            }
            let x = cands[i];
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&c| !conflict(&start, x, c))
                .collect();
            let mut set = start.clone();
            set.push(x);
            s.expand(&mut set, &next);
        });
        let found = s.best_set.into_inner().expect("incumbent lock");
        let mut budget_left = budget;
        let mut witness = first_of_size(
            conflict,
            &mut start.clone(),
            &cands,
            found.len(),
            &mut budget_left,
        )
        .unwrap_or(found);
        witness.sort_unstable();
        SearchResult {
            size: witness.len(),
            witness,
            exact: !s.aborted.load(Ordering::SeqCst),
            nodes: s.nodes.load(Ordering::SeqCst),
        }
    }
}

/// First set of size `target` in depth-first candidate order. Which maximum
/// the parallel pass reports depends on thread timing; this pass does not.
fn first_of_size<F>(
    conflict: &F,
    set: &mut Vec<usize>,
    cands: &[usize],
    target: usize,
    budget: &mut u64,
) -> Option<Vec<usize>>
where
    F: Fn(&[usize], usize, usize) -> bool,
{
    if set.len() >= target {
        return Some(set.clone());
    }
    for (i, &x) in cands.iter().enumerate() {
        if set.len() + cands.len() - i < target || *budget == 0 {
            return None;
        }
        *budget -= 1;
        let next: Vec<usize> = cands[i + 1..]
            .iter()
            .copied()
            .filter(|&c| !conflict(set, x, c))
            .collect();
        set.push(x);
        let found = first_of_size(conflict, set, &next, target, budget);
        set.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn is_elementary_abelian(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::Abelian { orders } => orders.iter().all(|&n| n == 1 || Some(n) == spec.prime()),
        _ => false,
    }
}

/// Largest equation-free subset of `group`.
///
/// In abelian groups solutions are translation invariant (`Σ n_i = 0`), so
/// the identity is fixed as the least element of the set. Beyond the exact
/// cap, or when the node budget runs out, the best set found is returned
/// with `exact = false`.
pub fn max_equation_free(
    group: &FiniteGroup,
    eq: &EquationSpec,
    config: &SearchConfig,
) -> SearchResult {
    let tables = PowerTables::new(group, eq);
    let cap = if eq.is_three_ap() && is_elementary_abelian(group.spec()) {
        config.three_ap_cap.max(config.cap)
    } else {
        config.cap
    };
    let within_cap = group.order() <= cap;
    let conflict = |set: &[usize], x: usize, c: usize| {
        let mut pool = set.to_vec();
        pool.push(x);
        pool.push(c);
        tables.find_violation(&pool, &[x, c]).is_some()
    };
    let (start, cands): (Vec<usize>, Vec<usize>) = if group.spec().is_abelian_family() {
        let e = group.identity();
        let cands = group
            .elements()
            .filter(|&c| c != e && !conflict(&[], e, c))
            .collect();
        (vec![e], cands)
    } else {
        (Vec::new(), group.elements().collect())
    };
    let mut r = Search::run(&conflict, start, cands, config.node_budget);
    r.exact &= within_cap;
    r
}

/// Checks that `a ↦ a^n` is a bijection of the group.
pub fn power_map_is_bijection(group: &FiniteGroup, n: i64) -> bool {
    let image: BTreeSet<ElementIndex> = group.elements().map(|a| group.power(a, n)).collect();
    image.len() == group.order()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationBound {
    pub equation: String,
    pub codims: Vec<usize>,
    /// Classes of equivalent indices (0-based).
    pub classes: Vec<Vec<usize>>,
    /// One representative per class.
    pub representatives: Vec<usize>,
    pub bound: usize,
    pub tuples_checked: u64,
}

/// Upper bound for equation-free sets from zero-product subspaces `X_1..X_k`.
///
/// Indices `i, j` are equivalent when `X_i = X_j` and `n_i = n_j`. With a
/// system `I` of representatives the bound is `Σ_{i∈I} t_i`, or `2 t_1`
/// when there is a single class.
pub fn bound_equation_free(
    group: &FiniteGroup,
    eq: &EquationSpec,
    xs: &[FilteredSubspace],
) -> Result<EquationBound> {
    if xs.len() != eq.k() {
        return Err(Error::DimensionMismatch {
            expected: eq.k(),
            found: xs.len(),
        });
    }
    if xs.iter().any(|x| !x.group().same_group(group)) {
        return Err(Error::GroupMismatch);
    }
    eq.check_coprime(group.order())?;
    for &n in eq.exponents() {
        if !power_map_is_bijection(group, n) {
            return Err(Error::NotCoprime {
                exponent: n,
                order: group.order(),
            });
        }
    }
    let report = verify_zero_product(xs)?;
    if !report.verified {
        return Err(Error::NotZeroProduct);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..xs.len() {
        let n = eq.exponents()[i];
        match classes
            .iter_mut()
            .find(|c| eq.exponents()[c[0]] == n && xs[c[0]].same_as(&xs[i]))
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let bound = if representatives.len() >= 2 {
        representatives.iter().map(|&i| xs[i].codim()).sum()
    } else {
        2 * xs[0].codim()
    };
    Ok(EquationBound {
        equation: eq.to_string(),
        codims: xs.iter().map(FilteredSubspace::codim).collect(),
        classes,
        representatives,
        bound,
        tuples_checked: report.tuples_checked,
    })
}

/// `X'_i = {f : A → F | Σ_a f(a) a^{n_i} ∈ X_i}`, as subspaces of `F^A` with
/// coordinates in the order of `set`.
pub fn pullback_subspaces(
    group: &FiniteGroup,
    eq: &EquationSpec,
    set: &[ElementIndex],
    xs: &[FilteredSubspace],
) -> Result<Vec<Subspace>> {
    if xs.len() != eq.k() {
        return Err(Error::DimensionMismatch {
            expected: eq.k(),
            found: xs.len(),
        });
    }
    let field = group.field()?;
    let d = set.len();
    xs.iter()
        .zip(eq.exponents())
        .map(|(x, &n)| {
            let q = x.to_subspace()?.constraints();
            let mut m = Matrix::zeros(field, q.rows(), d);
            for (j, &a) in set.iter().enumerate() {
                let col = group.power(a, n);
                for r in 0..q.rows() {
                    m.set(r, j, q.get(r, col));
                }
            }
            Subspace::span(field, d, m.kernel())
        })
        .collect()
}

/// Outcome of [`span_sum_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanSumBound {
    pub d: usize,
    /// Codimensions of the pairwise distinct subspaces among the family.
    pub distinct_codims: Vec<usize>,
    pub codim_y: usize,
    /// `Σ_a f(a) = 0` for every `f` in the product span.
    pub sums_vanish: bool,
    pub bound: usize,
}

impl SpanSumBound {
    /// The conclusion `d ≤ bound`, required whenever the sums vanish.
    pub fn holds(&self) -> bool {
        !self.sums_vanish || self.d <= self.bound
    }
}

/// Checks the hypothesis and conclusion of the product-span bound on `d`.
pub fn span_sum_bound(xs: &[Subspace]) -> Result<SpanSumBound> {
    let y = pointwise_product_span(xs)?;
    let f = y.field();
    let sums_vanish = y
        .basis()
        .iter()
        .all(|v| v.iter().fold(0, |acc, &c| f.add(acc, c)) == 0);
    let mut distinct: Vec<&Subspace> = Vec::new();
    for x in xs {
        if !distinct.iter().any(|z| z.same_as(x)) {
            distinct.push(x);
        }
    }
    let distinct_codims: Vec<usize> = distinct.iter().map(|z| z.codim()).collect();
    let bound = if distinct.len() >= 2 {
        distinct_codims.iter().sum()
    } else {
        2 * distinct_codims[0]
    };
    Ok(SpanSumBound {
        d: y.ambient_dim(),
        distinct_codims,
        codim_y: y.codim(),
        sums_vanish,
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub search: SearchResult,
    pub bound: EquationBound,
    /// `size ≤ bound`; only meaningful when the search was exact.
    pub sound: bool,
}

/// Runs the exact search and the bound together and checks soundness.
pub fn certify_equation_free(
    group: &FiniteGroup,
    eq: &EquationSpec,
    xs: &[FilteredSubspace],
    config: &SearchConfig,
) -> Result<Certification> {
    let bound = bound_equation_free(group, eq, xs)?;
    let search = max_equation_free(group, eq, config);
    let sound = search.size <= bound.bound;
    Ok(Certification {
        search,
        bound,
        sound,
    })
}

/// Verdict of [`check_tricolor`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriColorCheck {
    pub valid: bool,
    /// Index tuple `(a_1, …, a_k)` breaking the condition.
    pub violation: Option<Vec<usize>>,
}

/// Checks `x^{(1)}_{a_1} ⋯ x^{(k)}_{a_k} = 1 ⇔ a_1 = … = a_k` over all index tuples.
pub fn check_tricolor(group: &FiniteGroup, tuples: &[Vec<ElementIndex>]) -> Result<TriColorCheck> {
    let Some(k) = tuples.first().map(Vec::len) else {
        return Ok(TriColorCheck {
            valid: true,
            violation: None,
        });
    };
    if k < 2 {
        return Err(Error::InvalidInput(
            "tuples need at least two colors".into(),
        ));
    }
    for t in tuples {
        if t.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: t.len(),
            });
        }
        normalize_set(group, t)?;
    }
    let all: Vec<usize> = (0..tuples.len()).collect();
    let violation = tricolor_violation(group, tuples, &all, &[]);
    Ok(TriColorCheck {
        valid: violation.is_none(),
        violation,
    })
}

/// First index tuple over `pool` using all of `required` that breaks the
/// iff-condition, in lexicographic order of pool positions.
fn tricolor_violation(
    group: &FiniteGroup,
    tuples: &[Vec<ElementIndex>],
    pool: &[usize],
    required: &[usize],
) -> Option<Vec<usize>> {
    fn walk(
        group: &FiniteGroup,
        tuples: &[Vec<ElementIndex>],
        pool: &[usize],
        required: &[usize],
        prefix: ElementIndex,
        path: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let k = tuples[0].len();
        let depth = path.len();
        if required.iter().filter(|r| !path.contains(r)).count() > k - depth {
            return None;
        }
        if depth == k {
            let diagonal = path.iter().all(|&a| a == path[0]);
            let is_one = prefix == group.identity();
            return (diagonal != is_one).then(|| path.clone());
        }
        for &a in pool {
            path.push(a);
            let found = walk(
                group,
                tuples,
                pool,
                required,
                group.multiply(prefix, tuples[a][depth]),
                path,
            );
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    walk(
        group,
        tuples,
        pool,
        required,
        group.identity(),
        &mut Vec::new(),
    )
}

/// Largest tri-colored product-free family of `k`-tuples.
///
/// Candidates are the `(k−1)`-tuples of group elements completed by the
/// unique last coordinate making the diagonal product trivial. Exact for
/// `|G| ≤ max_order`; larger groups, or an exhausted budget, give a lower bound.
pub fn max_tricolor(
    group: &FiniteGroup,
    k: usize,
    max_order: usize,
    node_budget: u64,
) -> Result<(Vec<Vec<ElementIndex>>, SearchResult)> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let n = group.order();
    let count = n
        .checked_pow(k as u32 - 1)
        .filter(|&c| c <= 1 << 22)
        .ok_or_else(|| Error::TooLarge(format!("{n}^{} candidate tuples", k - 1)))?;
    let candidates: Vec<Vec<ElementIndex>> = (0..count)
        .map(|mut code| {
            let mut t: Vec<ElementIndex> = (0..k - 1)
                .map(|_| {
                    let a = code % n;
                    code /= n;
                    a
                })
                .collect();
            t.reverse();
            let prod = group.product(t.iter().copied());
            t.push(group.inverse(prod));
            t
        })
        .collect();
    let conflict = |set: &[usize], x: usize, c: usize| {
        let mut pool = set.to_vec();
        pool.push(x);
        pool.push(c);
        tricolor_violation(group, &candidates, &pool, &[x, c]).is_some()
    };
    let mut r = Search::run(
        &conflict,
        Vec::new(),
        (0..candidates.len()).collect(),
        node_budget,
    );
    r.exact &= n <= max_order;
    let family = r.witness.iter().map(|&i| candidates[i].clone()).collect();
    Ok((family, r))
}

/// `Σ t_i` for zero-product subspaces `X_1..X_k`.
pub fn tricolor_bound(xs: &[FilteredSubspace]) -> Result<usize> {
    let report = verify_zero_product(xs)?;
    if !report.verified {
        return Err(Error::NotZeroProduct);
    }
    Ok(xs.iter().map(FilteredSubspace::codim).sum())
}

/// The triples `(a, a, a^{−2})` induced by a set.
pub fn tricolor_from_progression_free(
    group: &FiniteGroup,
    set: &[ElementIndex],
) -> Vec<Vec<ElementIndex>> {
    set.iter()
        .map(|&a| vec![a, a, group.power(a, -2)])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyDavenportReport {
    pub p: u32,
    pub sets: [Vec<u32>; 3],
    /// Coefficient functions `u, v, w` on `A, B, C`, listed in set order.
    pub coefficients: [Vec<u32>; 3],
    /// Coefficients of `U V W` on `g^0, …, g^{p−1}`.
    pub product: Vec<u32>,
    pub equals_top_power: bool,
    pub all_nonzero: bool,
    /// Brute-force check that `A + B + C` is all of `C_p`.
    pub sumset_is_group: bool,
}

impl CauchyDavenportReport {
    pub fn verified(&self) -> bool {
        self.equals_top_power && self.all_nonzero && self.sumset_is_group
    }
}

/// Solves `Σ_i u_i C(α_i, j) = [j = |A| − 1]` for `j < |A|`, so that
/// `Σ u_i g^{α_i} ∈ τ^{|A|−1}(1 + τ F_p[τ])` with `τ = g − 1`.
pub fn leading_coefficients(field: Fp, set: &[u32]) -> Result<Vec<u32>> {
    let m = set.len();
    let mut mat = Matrix::zeros(field, m, m);
    for j in 0..m {
        for (i, &a) in set.iter().enumerate() {
            mat.set(j, i, field.binomial(a as u64, j as u64));
        }
    }
    let mut rhs = vec![0; m];
    rhs[m - 1] = 1;
    mat.solve(&rhs)?.ok_or(Error::Inconsistent)
}

/// Constructive Cauchy–Davenport in `C_p` for `|A| + |B| + |C| = p + 2`.
pub fn cauchy_davenport(p: u32, a: &[u32], b: &[u32], c: &[u32]) -> Result<CauchyDavenportReport> {
    let field = Fp::new(p as u64)?;
    let mut sets: [Vec<u32>; 3] = Default::default();
    for (slot, s) in sets.iter_mut().zip([a, b, c]) {
        let norm: BTreeSet<u32> = s.iter().copied().collect();
        if norm.is_empty() || norm.len() != s.len() || norm.iter().any(|&x| x >= p) {
            return Err(Error::InvalidInput(format!(
                "{s:?} is not a nonempty set of residues mod {p}"
            )));
        }
        *slot = s.to_vec();
    }
    let total: usize = sets.iter().map(Vec::len).sum();
    if total != p as usize + 2 {
        return Err(Error::InvalidInput(format!(
            "set sizes sum to {total}, expected {}",
            p + 2
        )));
    }
    let group = Arc::new(build_group(&GroupSpec::Abelian {
        orders: vec![p as u64],
    })?);
    let gen = group.generators()[0].index;
    let mut coefficients: [Vec<u32>; 3] = Default::default();
    let mut factors = Vec::new();
    for (slot, s) in coefficients.iter_mut().zip(&sets) {
        let u = leading_coefficients(field, s)?;
        let elem = AlgebraElement::from_terms(
            &group,
            field,
            s.iter()
                .zip(&u)
                .map(|(&x, &c)| (group.power(gen, x as i64), c as i64)),
        );
        factors.push(elem);
        *slot = u;
    }
    let product = AlgebraElement::product_of(&group, field, &factors)?;
    let top = augmented_power(&group, field, gen, p - 1);
    let coeffs: Vec<u32> = (0..p)
        .map(|i| product.coeffs()[group.power(gen, i as i64)])
        .collect();
    let mut sumset = BTreeSet::new();
    for &x in &sets[0] {
        for &y in &sets[1] {
            for &z in &sets[2] {
                sumset.insert((x + y + z) % p);
            }
        }
    }
    Ok(CauchyDavenportReport {
        p,
        equals_top_power: product == top,
        all_nonzero: coeffs.iter().all(|&c| c != 0),
        product: coeffs,
        coefficients,
        sets,
        sumset_is_group: sumset.len() == p as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspaces::{build_filtered_subspace, DegreeFilter};

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn equation_parsing() {
        assert_eq!(
            "1,1,-2".parse::<EquationSpec>().unwrap(),
            EquationSpec::three_ap()
        );
        assert!("1,1".parse::<EquationSpec>().is_err());
        assert!("2".parse::<EquationSpec>().is_err());
        assert!("1,0,-1".parse::<EquationSpec>().is_err());
    }

    #[test]
    fn check_examples() {
        let g = grp("abelian:3");
        let eq = EquationSpec::three_ap();
        assert!(check_equation_free(&g, &eq, &[0, 1]).unwrap().is_free());
        let full = check_equation_free(&g, &eq, &[0, 1, 2]).unwrap();
        // (0, 1, 2): 0 + 1 − 4 ≡ 0 is the lexicographically first solution.
        assert_eq!(full.violation, Some(vec![0, 1, 2]));
        let tables = PowerTables::new(&g, &eq);
        assert_eq!(
            g.product([0, 2].iter().map(|&a| a).chain([tables.tables[2][1]])),
            0
        );
        assert!(check_equation_free(&g, &eq, &[2]).unwrap().is_free());
    }

    #[test]
    fn small_maxima() {
        let cfg = SearchConfig::default();
        let eq = EquationSpec::three_ap();
        let r = max_equation_free(&grp("abelian:3"), &eq, &cfg);
        assert_eq!((r.size, r.exact), (2, true));
        let g = grp("abelian:3,3");
        let r = max_equation_free(&g, &eq, &cfg);
        assert_eq!((r.size, r.exact), (4, true));
        assert!(check_equation_free(&g, &eq, &r.witness).unwrap().is_free());
        let r = max_equation_free(&grp("abelian:1"), &eq, &cfg);
        assert_eq!(r.size, 1);
    }

    #[test]
    fn nonabelian_search_is_checked() {
        let g = grp("heisenberg:p=3,n=2");
        let r = max_equation_free(&g, &EquationSpec::three_ap(), &SearchConfig::default());
        assert!(r.exact);
        assert!(
            check_equation_free(&g, &EquationSpec::three_ap(), &r.witness)
                .unwrap()
                .is_free()
        );
    }

    #[test]
    fn bound_examples() {
        let g = grp("abelian:3,3");
        let f = DegreeFilter::uniform(3, 2);
        let x = build_filtered_subspace(&g, 3, &f).unwrap();
        let xs = vec![x.clone(), x.clone(), x];
        let b = bound_equation_free(&g, &EquationSpec::three_ap(), &xs).unwrap();
        assert_eq!(b.representatives, vec![0, 2]);
        assert_eq!(b.bound, 6);

        let c3 = grp("abelian:3");
        let x = build_filtered_subspace(&c3, 3, &DegreeFilter::uniform(3, 1)).unwrap();
        let b = bound_equation_free(&c3, &EquationSpec::three_ap(), &[x.clone(), x.clone(), x])
            .unwrap();
        assert_eq!(b.bound, 2);
    }

    #[test]
    fn four_term_equation_merges_into_two_classes() {
        let g = grp("abelian:5");
        let x = build_filtered_subspace(&g, 4, &DegreeFilter::uniform(4, 1)).unwrap();
        let eq: EquationSpec = "1,1,-1,-1".parse().unwrap();
        let b =
            bound_equation_free(&g, &eq, &[x.clone(), x.clone(), x.clone(), x.clone()]).unwrap();
        assert_eq!(b.representatives.len(), 2);
        assert_eq!(b.bound, 2 * x.codim());
    }

    #[test]
    fn non_coprime_exponent_is_rejected() {
        let g = grp("abelian:3");
        let x = build_filtered_subspace(&g, 3, &DegreeFilter::uniform(3, 1)).unwrap();
        let eq: EquationSpec = "1,2,-3".parse().unwrap();
        assert!(matches!(
            bound_equation_free(&g, &eq, &[x.clone(), x.clone(), x]),
            Err(Error::NotCoprime { exponent: -3, .. })
        ));
    }

    #[test]
    fn tricolor_examples() {
        let g = grp("abelian:3");
        assert!(
            check_tricolor(&g, &[vec![0, 0, 0], vec![1, 1, 1]])
                .unwrap()
                .valid
        );
        assert!(check_tricolor(&g, &[]).unwrap().valid);
        assert!(
            !check_tricolor(&g, &[vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]])
                .unwrap()
                .valid
        );
        let x = build_filtered_subspace(&g, 3, &DegreeFilter::uniform(3, 1)).unwrap();
        assert_eq!(tricolor_bound(&[x.clone(), x.clone(), x]).unwrap(), 3);
        let (family, r) = max_tricolor(&g, 3, 12, 1_000_000).unwrap();
        assert!(r.exact);
        // Three triples would force every color to be a permutation of C_3, and then
        // nine index triples multiply to the identity instead of three.
        assert_eq!(r.size, 2);
        assert!(check_tricolor(&g, &family).unwrap().valid);
    }

    #[test]
    fn progression_free_sets_give_tricolor_families() {
        let g = grp("abelian:3,3");
        let r = max_equation_free(&g, &EquationSpec::three_ap(), &SearchConfig::default());
        let t = tricolor_from_progression_free(&g, &r.witness);
        assert!(check_tricolor(&g, &t).unwrap().valid);
    }

    #[test]
    fn cauchy_davenport_examples() {
        let r = cauchy_davenport(5, &[0, 1, 2], &[0, 1], &[0, 1]).unwrap();
        assert!(r.verified(), "{r:?}");
        assert_eq!(r.product, vec![1; 5]);
        assert!(cauchy_davenport(3, &[0, 1], &[0, 1], &[0])
            .unwrap()
            .verified());
        let r = cauchy_davenport(3, &[0], &[0], &[0, 1, 2]).unwrap();
        assert!(r.equals_top_power && r.sumset_is_group);
        assert!(cauchy_davenport(5, &[0, 1], &[0, 1], &[0, 1]).is_err());
    }

    #[test]
    fn span_sum_bound_on_a_cap_set() {
        let g = grp("abelian:3,3");
        let eq = EquationSpec::three_ap();
        let x = build_filtered_subspace(&g, 3, &DegreeFilter::uniform(3, 2)).unwrap();
        let xs = vec![x.clone(), x.clone(), x];
        let set = max_equation_free(&g, &eq, &SearchConfig::default()).witness;
        let pulled = pullback_subspaces(&g, &eq, &set, &xs).unwrap();
        assert!(pulled.iter().all(|z| z.codim() <= 3));
        let c = span_sum_bound(&pulled).unwrap();
        assert!(c.sums_vanish);
        assert!(c.holds());
    }
}
