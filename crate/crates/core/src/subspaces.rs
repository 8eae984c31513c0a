//! Degree-filtered zero-product subspaces of F_p[G] and the rate constants
//! that control their codimension.
//!
//! A filter keeps the monomials whose degree is strictly above an `η` share
//! of the maximal degree. With shares summing to 1, any product of `k`
//! kept monomials has total degree above the maximum and therefore
//! vanishes. Degrees:
//!
//! * abelian `∏ C_{N_j}`: `Σ λ_j m_j / (N_j − 1)` (maximum `Σ λ_j`);
//! * Heisenberg: `2γ + Σβ_i + Σα_i` (maximum `2n(p − 1)`);
//! * unitriangular: `Σ (j − i) α_{ij}` (maximum `(p − 1)(n³ − n)/6`).
//!
//! Membership is decided in exact rational arithmetic. The rate functions
//! `S_N`, `a_N(k)` and `κ_N` are floating point.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{monomial_element, monomial_indices, AlgebraElement, MonomialIndex};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::linalg::Subspace;

pub type Rational = Ratio<i64>;

/// Parses `"2/5"`, `"3"` or a finite decimal such as `"0.4"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let mag = int.abs() * den + f;
        return Ok(Rational::new(if neg { -mag } else { mag }, den));
    }
    Ok(Rational::from_integer(s.parse().map_err(|_| bad())?))
}

/// Best rational approximation with denominator at most `max_den`.
pub fn approximate_rational(x: f64, max_den: i64) -> Rational {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i64;
        let h2 = ai.saturating_mul(h1).saturating_add(h0);
        let k2 = ai.saturating_mul(k1).saturating_add(k0);
        if k2 > max_den || k2 <= 0 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    Rational::new(h1, k1)
}

/// One degree filter: weights `λ_j` (abelian only) and threshold share `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeFilter {
    pub weights: Vec<Rational>,
    pub eta: Rational,
    pub k: usize,
}

impl DegreeFilter {
    /// Unit weights and `η = 1/k`.
    pub fn uniform(k: usize, n_weights: usize) -> Self {
        DegreeFilter {
            weights: vec![Rational::one(); n_weights],
            eta: Rational::new(1, k.max(1) as i64),
            k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidFilter("k must be positive".into()));
        }
        if self.eta <= Rational::zero() || self.eta > Rational::one() {
            return Err(Error::InvalidFilter(format!(
                "share {} outside (0, 1]",
                self.eta
            )));
        }
        if let Some(w) = self.weights.iter().find(|w| **w <= Rational::zero()) {
            return Err(Error::InvalidFilter(format!("non-positive weight {w}")));
        }
        Ok(())
    }
}

/// Builds `k` filters sharing `weights` with the given shares, which must sum to 1.
pub fn filter_family(weights: &[Rational], etas: &[Rational]) -> Result<Vec<DegreeFilter>> {
    let total = etas.iter().fold(Rational::zero(), |a, &b| a + b);
    if total != Rational::one() {
        return Err(Error::InvalidFilter(format!(
            "shares sum to {total}, not 1"
        )));
    }
    let k = etas.len();
    let family: Vec<DegreeFilter> = etas
        .iter()
        .map(|&eta| DegreeFilter {
            weights: weights.to_vec(),
            eta,
            k,
        })
        .collect();
    for f in &family {
        f.validate()?;
    }
    Ok(family)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    AbelianWeighted,
    Heisenberg,
    Unitriangular,
}

/// Integer degree of a reduced monomial in a matrix group, and the maximum.
pub fn matrix_degree(group: &FiniteGroup, m: &[u32]) -> Option<(u64, u64)> {
    match group.spec() {
        GroupSpec::Heisenberg { p, n } => {
            let deg = 2 * m[0] as u64 + m[1..].iter().map(|&e| e as u64).sum::<u64>();
            Some((deg, 2 * *n as u64 * (p - 1)))
        }
        GroupSpec::Unitriangular { n, p } => {
            let deg = group
                .generators()
                .iter()
                .zip(m)
                .map(|(g, &e)| {
                    let (i, j) = g.unit.expect("matrix generator");
                    (j - i) as u64 * e as u64
                })
                .sum();
            let n = *n as u64;
            Some((deg, (p - 1) * (n * n * n - n) / 6))
        }
        GroupSpec::Abelian { .. } => None,
    }
}

/// A zero-product candidate spanned by the monomials passing a filter.
#[derive(Clone, Debug)]
pub struct FilteredSubspace {
    group: Arc<FiniteGroup>,
    filter: DegreeFilter,
    kind: DegreeKind,
    monomials: Vec<MonomialIndex>,
    codim: usize,
}

impl FilteredSubspace {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn filter(&self) -> &DegreeFilter {
        &self.filter
    }

    pub fn kind(&self) -> DegreeKind {
        self.kind
    }

    pub fn monomials(&self) -> &[MonomialIndex] {
        &self.monomials
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Two filtered subspaces are equal when they keep the same monomials.
    pub fn same_as(&self, other: &FilteredSubspace) -> bool {
        self.group.same_group(&other.group) && self.monomials == other.monomials
    }

    /// The kept monomials expanded in the group-element basis.
    pub fn elements(&self) -> Result<Vec<AlgebraElement>> {
        self.monomials
            .iter()
            .map(|m| monomial_element(&self.group, m))
            .collect()
    }

    /// The subspace of F_p^{|G|} spanned by the kept monomials.
    pub fn to_subspace(&self) -> Result<Subspace> {
        let field = self.group.field()?;
        let vectors = self.elements()?.into_iter().map(|e| e.coeffs().to_vec());
        Subspace::span(field, self.group.order(), vectors)
    }
}

pub fn build_filtered_subspace(
    group: &Arc<FiniteGroup>,
    k: usize,
    filter: &DegreeFilter,
) -> Result<FilteredSubspace> {
    filter.validate()?;
    if filter.k != k {
        return Err(Error::InvalidFilter(format!(
            "filter built for k = {}, used with k = {k}",
            filter.k
        )));
    }
    group.field()?;
    let (kind, keep): (DegreeKind, Box<dyn Fn(&[u32]) -> bool>) = match group.spec() {
        GroupSpec::Abelian { orders } => {
            if filter.weights.len() != orders.len() {
                return Err(Error::InvalidFilter(format!(
                    "{} weights for {} cyclic factors",
                    filter.weights.len(),
                    orders.len()
                )));
            }
            let coef: Vec<Option<Ratio<i128>>> = orders
                .iter()
                .zip(&filter.weights)
                .map(|(&n, w)| (n > 1).then(|| widen(*w) / Ratio::from_integer(n as i128 - 1)))
                .collect();
            let total: Ratio<i128> = orders
                .iter()
                .zip(&filter.weights)
                .filter(|(&n, _)| n > 1)
                .fold(Ratio::zero(), |a, (_, w)| a + widen(*w));
            let threshold = widen(filter.eta) * total;
            let keep = move |m: &[u32]| {
                let deg = m
                    .iter()
                    .zip(&coef)
                    .filter_map(|(&e, c)| c.map(|c| c * Ratio::from_integer(e as i128)))
                    .fold(Ratio::zero(), |a, b| a + b);
                deg > threshold
            };
            (DegreeKind::AbelianWeighted, Box::new(keep))
        }
        spec => {
            let kind = if matches!(spec, GroupSpec::Heisenberg { .. }) {
                DegreeKind::Heisenberg
            } else {
                DegreeKind::Unitriangular
            };
            let g = Arc::clone(group);
            let eta = filter.eta;
            let keep = move |m: &[u32]| {
                let (deg, max) = matrix_degree(&g, m).expect("matrix family");
                // deg > η·max  ⇔  deg·den > num·max
                (deg as i128) * (*eta.denom() as i128) > (*eta.numer() as i128) * max as i128
            };
            (kind, Box::new(keep))
        }
    };
    let monomials: Vec<MonomialIndex> = monomial_indices(group).filter(|m| keep(m)).collect();
    let codim = group.order() - monomials.len();
    Ok(FilteredSubspace {
        group: Arc::clone(group),
        filter: filter.clone(),
        kind,
        monomials,
        codim,
    })
}

/// One filtered subspace per filter of the family.
pub fn build_family(
    group: &Arc<FiniteGroup>,
    filters: &[DegreeFilter],
) -> Result<Vec<FilteredSubspace>> {
    filters
        .iter()
        .map(|f| build_filtered_subspace(group, filters.len(), f))
        .collect()
}

fn widen(r: Rational) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

/// Outcome of [`verify_zero_product`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroProductReport {
    pub verified: bool,
    /// Monomial exponent tuples of a nonvanishing product, if any.
    pub witness: Option<Vec<MonomialIndex>>,
    /// Number of monomial tuples covered (tuples under a vanishing prefix included).
    pub tuples_checked: u64,
}

/// Multiplies every tuple of kept monomials `u_1 ⋯ u_k` and checks that all vanish.
///
/// Prefix products are shared: once `u_1 ⋯ u_j = 0`, every extension is
/// zero and is counted without being multiplied out. The first index is
/// split across worker threads; the reported witness is the
/// lexicographically first failing tuple.
pub fn verify_zero_product(xs: &[FilteredSubspace]) -> Result<ZeroProductReport> {
    let first = xs
        .first()
        .ok_or_else(|| Error::InvalidInput("empty subspace family".into()))?;
    for x in &xs[1..] {
        if !x.group.same_group(&first.group) {
            return Err(Error::GroupMismatch);
        }
    }
    let elems: Vec<Vec<AlgebraElement>> = xs
        .iter()
        .map(FilteredSubspace::elements)
        .collect::<Result<_>>()?;
    let sizes: Vec<u64> = elems.iter().map(|e| e.len() as u64).collect();
    // tail[j] = number of tuples over factors j..k
    let mut tail = vec![1u64; xs.len() + 1];
    for j in (0..xs.len()).rev() {
        tail[j] = tail[j + 1].saturating_mul(sizes[j]);
    }

    fn walk(
        elems: &[Vec<AlgebraElement>],
        tail: &[u64],
        depth: usize,
        prefix: &AlgebraElement,
        path: &mut Vec<usize>,
        checked: &mut u64,
    ) -> Option<Vec<usize>> {
        if prefix.is_zero() {
            *checked += tail[depth];
            return None;
        }
        if depth == elems.len() {
            *checked += 1;
            return Some(path.clone());
        }
        for (i, e) in elems[depth].iter().enumerate() {
            let next = prefix.multiply(e).expect("same group");
            path.push(i);
            let found = walk(elems, tail, depth + 1, &next, path, checked);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    let results: Vec<(u64, Option<Vec<usize>>)> = (0..elems[0].len())
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            let mut path = vec![i];
            let found = walk(&elems, &tail, 1, &elems[0][i], &mut path, &mut checked);
            (checked, found)
        })
        .collect();
    let tuples_checked = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1).map(|path| {
        path.iter()
            .zip(xs)
            .map(|(&i, x)| x.monomials[i].clone())
            .collect()
    });
    Ok(ZeroProductReport {
        verified: witness.is_none(),
        witness,
        tuples_checked,
    })
}

/// Number of exponent tuples in `∏ [0, N_j)` failing the filter, i.e.
/// `Σ_j λ_j m_j/(N_j − 1) ≤ η Σ_j λ_j`.
///
/// Every term is scaled to an integer by the common denominator of
/// `λ_j/(N_j − 1)` and the threshold; the count is a dynamic program over
/// coordinates keyed by the partial scaled sum.
pub fn exact_codim(orders: &[u64], filter: &DegreeFilter) -> Result<BigUint> {
    filter.validate()?;
    if filter.weights.len() != orders.len() {
        return Err(Error::InvalidFilter(format!(
            "{} weights for {} orders",
            filter.weights.len(),
            orders.len()
        )));
    }
    let active: Vec<(u64, Ratio<i128>)> = orders
        .iter()
        .zip(&filter.weights)
        .filter(|(&n, _)| n > 1)
        .map(|(&n, w)| (n, widen(*w)))
        .collect();
    let total = active.iter().fold(Ratio::<i128>::zero(), |a, (_, w)| a + w);
    let threshold = widen(filter.eta) * total;
    let coefs: Vec<Ratio<i128>> = active
        .iter()
        .map(|(n, w)| w / Ratio::from_integer(*n as i128 - 1))
        .collect();
    let scale = coefs
        .iter()
        .chain(std::iter::once(&threshold))
        .try_fold(1i128, |acc, r| {
            let l = acc.lcm(r.denom());
            (l > 0 && l < (1 << 100)).then_some(l)
        })
        .ok_or_else(|| Error::TooLarge("weight denominators overflow".into()))?;
    let limit = (threshold * Ratio::from_integer(scale)).to_integer();
    let steps: Vec<(u64, i128)> = active
        .iter()
        .zip(&coefs)
        .map(|((n, _), c)| (*n, (c * Ratio::from_integer(scale)).to_integer()))
        .collect();

    let mut counts: HashMap<i128, BigUint> = HashMap::new();
    counts.insert(0, BigUint::one());
    for (n, w) in steps {
        let mut next: HashMap<i128, BigUint> = HashMap::with_capacity(counts.len() * 2);
        for (sum, c) in &counts {
            for m in 0..n as i128 {
                let s = sum + w * m;
                if s > limit {
                    break;
                }
                *next.entry(s).or_insert_with(BigUint::zero) += c;
            }
        }
        counts = next;
    }
    Ok(counts.into_values().sum())
}

/// `N` in the rate constants: a finite order or the limit `N → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RateOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for RateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateOrder::Finite(n) => write!(f, "{n}"),
            RateOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for RateOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(RateOrder::Infinite),
            t => match t.parse::<u64>() {
                Ok(n) if n >= 2 => Ok(RateOrder::Finite(n)),
                _ => Err(Error::InvalidInput(format!(
                    "order must be ≥ 2 or inf, got {t:?}"
                ))),
            },
        }
    }
}

/// `ln S_N(e^t)` with `S_N(x) = (1/N) Σ_{j<N} x^{j/(N−1)}`; the `N = ∞`
/// limit is `ln((e^t − 1)/t)`.
pub fn log_s(order: RateOrder, t: f64) -> f64 {
    match order {
        RateOrder::Finite(n) => {
            let s = t / (n as f64 - 1.0);
            if s == 0.0 {
                return 0.0;
            }
            // Σ_{j<N} e^{js} = expm1(N s) / expm1(s)
            ((n as f64 * s).exp_m1() / s.exp_m1()).ln() - (n as f64).ln()
        }
        RateOrder::Infinite => {
            if t.abs() < 1e-8 {
                (1.0 + t / 2.0 + t * t / 6.0).ln()
            } else {
                (t.exp_m1() / t).ln()
            }
        }
    }
}

/// `S_N(x)` for `x > 0`.
pub fn s_value(order: RateOrder, x: f64) -> f64 {
    log_s(order, x.ln()).exp()
}

/// The objective `ln(x^{−1/k} S_N(x))` at `x = e^t`; convex in `t`.
pub fn rate_objective(order: RateOrder, k: usize, t: f64) -> f64 {
    -t / k as f64 + log_s(order, t)
}

pub const SEARCH_LOW: f64 = -40.0;
pub const SEARCH_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateResult {
    pub order: RateOrder,
    pub k: usize,
    /// `a_N(k) = min_{x ∈ (0,1]} x^{−1/k} S_N(x)`.
    pub value: f64,
    pub argmin: f64,
    /// `κ_N = N·a_N(3)`; `None` for `N = ∞`.
    pub kappa: Option<f64>,
}

fn minimize(order: RateOrder, k: usize) -> (f64, f64) {
    let (mut lo, mut hi) = (SEARCH_LOW, 0.0f64);
    while hi - lo > SEARCH_TOLERANCE {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if rate_objective(order, k, m1) <= rate_objective(order, k, m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let t = 0.5 * (lo + hi);
    (rate_objective(order, k, t).exp(), t.exp())
}

/// Minimizes `x^{−1/k} S_N(x)` over `(0, 1]` by ternary search on `ln x ∈ [−40, 0]`.
pub fn rate(order: RateOrder, k: usize) -> Result<RateResult> {
    if k < 2 {
        return Err(Error::InvalidInput("rate needs k ≥ 2".into()));
    }
    let (value, argmin) = minimize(order, k);
    let kappa = match order {
        RateOrder::Finite(n) => {
            let a3 = if k == 3 { value } else { minimize(order, 3).0 };
            Some(n as f64 * a3)
        }
        RateOrder::Infinite => None,
    };
    Ok(RateResult {
        order,
        k,
        value,
        argmin,
        kappa,
    })
}

/// Second differences of the objective on an evenly spaced grid over the
/// search interval; all must be non-negative (up to rounding) for ternary
/// search to be valid.
pub fn convexity_defect(order: RateOrder, k: usize, points: usize) -> f64 {
    let h = -SEARCH_LOW / (points as f64 - 1.0);
    let f: Vec<f64> = (0..points)
        .map(|i| rate_objective(order, k, SEARCH_LOW + i as f64 * h))
        .collect();
    f.windows(3)
        .map(|w| w[0] - 2.0 * w[1] + w[2])
        .fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalyticBounds {
    /// `∏_j a_{N_j}(k)`, the Chernoff bound on `t/|G|`.
    pub chernoff: f64,
    /// `∏_j κ_{N_j}`.
    pub kappa_product: f64,
}

pub fn analytic_bounds(orders: &[u64], k: usize) -> Result<AnalyticBounds> {
    let mut cache: HashMap<u64, RateResult> = HashMap::new();
    let mut chernoff = 1.0;
    let mut kappa = 1.0;
    for &n in orders.iter().filter(|&&n| n > 1) {
        let r = match cache.get(&n) {
            Some(r) => *r,
            None => {
                let r = rate(RateOrder::Finite(n), k)?;
                cache.insert(n, r);
                r
            }
        };
        chernoff *= r.value;
        kappa *= r.kappa.expect("finite order");
    }
    Ok(AnalyticBounds {
        chernoff,
        kappa_product: kappa,
    })
}

/// Default abelian weights: all ones for homogeneous orders; otherwise
/// `λ_j = ln x*_j / ln x*_base` with `x*_base` the minimizer for the
/// largest order, rounded to denominators at most 1000.
pub fn default_weights(orders: &[u64], k: usize) -> Result<Vec<Rational>> {
    let active: Vec<u64> = orders.iter().copied().filter(|&n| n > 1).collect();
    let homogeneous = active.windows(2).all(|w| w[0] == w[1]);
    if homogeneous || k < 3 {
        return Ok(vec![Rational::one(); orders.len()]);
    }
    let largest = *active.iter().max().expect("non-empty");
    let base = rate(RateOrder::Finite(largest), k)?.argmin.ln();
    orders
        .iter()
        .map(|&n| {
            if n <= 1 {
                return Ok(Rational::one());
            }
            let r = rate(RateOrder::Finite(n), k)?.argmin.ln() / base;
            let q = approximate_rational(r, 1000);
            Ok(if q <= Rational::zero() {
                Rational::one()
            } else {
                q
            })
        })
        .collect()
}

/// Filters `η_i = 1/k` with the default weights for `orders`.
pub fn default_filter(orders: &[u64], k: usize) -> Result<DegreeFilter> {
    Ok(DegreeFilter {
        weights: default_weights(orders, k)?,
        eta: Rational::new(1, k as i64),
        k,
    })
}

/// Builds the default filter for any supported group.
pub fn default_filter_for(group: &FiniteGroup, k: usize) -> Result<DegreeFilter> {
    match group.spec() {
        GroupSpec::Abelian { orders } => default_filter(orders, k),
        _ => Ok(DegreeFilter::uniform(k, 0)),
    }
}

pub fn to_f64(r: &BigUint) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("2/5").unwrap(), Rational::new(2, 5));
        assert_eq!(parse_rational("0.4").unwrap(), Rational::new(2, 5));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn approximates() {
        assert_eq!(approximate_rational(0.5, 100), Rational::new(1, 2));
        assert_eq!(
            approximate_rational(std::f64::consts::PI, 1000),
            Rational::new(355, 113)
        );
    }

    #[test]
    fn filter_examples() {
        let c3 = grp("abelian:3");
        let x = build_filtered_subspace(&c3, 3, &DegreeFilter::uniform(3, 1)).unwrap();
        assert_eq!(x.codim(), 1);
        assert_eq!(x.monomials(), &[vec![1], vec![2]]);

        let c33 = grp("abelian:3,3");
        let x = build_filtered_subspace(&c33, 3, &DegreeFilter::uniform(3, 2)).unwrap();
        assert_eq!(x.codim(), 3);

        let h = grp("heisenberg:p=3,n=2");
        let x = build_filtered_subspace(&h, 3, &DegreeFilter::uniform(3, 0)).unwrap();
        assert_eq!(x.codim(), 7);
        assert_eq!(x.dim(), 20);
    }

    #[test]
    fn rejects_bad_filters() {
        let c3 = grp("abelian:3");
        let mut f = DegreeFilter::uniform(3, 1);
        f.weights[0] = Rational::zero();
        assert!(matches!(
            build_filtered_subspace(&c3, 3, &f),
            Err(Error::InvalidFilter(_))
        ));
        assert!(filter_family(
            &[Rational::one()],
            &[Rational::new(1, 2), Rational::new(1, 3)]
        )
        .is_err());
    }

    #[test]
    fn exact_codim_examples() {
        let f =
            |orders: &[u64]| exact_codim(orders, &DegreeFilter::uniform(3, orders.len())).unwrap();
        assert_eq!(f(&[3, 3]), BigUint::from(3u32));
        assert_eq!(f(&[9]), BigUint::from(3u32));
        assert_eq!(f(&[3, 3, 3]), BigUint::from(10u32));
    }

    #[test]
    fn annihilator_pair_in_c5() {
        let g = grp("abelian:5");
        let family = filter_family(
            &[Rational::one()],
            &[Rational::new(2, 5), Rational::new(3, 5)],
        )
        .unwrap();
        let xs = build_family(&g, &family).unwrap();
        assert_eq!(xs[0].monomials(), &[vec![2], vec![3], vec![4]]);
        assert_eq!(xs[1].monomials(), &[vec![3], vec![4]]);
        assert_eq!(xs[0].codim() + xs[1].codim(), 5);
        assert!(verify_zero_product(&xs).unwrap().verified);
    }

    #[test]
    fn detects_nonzero_products() {
        let g = grp("abelian:3");
        // η = 1/4 keeps τ and τ² on both sides, and τ·τ ≠ 0.
        let f = DegreeFilter {
            weights: vec![Rational::one()],
            eta: Rational::new(1, 4),
            k: 2,
        };
        let x = build_filtered_subspace(&g, 2, &f).unwrap();
        let report = verify_zero_product(&[x.clone(), x]).unwrap();
        assert!(!report.verified);
        assert_eq!(report.witness, Some(vec![vec![1], vec![1]]));
    }

    #[test]
    fn rate_examples() {
        let r = rate(RateOrder::Finite(2), 3).unwrap();
        assert!((r.argmin - 0.5).abs() < 1e-6);
        assert!((r.value - 0.75 * 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn default_weights_homogeneous() {
        assert_eq!(
            default_weights(&[3, 3, 3], 3).unwrap(),
            vec![Rational::one(); 3]
        );
        let w = default_weights(&[3, 9], 3).unwrap();
        assert_eq!(w[1], Rational::one());
        assert!(w[0] > Rational::zero());
    }
}
