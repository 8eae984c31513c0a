//! The three group families: finite abelian p-groups `∏ C_{N_i}`,
//! Heisenberg groups `H_{n-1}(F_p)` and unitriangular groups `UT(n, F_p)`.
//!
//! Elements are indexed by the mixed-radix encoding of their normal-form
//! exponent tuple, first exponent least significant, so the identity is
//! always index 0.
//!
//! * abelian: `g_1^{e_1} ⋯ g_n^{e_n}`, `0 ≤ e_i < N_i`;
//! * Heisenberg: `s^γ h_1^{β_1} ⋯ h_{n-1}^{β_{n-1}} g_1^{α_1} ⋯ g_{n-1}^{α_{n-1}}`;
//! * unitriangular: `g_{n-1,n}^{α} g_{n-2,n}^{α} g_{n-2,n-1}^{α} ⋯ g_{1,2}^{α}`,
//!   i.e. the generators `g_{ij} = id + e_{ij}` in decreasing lexicographic
//!   order of `(i, j)`.
//!
//! The matrix groups multiply on the matrix model; normal-form exponents are
//! recovered through a lookup built by expanding every normal-form word,
//! which also certifies that the normal form is a bijection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, Fp};

pub const DEFAULT_MAX_ORDER: usize = 10_000;
pub const DEFAULT_TABLE_LIMIT: usize = 2_048;

/// Index of a group element; the identity is 0.
pub type ElementIndex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Abelian {
        orders: Vec<u64>,
    },
    /// `H_{n-1}(F_p)`: `(n+1)×(n+1)` matrices, order `p^{2n-1}`.
    Heisenberg {
        p: u64,
        n: usize,
    },
    /// `UT(n, F_p)`: `n×n` upper unitriangular matrices, order `p^{n(n-1)/2}`.
    Unitriangular {
        n: usize,
        p: u64,
    },
}

/// Prime `p` with `n = p^e` (e ≥ 1), if any.
pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Abelian { orders } => {
                if orders.is_empty() {
                    return Err(Error::InvalidGroupSpec(
                        "abelian group needs at least one order".into(),
                    ));
                }
                let mut prime = None;
                for &n in orders.iter().filter(|&&n| n != 1) {
                    let p = prime_of_power(n).ok_or_else(|| {
                        Error::InvalidGroupSpec(format!("order {n} is not a prime power"))
                    })?;
                    match prime {
                        None => prime = Some(p),
                        Some(q) if q != p => {
                            return Err(Error::InvalidGroupSpec(format!(
                                "orders mix the primes {q} and {p}"
                            )))
                        }
                        _ => {}
                    }
                }
                if orders.contains(&0) {
                    return Err(Error::InvalidGroupSpec("order 0".into()));
                }
                Ok(())
            }
            GroupSpec::Heisenberg { p, n } | GroupSpec::Unitriangular { n, p } => {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *n < 2 {
                    return Err(Error::InvalidGroupSpec(format!("n = {n}, need n ≥ 2")));
                }
                Ok(())
            }
        }
    }

    /// The characteristic prime, `None` for the trivial group.
    pub fn prime(&self) -> Option<u64> {
        match self {
            GroupSpec::Abelian { orders } => orders.iter().find_map(|&n| prime_of_power(n)),
            GroupSpec::Heisenberg { p, .. } | GroupSpec::Unitriangular { p, .. } => Some(*p),
        }
    }

    /// Group order as given by the family formula (saturating).
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Abelian { orders } => orders.iter().fold(1u64, |a, &n| a.saturating_mul(n)),
            GroupSpec::Heisenberg { p, n } => p.saturating_pow(2 * *n as u32 - 1),
            GroupSpec::Unitriangular { n, p } => p.saturating_pow((n * (n - 1) / 2) as u32),
        }
    }

    pub fn is_abelian_family(&self) -> bool {
        matches!(self, GroupSpec::Abelian { .. })
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroupSpec(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let spec = match kind.trim() {
            "abelian" => {
                let orders = rest
                    .split(',')
                    .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::Abelian { orders }
            }
            "heisenberg" | "ut" | "unitriangular" => {
                let (mut p, mut n) = (None, None);
                for kv in rest.split(',') {
                    let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                    let v: u64 = v.trim().parse().map_err(|_| bad())?;
                    match k.trim() {
                        "p" => p = Some(v),
                        "n" => n = Some(v as usize),
                        _ => return Err(bad()),
                    }
                }
                let (p, n) = (p.ok_or_else(bad)?, n.ok_or_else(bad)?);
                if kind.trim() == "heisenberg" {
                    GroupSpec::Heisenberg { p, n }
                } else {
                    GroupSpec::Unitriangular { n, p }
                }
            }
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian { orders } => {
                let parts: Vec<String> = orders.iter().map(u64::to_string).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Heisenberg { p, n } => write!(f, "heisenberg:p={p},n={n}"),
            GroupSpec::Unitriangular { n, p } => write!(f, "ut:n={n},p={p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub index: ElementIndex,
    /// For matrix groups, the matrix unit `(row, col)` with `g = id + e_{row,col}`.
    pub unit: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug)]
pub struct GroupOptions {
    pub max_order: usize,
    /// Dense multiplication tables are cached up to this order.
    pub table_limit: usize,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            max_order: DEFAULT_MAX_ORDER,
            table_limit: DEFAULT_TABLE_LIMIT,
        }
    }
}

#[derive(Clone, Debug)]
struct MatrixModel {
    size: usize,
    p: u32,
    /// Above-diagonal positions that may be nonzero, in encoding order.
    positions: Vec<(usize, usize)>,
    /// Entries at `positions` for every element, row-major by element.
    entries: Vec<u32>,
    code_to_index: Vec<u32>,
}

impl MatrixModel {
    fn entries_of(&self, a: ElementIndex) -> &[u32] {
        let w = self.positions.len();
        &self.entries[a * w..(a + 1) * w]
    }

    fn dense(&self, a: ElementIndex) -> Vec<u32> {
        let m = self.size;
        let mut d = vec![0u32; m * m];
        for i in 0..m {
            d[i * m + i] = 1;
        }
        for (&(r, c), &v) in self.positions.iter().zip(self.entries_of(a)) {
            d[r * m + c] = v;
        }
        d
    }

    fn code(&self, dense: &[u32]) -> usize {
        let m = self.size;
        self.positions.iter().rev().fold(0usize, |acc, &(r, c)| {
            acc * self.p as usize + dense[r * m + c] as usize
        })
    }

    fn multiply(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        let m = self.size;
        let p = self.p as u64;
        let (x, y) = (self.dense(a), self.dense(b));
        let mut prod = vec![0u32; m * m];
        for i in 0..m {
            for j in i..m {
                let mut s = 0u64;
                for k in i..=j {
                    s += x[i * m + k] as u64 * y[k * m + j] as u64;
                }
                prod[i * m + j] = (s % p) as u32;
            }
        }
        self.code_to_index[self.code(&prod)] as usize
    }
}

#[derive(Clone, Debug)]
enum Model {
    Abelian,
    Matrix(MatrixModel),
}

/// An enumerated finite group with indexed elements.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    spec: GroupSpec,
    order: usize,
    radices: Vec<u32>,
    strides: Vec<usize>,
    generators: Vec<Generator>,
    model: Model,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    FiniteGroup::build(spec, GroupOptions::default())
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec, opts: GroupOptions) -> Result<Self> {
        spec.validate()?;
        let order = spec.order();
        if order > opts.max_order as u64 {
            return Err(Error::GroupTooLarge {
                order,
                max: opts.max_order as u64,
            });
        }
        let order = order as usize;
        let (radices, names, units, model) = match spec {
            GroupSpec::Abelian { orders } => {
                let radices: Vec<u32> = orders.iter().map(|&n| n as u32).collect();
                let names = (1..=orders.len()).map(|i| format!("g{i}")).collect();
                (radices, names, vec![None; orders.len()], None)
            }
            GroupSpec::Heisenberg { p, n } => {
                let n = *n;
                let mut units = vec![(0, n)];
                let mut names = vec!["s".to_string()];
                for i in 1..n {
                    units.push((i, n));
                    names.push(format!("h{i}"));
                }
                for i in 1..n {
                    units.push((0, i));
                    names.push(format!("g{i}"));
                }
                let radices = vec![*p as u32; units.len()];
                (
                    radices,
                    names,
                    units.iter().copied().map(Some).collect(),
                    Some((n + 1, *p, units)),
                )
            }
            GroupSpec::Unitriangular { n, p } => {
                let n = *n;
                let mut pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect();
                pairs.sort_unstable_by(|a, b| b.cmp(a));
                let names = pairs
                    .iter()
                    .map(|&(i, j)| {
                        if n < 10 {
                            format!("g{}{}", i + 1, j + 1)
                        } else {
                            format!("g{},{}", i + 1, j + 1)
                        }
                    })
                    .collect();
                let radices = vec![*p as u32; pairs.len()];
                (
                    radices,
                    names,
                    pairs.iter().copied().map(Some).collect(),
                    Some((n, *p, pairs)),
                )
            }
        };
        let mut strides = Vec::with_capacity(radices.len());
        let mut s = 1usize;
        for &r in &radices {
            strides.push(s);
            s *= r as usize;
        }
        debug_assert_eq!(s, order);

        let model = match model {
            None => Model::Abelian,
            Some((size, p, units)) => Model::Matrix(enumerate_matrix_model(
                size, p as u32, &units, &radices, order,
            )?),
        };
        let generators: Vec<Generator> = names
            .into_iter()
            .zip(units)
            .enumerate()
            .map(|(i, (name, unit))| Generator {
                name,
                index: strides[i],
                unit,
            })
            .collect();

        let mut group = FiniteGroup {
            spec: spec.clone(),
            order,
            radices,
            strides,
            generators,
            model,
            table: None,
            inverses: Vec::new(),
        };
        if order <= opts.table_limit {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = group.multiply_uncached(a, b) as u32;
                }
            }
            group.table = Some(table);
        }
        group.inverses = (0..order)
            .map(|a| group.compute_inverse(a) as u32)
            .collect();
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementIndex {
        0
    }

    /// Field F_p naturally attached to the group (its characteristic prime).
    pub fn field(&self) -> Result<Fp> {
        let p = self.spec.prime().ok_or_else(|| {
            Error::UnsupportedFamily("the trivial group has no characteristic".into())
        })?;
        Fp::new(p)
    }

    /// Ranges of the normal-form exponents.
    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// Generators in normal-form order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<ElementIndex> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.index)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementIndex> {
        0..self.order
    }

    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        self.spec == other.spec
    }

    pub fn decode(&self, a: ElementIndex) -> Vec<u32> {
        self.radices
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| ((a / s) % r as usize) as u32)
            .collect()
    }

    pub fn encode(&self, exps: &[u32]) -> Result<ElementIndex> {
        if exps.len() != self.radices.len() {
            return Err(Error::DimensionMismatch {
                expected: self.radices.len(),
                found: exps.len(),
            });
        }
        let mut idx = 0;
        for ((&e, &r), &s) in exps.iter().zip(&self.radices).zip(&self.strides) {
            if e >= r {
                return Err(Error::ExponentOutOfRange(format!("exponent {e} ≥ {r}")));
            }
            idx += e as usize * s;
        }
        Ok(idx)
    }

    /// Matrix of an element of a matrix group, `None` for abelian groups.
    pub fn matrix(&self, a: ElementIndex) -> Option<Vec<Vec<u32>>> {
        match &self.model {
            Model::Abelian => None,
            Model::Matrix(mm) => {
                let d = mm.dense(a);
                Some(d.chunks(mm.size).map(<[u32]>::to_vec).collect())
            }
        }
    }

    fn multiply_uncached(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        match &self.model {
            Model::Abelian => {
                let mut idx = 0;
                for (&r, &s) in self.radices.iter().zip(&self.strides) {
                    let r = r as usize;
                    idx += ((a / s % r + b / s % r) % r) * s;
                }
                idx
            }
            Model::Matrix(mm) => mm.multiply(a, b),
        }
    }

    #[inline]
    pub fn multiply(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.multiply_uncached(a, b),
        }
    }

    fn compute_inverse(&self, a: ElementIndex) -> ElementIndex {
        match &self.model {
            Model::Abelian => {
                let mut idx = 0;
                for (&r, &s) in self.radices.iter().zip(&self.strides) {
                    let r = r as usize;
                    idx += ((r - a / s % r) % r) * s;
                }
                idx
            }
            Model::Matrix(_) => self.power_nonneg(a, self.order as u64 - 1),
        }
    }

    pub fn inverse(&self, a: ElementIndex) -> ElementIndex {
        self.inverses[a] as usize
    }

    fn power_nonneg(&self, a: ElementIndex, mut n: u64) -> ElementIndex {
        let mut result = 0;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                result = self.multiply(result, base);
            }
            base = self.multiply(base, base);
            n >>= 1;
        }
        result
    }

    /// `a^n` by square-and-multiply; negative `n` goes through the inverse.
    pub fn power(&self, a: ElementIndex, n: i64) -> ElementIndex {
        if n < 0 {
            self.power_nonneg(self.inverse(a), n.unsigned_abs())
        } else {
            self.power_nonneg(a, n as u64)
        }
    }

    pub fn element_order(&self, a: ElementIndex) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.multiply(x, a);
            k += 1;
        }
        k
    }

    /// Product `a_1 a_2 ⋯ a_m` left to right.
    pub fn product<I: IntoIterator<Item = ElementIndex>>(&self, elems: I) -> ElementIndex {
        elems.into_iter().fold(0, |acc, x| self.multiply(acc, x))
    }

    /// Readable form of an element, e.g. `s^2·g1`.
    pub fn format_element(&self, a: ElementIndex) -> String {
        let parts: Vec<String> = self
            .decode(a)
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{e}", g.name)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

fn enumerate_matrix_model(
    size: usize,
    p: u32,
    units: &[(usize, usize)],
    radices: &[u32],
    order: usize,
) -> Result<MatrixModel> {
    let mut positions: Vec<(usize, usize)> = units.to_vec();
    positions.sort_unstable();
    let w = positions.len();
    let mut mm = MatrixModel {
        size,
        p,
        positions,
        entries: vec![0; order * w],
        code_to_index: vec![u32::MAX; order],
    };
    let mut dense = vec![0u32; size * size];
    let mut exps = vec![0u32; radices.len()];
    for idx in 0..order {
        let mut rest = idx;
        for (e, &r) in exps.iter_mut().zip(radices) {
            *e = (rest % r as usize) as u32;
            rest /= r as usize;
        }
        dense.iter_mut().for_each(|x| *x = 0);
        for i in 0..size {
            dense[i * size + i] = 1;
        }
        // Right-multiplying by (id + e·E_{ij}) adds e·(column i) to column j.
        for (&(i, j), &e) in units.iter().zip(&exps) {
            if e == 0 {
                continue;
            }
            for r in 0..size {
                let v = dense[r * size + i];
                if v != 0 {
                    dense[r * size + j] = (dense[r * size + j] + e * v) % p;
                }
            }
        }
        for (slot, &(r, c)) in mm.entries[idx * w..(idx + 1) * w]
            .iter_mut()
            .zip(&mm.positions)
        {
            *slot = dense[r * size + c];
        }
        if (0..size).any(|r| {
            (0..size).any(|c| c > r && dense[r * size + c] != 0 && !mm.positions.contains(&(r, c)))
        }) {
            return Err(Error::InvalidGroupSpec(
                "normal-form word leaves the matrix pattern".into(),
            ));
        }
        let code = mm.code(&dense);
        if mm.code_to_index[code] != u32::MAX {
            return Err(Error::InvalidGroupSpec(
                "normal form is not injective".into(),
            ));
        }
        mm.code_to_index[code] = idx as u32;
    }
    Ok(mm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_specs() {
        assert_eq!(
            "abelian:3,3,9".parse::<GroupSpec>().unwrap(),
            GroupSpec::Abelian {
                orders: vec![3, 3, 9]
            }
        );
        assert_eq!(
            "heisenberg:p=3,n=2".parse::<GroupSpec>().unwrap(),
            GroupSpec::Heisenberg { p: 3, n: 2 }
        );
        assert_eq!(
            "ut:n=4,p=3".parse::<GroupSpec>().unwrap(),
            GroupSpec::Unitriangular { n: 4, p: 3 }
        );
        for s in ["abelian:3,3,9", "heisenberg:p=3,n=2", "ut:n=4,p=3"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(matches!(
            "abelian:3,5".parse::<GroupSpec>(),
            Err(Error::InvalidGroupSpec(_))
        ));
        assert!(matches!(
            "abelian:6".parse::<GroupSpec>(),
            Err(Error::InvalidGroupSpec(_))
        ));
        assert!(matches!(
            "heisenberg:p=4,n=2".parse::<GroupSpec>(),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            "ut:n=1,p=3".parse::<GroupSpec>(),
            Err(Error::InvalidGroupSpec(_))
        ));
        assert!("cyclic:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn orders_match_family_formulas() {
        assert_eq!(g("abelian:3,3").order(), 9);
        assert_eq!(g("heisenberg:p=3,n=2").order(), 27);
        assert_eq!(g("ut:n=4,p=2").order(), 64);
        assert_eq!(g("heisenberg:p=2,n=3").order(), 32);
    }

    #[test]
    fn respects_max_order() {
        let spec: GroupSpec = "abelian:3,3,3".parse().unwrap();
        let opts = GroupOptions {
            max_order: 10,
            ..Default::default()
        };
        assert!(matches!(
            FiniteGroup::build(&spec, opts),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn abelian_multiplication() {
        let grp = g("abelian:3,3");
        let a = grp.encode(&[1, 2]).unwrap();
        let b = grp.encode(&[2, 2]).unwrap();
        assert_eq!(grp.decode(grp.multiply(a, b)), vec![0, 1]);
    }

    #[test]
    fn heisenberg_relation() {
        let grp = g("heisenberg:p=3,n=2");
        let (s, h, gg) = (
            grp.generator("s").unwrap(),
            grp.generator("h1").unwrap(),
            grp.generator("g1").unwrap(),
        );
        assert_eq!(grp.multiply(gg, h), grp.product([s, h, gg]));
        assert_eq!(grp.power(gg, 3), 0);
    }

    #[test]
    fn unitriangular_relation() {
        let grp = g("ut:n=3,p=3");
        let (g12, g23, g13) = (
            grp.generator("g12").unwrap(),
            grp.generator("g23").unwrap(),
            grp.generator("g13").unwrap(),
        );
        assert_eq!(grp.multiply(g12, g23), grp.product([g23, g12, g13]));
        assert_eq!(grp.generators()[0].name, "g23");
        assert_eq!(grp.generators()[2].name, "g12");
    }

    #[test]
    fn power_examples() {
        let grp = g("abelian:5");
        assert_eq!(grp.power(2, -2), 1);
        for a in grp.elements() {
            assert_eq!(grp.power(a, 0), 0);
        }
    }

    #[test]
    fn heisenberg_matrix_entries_are_the_exponents() {
        let grp = g("heisenberg:p=3,n=3");
        for a in grp.elements() {
            let e = grp.decode(a);
            let m = grp.matrix(a).unwrap();
            // (γ, β1, β2, α1, α2) sit at (0,3), (1,3), (2,3), (0,1), (0,2).
            assert_eq!(vec![m[0][3], m[1][3], m[2][3], m[0][1], m[0][2]], e);
        }
    }

    #[test]
    fn uncached_matches_table() {
        let spec: GroupSpec = "ut:n=4,p=2".parse().unwrap();
        let cached = FiniteGroup::build(&spec, GroupOptions::default()).unwrap();
        let plain = FiniteGroup::build(
            &spec,
            GroupOptions {
                table_limit: 0,
                ..Default::default()
            },
        )
        .unwrap();
        for a in cached.elements() {
            for b in cached.elements() {
                assert_eq!(cached.multiply(a, b), plain.multiply(a, b));
            }
            assert_eq!(cached.inverse(a), plain.inverse(a));
        }
    }
}
