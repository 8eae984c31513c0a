//! Dense arithmetic in the group algebra F_p[G].
//!
//! An element is a coefficient vector indexed by group elements. Products
//! are schoolbook convolutions over the nonzero coefficients of both
//! factors. Monomials are the products of `(generator − 1)` powers taken in
//! the group's normal-form generator order; that order is part of the
//! contract because the Heisenberg and unitriangular algebras are not
//! commutative.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fp, Scalar};
use crate::groups::{ElementIndex, FiniteGroup};
use crate::linalg::Matrix;

/// Exponent tuple of a monomial, in the group's normal-form generator order.
pub type MonomialIndex = Vec<u32>;

#[derive(Clone)]
pub struct AlgebraElement {
    group: Arc<FiniteGroup>,
    field: Fp,
    coeffs: Vec<u32>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraElement")
            .field("group", &self.group.spec().to_string())
            .field("field", &self.field)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_group(&other.group)
            && self.field == other.field
            && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(group: &Arc<FiniteGroup>, field: Fp) -> Self {
        AlgebraElement {
            group: Arc::clone(group),
            field,
            coeffs: vec![0; group.order()],
        }
    }

    /// The group element `g` viewed in F_p[G].
    pub fn basis(group: &Arc<FiniteGroup>, field: Fp, g: ElementIndex) -> Self {
        let mut e = Self::zero(group, field);
        e.coeffs[g] = 1 % field.modulus();
        e
    }

    pub fn one(group: &Arc<FiniteGroup>, field: Fp) -> Self {
        Self::basis(group, field, group.identity())
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, field: Fp, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: coeffs.len(),
            });
        }
        let p = field.modulus();
        Ok(AlgebraElement {
            group: Arc::clone(group),
            field,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        })
    }

    /// `Σ c·g` over `(g, c)` pairs, with signed coefficients reduced mod p.
    pub fn from_terms<I>(group: &Arc<FiniteGroup>, field: Fp, terms: I) -> Self
    where
        I: IntoIterator<Item = (ElementIndex, i64)>,
    {
        let mut e = Self::zero(group, field);
        for (g, c) in terms {
            e.coeffs[g] = field.add(e.coeffs[g], field.reduce(c));
        }
        e
    }

    /// `g − 1`.
    pub fn augmented(group: &Arc<FiniteGroup>, field: Fp, g: ElementIndex) -> Self {
        Self::from_terms(group, field, [(g, 1), (group.identity(), -1)])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coefficient(&self, g: ElementIndex) -> Scalar {
        Scalar::new(self.field, self.coeffs[g] as i64)
    }

    /// `[1]a`, the coefficient of the identity.
    pub fn identity_coefficient(&self) -> Scalar {
        self.coefficient(self.group.identity())
    }

    /// Sum of all coefficients (the augmentation map to F_p).
    pub fn augmentation(&self) -> Scalar {
        let f = self.field;
        Scalar::new(
            f,
            self.coeffs.iter().fold(0, |acc, &c| f.add(acc, c)) as i64,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> Vec<ElementIndex> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, _)| g)
            .collect()
    }

    fn check_compatible(&self, other: &AlgebraElement) -> Result<()> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        self.field.ensure_same(other.field)
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_compatible(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(AlgebraElement {
            group: Arc::clone(&self.group),
            field: f,
            coeffs,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_compatible(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(AlgebraElement {
            group: Arc::clone(&self.group),
            field: f,
            coeffs,
        })
    }

    pub fn scale(&self, c: u32) -> AlgebraElement {
        let f = self.field;
        AlgebraElement {
            group: Arc::clone(&self.group),
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| f.mul(a, c % f.modulus()))
                .collect(),
        }
    }

    /// Convolution: `[g](ab) = Σ_{uv = g} a[u]·b[v]`.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_compatible(other)?;
        let f = self.field;
        let g = &self.group;
        let rhs: Vec<(usize, u32)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (v, c))
            .collect();
        let mut out = vec![0u32; g.order()];
        for (u, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(v, b) in &rhs {
                let w = g.multiply(u, v);
                out[w] = f.mul_add(out[w], a, b);
            }
        }
        Ok(AlgebraElement {
            group: Arc::clone(g),
            field: f,
            coeffs: out,
        })
    }

    pub fn pow(&self, n: u32) -> AlgebraElement {
        let mut acc = Self::one(&self.group, self.field);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same group");
        }
        acc
    }

    /// Product `e_1 e_2 ⋯ e_m` left to right; the unit for an empty list.
    pub fn product_of(
        group: &Arc<FiniteGroup>,
        field: Fp,
        factors: &[AlgebraElement],
    ) -> Result<AlgebraElement> {
        let mut acc = Self::one(group, field);
        for x in factors {
            acc = acc.multiply(x)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

/// `(g − 1)^a = Σ_i C(a,i) (−1)^{a−i} g^i`.
pub fn augmented_power(
    group: &Arc<FiniteGroup>,
    field: Fp,
    g: ElementIndex,
    a: u32,
) -> AlgebraElement {
    let terms = (0..=a).map(|i| {
        let c = field.binomial(a as u64, i as u64) as i64;
        let sign = if (a - i) % 2 == 0 { 1 } else { -1 };
        (group.power(g, i as i64), sign * c)
    });
    AlgebraElement::from_terms(group, field, terms)
}

/// The monomial `∏ (gen_i − 1)^{m_i}` in normal-form generator order.
pub fn monomial_element(group: &Arc<FiniteGroup>, m: &[u32]) -> Result<AlgebraElement> {
    let field = group.field()?;
    let radices = group.radices();
    if m.len() != radices.len() {
        return Err(Error::DimensionMismatch {
            expected: radices.len(),
            found: m.len(),
        });
    }
    let mut acc = AlgebraElement::one(group, field);
    for ((&e, &r), gen) in m.iter().zip(radices).zip(group.generators()) {
        if e >= r {
            return Err(Error::ExponentOutOfRange(format!(
                "{} exponent {e} ≥ {r}",
                gen.name
            )));
        }
        if e > 0 {
            acc = acc.multiply(&augmented_power(group, field, gen.index, e))?;
        }
    }
    Ok(acc)
}

/// Every in-range monomial index, in element-index order.
pub fn monomial_indices(group: &FiniteGroup) -> impl Iterator<Item = MonomialIndex> + '_ {
    group.elements().map(move |i| group.decode(i))
}

/// The `|G|×|G|` change of basis whose column `j` expands the `j`-th
/// monomial (monomial indices enumerated like element indices).
pub fn monomial_basis(group: &Arc<FiniteGroup>) -> Result<Matrix> {
    let field = group.field()?;
    let n = group.order();
    let mut m = Matrix::zeros(field, n, n);
    for (j, idx) in monomial_indices(group).enumerate() {
        let e = monomial_element(group, &idx)?;
        for (i, &c) in e.coeffs().iter().enumerate() {
            if c != 0 {
                m.set(i, j, c);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    fn grp(s: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn tau_is_nilpotent_in_c5() {
        let g = grp("abelian:5");
        let f = g.field().unwrap();
        let tau = AlgebraElement::augmented(&g, f, 1);
        let top = tau.pow(4);
        assert!(tau.multiply(&top).unwrap().is_zero());
        // (g-1)^4 = Σ C(4,i)(-1)^{4-i} g^i and C(4,i) ≡ (-1)^i mod 5, so every coefficient is 1.
        assert_eq!(top.coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(top.identity_coefficient().value(), 1);
        assert_eq!(tau.identity_coefficient().value(), 4);
    }

    #[test]
    fn unit_law() {
        let g = grp("heisenberg:p=3,n=2");
        let f = g.field().unwrap();
        let a = AlgebraElement::from_terms(&g, f, [(3, 1), (7, 2), (20, 1)]);
        let one = AlgebraElement::one(&g, f);
        assert_eq!(one.multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&one).unwrap(), a);
        assert_eq!(one.identity_coefficient().value(), 1);
    }

    #[test]
    fn monomial_examples() {
        let g = grp("abelian:3");
        assert_eq!(monomial_element(&g, &[1]).unwrap().coeffs(), &[2, 1, 0]);
        assert_eq!(monomial_element(&g, &[2]).unwrap().coeffs(), &[1, 1, 1]);
        assert!(matches!(
            monomial_element(&g, &[3]),
            Err(Error::ExponentOutOfRange(_))
        ));

        let h = grp("heisenberg:p=3,n=2");
        let f = h.field().unwrap();
        let z = AlgebraElement::augmented(&h, f, h.generator("s").unwrap());
        assert_eq!(monomial_element(&h, &[1, 0, 0]).unwrap(), z);
    }

    #[test]
    fn monomial_bases_are_invertible() {
        for s in ["abelian:3", "heisenberg:p=3,n=2", "ut:n=3,p=3"] {
            let g = grp(s);
            assert_eq!(monomial_basis(&g).unwrap().rank(), g.order(), "{s}");
        }
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = grp("abelian:3");
        let b = grp("abelian:9");
        let f = a.field().unwrap();
        let x = AlgebraElement::one(&a, f);
        let y = AlgebraElement::one(&b, f);
        assert_eq!(x.multiply(&y), Err(Error::GroupMismatch));
    }
}
