//! Exact linear algebra over F_p.
//!
//! Matrices are dense row-major grids of residues. Subspaces of F_p^d are
//! kept in reduced row-echelon form with respect to an explicit coordinate
//! ordering, so the leader set of a subspace (the minimal support
//! coordinates of its nonzero vectors) is simply its pivot set, and the
//! outsider set is the pivot set under the reversed ordering.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Fp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of residues already in `[0, p)`.
    pub fn from_residue_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&v| v % field.modulus()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.ensure_same(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.mul_add(out.data[idx], a, other.get(k, c));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let Rref {
            reduced, pivots, ..
        } = rref(self);
        let f = self.field;
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut x = vec![0u32; self.cols];
                x[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(reduced.get(r, free));
                }
                x
            })
            .collect()
    }

    /// Any solution of `M x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Result<Option<Vec<u32>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = rhs[r] % self.field.modulus();
        }
        let Rref {
            reduced, pivots, ..
        } = rref(&aug);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Ok(Some(x))
    }
}

/// Reduced row-echelon form with the natural column order.
pub fn rref(m: &Matrix) -> Rref {
    let order: Vec<usize> = (0..m.cols).collect();
    rref_ordered(m, &order)
}

/// Reduced row-echelon form processing columns in `order`.
///
/// Pivots are reported in processing order; row `i` of the result has its
/// first nonzero entry (with respect to `order`) at `pivots[i]`. Zero rows
/// are dropped from the front block but kept at the bottom so the shape is
/// preserved.
pub fn rref_ordered(m: &Matrix, order: &[usize]) -> Rref {
    let f = m.field;
    let cols = m.cols;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for &c in order {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.data[r * cols + c] != 0) else {
            continue;
        };
        if pr != row {
            for j in 0..cols {
                a.data.swap(pr * cols + j, row * cols + j);
            }
        }
        let inv = f.inv(a.data[row * cols + c]).expect("pivot is nonzero");
        for j in 0..cols {
            let idx = row * cols + j;
            a.data[idx] = f.mul(a.data[idx], inv);
        }
        let (head, tail) = a.data.split_at_mut(row * cols);
        let (pivot_row, tail) = tail.split_at_mut(cols);
        for other in head.chunks_mut(cols).chain(tail.chunks_mut(cols)) {
            let factor = other[c];
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for j in 0..cols {
                if pivot_row[j] != 0 {
                    other[j] = f.mul_add(other[j], neg, pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    Rref {
        reduced: a,
        rank: row,
        pivots,
    }
}

/// A linear subspace of F_p^d, stored in RREF under a coordinate ordering.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    ordering: Vec<usize>,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

fn check_ordering(ordering: &[usize], d: usize) -> Result<()> {
    let mut seen = vec![false; d];
    if ordering.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: ordering.len(),
        });
    }
    for &c in ordering {
        if c >= d || seen[c] {
            return Err(Error::InvalidInput(format!(
                "coordinate ordering is not a permutation of 0..{d}"
            )));
        }
        seen[c] = true;
    }
    Ok(())
}

impl Subspace {
    /// Span of the given vectors, reduced under the natural ordering.
    pub fn span<I>(field: Fp, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        Self::span_ordered(field, ambient, vectors, (0..ambient).collect())
    }

    pub fn span_ordered<I>(
        field: Fp,
        ambient: usize,
        vectors: I,
        ordering: Vec<usize>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        check_ordering(&ordering, ambient)?;
        let rows: Vec<Vec<u32>> = vectors.into_iter().collect();
        let m = Matrix::from_residue_rows(field, ambient, &rows)?;
        let Rref {
            reduced,
            rank,
            pivots,
        } = rref_ordered(&m, &ordering);
        let basis = (0..rank).map(|r| reduced.row(r).to_vec()).collect();
        Ok(Subspace {
            field,
            ambient,
            ordering,
            basis,
            pivots,
        })
    }

    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            ordering: (0..ambient).collect(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            ordering: (0..ambient).collect(),
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Kernel `{x : M x = 0}` of a matrix, as a subspace of F_p^cols.
    pub fn kernel_of(m: &Matrix) -> Result<Self> {
        Self::span(m.field(), m.cols(), m.kernel())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Pivot coordinates of the stored basis, in ordering order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The same subspace re-reduced under another coordinate ordering.
    pub fn reordered(&self, ordering: Vec<usize>) -> Result<Self> {
        Self::span_ordered(self.field, self.ambient, self.basis.clone(), ordering)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field.ensure_same(other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let f = self.field;
        let mut residual: Vec<u32> = v.iter().map(|&x| x % f.modulus()).collect();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = residual[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (r, &b) in residual.iter_mut().zip(row) {
                *r = f.mul_add(*r, neg, b);
            }
        }
        residual.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.field == other.field
            && self.ambient == other.ambient
            && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Rows `q` with `self = {v : q·v = 0 for all q}`; there are `codim` of them.
    pub fn constraints(&self) -> Matrix {
        let m = Matrix::from_residue_rows(self.field, self.ambient, &self.basis)
            .expect("basis rows have ambient length");
        let rows = m.kernel();
        Matrix::from_residue_rows(self.field, self.ambient, &rows).expect("kernel rows")
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.constraints().row_vecs();
        rows.extend(other.constraints().row_vecs());
        if rows.is_empty() {
            return Ok(Subspace::full(self.field, self.ambient));
        }
        let stacked = Matrix::from_residue_rows(self.field, self.ambient, &rows)?;
        Subspace::span(self.field, self.ambient, stacked.kernel())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Minimal coordinates (under `ordering`) of the supports of nonzero vectors.
    pub fn leaders(&self, ordering: &[usize]) -> Result<Vec<usize>> {
        let r = self.reordered(ordering.to_vec())?;
        let mut l = r.pivots;
        l.sort_unstable();
        Ok(l)
    }

    /// Maximal coordinates (under `ordering`) of the supports of nonzero vectors.
    pub fn outsiders(&self, ordering: &[usize]) -> Result<Vec<usize>> {
        let reversed: Vec<usize> = ordering.iter().rev().copied().collect();
        self.leaders(&reversed)
    }
}

/// Leader and outsider sets of `w` under `ordering`.
pub fn leaders_outsiders(w: &Subspace, ordering: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    Ok((w.leaders(ordering)?, w.outsiders(ordering)?))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// Span of all pointwise products `f_1 ⋯ f_k` with `f_i ∈ X_i`.
///
/// Products of spans are spanned by products of basis vectors, so the
/// span is accumulated factor by factor: `Y_1 = X_1`, `Y_{j+1}` the span of
/// `y ⊙ x` over bases of `Y_j` and `X_{j+1}`.
pub fn pointwise_product_span(xs: &[Subspace]) -> Result<Subspace> {
    let first = xs
        .first()
        .ok_or_else(|| Error::InvalidInput("need at least one subspace".into()))?;
    for x in &xs[1..] {
        first.check_compatible(x)?;
    }
    let f = first.field;
    let d = first.ambient;
    let mut acc = first.reordered((0..d).collect())?;
    for x in &xs[1..] {
        let mut products = Vec::with_capacity(acc.dim() * x.dim());
        for u in acc.basis() {
            for v in x.basis() {
                products.push(u.iter().zip(v).map(|(&a, &b)| f.mul(a, b)).collect());
            }
        }
        acc = Subspace::span(f, d, products)?;
        if acc.dim() == 0 {
            break;
        }
    }
    Ok(acc)
}
