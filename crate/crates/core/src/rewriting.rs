//! Normal forms for words in the augmentation generators of the Heisenberg
//! and unitriangular group rings.
//!
//! Letters stand for `z = s − 1`, `y_i = h_i − 1`, `x_i = g_i − 1`
//! (Heisenberg) or `x_{ij} = g_{ij} − 1` (unitriangular). A reduced monomial
//! lists letters in canonical order with exponents at most `p − 1`:
//!
//! * Heisenberg: `z < y_1 < … < y_{n−1} < x_1 < … < x_{n−1}`;
//! * unitriangular: `x_{ij}` in decreasing lexicographic order of `(i, j)`.
//!
//! Both orders coincide with the group's generator order, so a reduced
//! monomial is the same exponent tuple that [`crate::algebra::monomial_element`]
//! expands.
//!
//! Only two kinds of out-of-order adjacent pairs fail to commute:
//!
//! ```text
//! x_i y_i    = y_i x_i + z y_i x_i + z + z x_i + z y_i
//! x_ij x_jl  = x_jl x_ij + x_il + x_ij x_il + x_jl x_il + x_jl x_ij x_il   (i < j < l)
//! ```
//!
//! Reduction multiplies a reduced monomial by one letter at a time on the
//! right. If the letter belongs after the monomial's last letter it is
//! appended (a run reaching `p` vanishes). Otherwise the last letter is
//! moved past it: a commutation, or one of the relations above, after which
//! each resulting word is multiplied onto the shortened prefix. Each step
//! either removes an inversion or produces terms of strictly larger degree
//! (or equal degree with fewer letters); degrees of nonzero reduced words
//! are bounded and runs of `p` equal letters vanish, so the recursion
//! terminates. Results are memoized on `(monomial, letter)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{monomial_element, AlgebraElement, MonomialIndex};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groups::{FiniteGroup, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Z,
    Y(usize),
    X(usize),
    /// `x_{ij}` with 1-based `i < j`.
    U(usize, usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Z => write!(f, "z"),
            Letter::Y(i) => write!(f, "y{i}"),
            Letter::X(i) => write!(f, "x{i}"),
            Letter::U(i, j) if *i < 10 && *j < 10 => write!(f, "x{i}{j}"),
            Letter::U(i, j) => write!(f, "x{i},{j}"),
        }
    }
}

pub type Word = Vec<Letter>;

pub fn format_word(w: &[Letter]) -> String {
    w.iter()
        .map(Letter::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Heisenberg { n: usize },
    Unitriangular { n: usize },
}

/// A linear combination of reduced monomials with coefficients in F_p.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReducedCombination {
    pub terms: BTreeMap<MonomialIndex, u32>,
}

impl ReducedCombination {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, field: Fp, m: MonomialIndex, c: u32) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = field.add(*entry, c);
        if *entry == 0 {
            // zero-coefficient pruning after each merge
            self.terms.retain(|_, v| *v != 0);
        }
    }

    fn single(m: MonomialIndex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        ReducedCombination { terms }
    }
}

/// Reducer for one Heisenberg or unitriangular group ring.
pub struct Rewriter {
    group: Arc<FiniteGroup>,
    field: Fp,
    family: Family,
    letters: Vec<Letter>,
    memo: HashMap<(MonomialIndex, usize), ReducedCombination>,
}

impl Rewriter {
    pub fn new(group: &Arc<FiniteGroup>) -> Result<Self> {
        let field = group.field()?;
        let (family, letters) = match group.spec() {
            GroupSpec::Heisenberg { n, .. } => {
                let n = *n;
                let mut letters = vec![Letter::Z];
                letters.extend((1..n).map(Letter::Y));
                letters.extend((1..n).map(Letter::X));
                (Family::Heisenberg { n }, letters)
            }
            GroupSpec::Unitriangular { n, .. } => {
                let letters = group
                    .generators()
                    .iter()
                    .map(|g| {
                        let (i, j) = g.unit.expect("matrix generator");
                        Letter::U(i + 1, j + 1)
                    })
                    .collect();
                (Family::Unitriangular { n: *n }, letters)
            }
            GroupSpec::Abelian { .. } => {
                return Err(Error::UnsupportedFamily(
                    "rewriting is defined for Heisenberg and unitriangular groups".into(),
                ))
            }
        };
        Ok(Rewriter {
            group: Arc::clone(group),
            field,
            family,
            letters,
            memo: HashMap::new(),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Letters in canonical order.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    fn position(&self, l: Letter) -> Result<usize> {
        self.letters.iter().position(|&x| x == l).ok_or_else(|| {
            Error::InvalidWord(format!(
                "letter {l} is not in the alphabet of {}",
                self.group.spec()
            ))
        })
    }

    /// Parses whitespace-separated letters such as `"z x1 y1"` or `"x12 x24"`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|tok| {
                let bad = || Error::InvalidWord(format!("cannot parse letter {tok:?}"));
                let l = match (self.family, tok) {
                    (Family::Heisenberg { .. }, "z") => Letter::Z,
                    (Family::Heisenberg { .. }, t) if t.starts_with('x') => {
                        Letter::X(t[1..].parse().map_err(|_| bad())?)
                    }
                    (Family::Heisenberg { .. }, t) if t.starts_with('y') => {
                        Letter::Y(t[1..].parse().map_err(|_| bad())?)
                    }
                    (Family::Unitriangular { n }, t) if t.starts_with('x') => {
                        let body = &t[1..];
                        let (i, j) = if let Some((a, b)) = body.split_once(',') {
                            (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
                        } else if body.len() == 2 && n < 10 {
                            (
                                body[..1].parse().map_err(|_| bad())?,
                                body[1..].parse().map_err(|_| bad())?,
                            )
                        } else {
                            return Err(bad());
                        };
                        Letter::U(i, j)
                    }
                    _ => return Err(bad()),
                };
                self.position(l)?;
                Ok(l)
            })
            .collect()
    }

    /// Heisenberg: twice the number of `z` plus the other letters;
    /// unitriangular: `Σ (j − i)` over the letters.
    pub fn degree(&self, w: &[Letter]) -> u64 {
        w.iter().map(|&l| letter_degree(l)).sum()
    }

    pub fn monomial_degree(&self, m: &[u32]) -> u64 {
        self.letters
            .iter()
            .zip(m)
            .map(|(&l, &e)| letter_degree(l) * e as u64)
            .sum()
    }

    /// Largest degree of a nonzero reduced monomial.
    pub fn max_degree(&self) -> u64 {
        let p = self.field.modulus() as u64;
        match self.family {
            Family::Heisenberg { n } => 2 * n as u64 * (p - 1),
            Family::Unitriangular { n } => {
                let n = n as u64;
                (p - 1) * (n * n * n - n) / 6
            }
        }
    }

    fn commute(&self, a: usize, b: usize) -> bool {
        self.relation(a, b).is_none()
    }

    /// For an out-of-order pair `a b` (canonical position of `a` after `b`)
    /// that does not commute, the words whose sum equals `a b`.
    fn relation(&self, a: usize, b: usize) -> Option<Vec<Vec<usize>>> {
        match (self.letters[a], self.letters[b]) {
            (Letter::X(i), Letter::Y(j)) if i == j => {
                let (x, y) = (a, b);
                let z = 0;
                Some(vec![
                    vec![y, x],
                    vec![z, y, x],
                    vec![z],
                    vec![z, x],
                    vec![z, y],
                ])
            }
            (Letter::U(i, j), Letter::U(k, l)) if j == k => {
                let il = self.position(Letter::U(i, l)).expect("x_il in alphabet");
                let (ij, jl) = (a, b);
                Some(vec![
                    vec![jl, ij],
                    vec![il],
                    vec![ij, il],
                    vec![jl, il],
                    vec![jl, ij, il],
                ])
            }
            _ => None,
        }
    }

    fn mul_letter(&mut self, m: &[u32], a: usize) -> ReducedCombination {
        let key = (m.to_vec(), a);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let p = self.field.modulus();
        let result = match m.iter().rposition(|&e| e > 0) {
            Some(last) if last > a => {
                let mut prefix = m.to_vec();
                prefix[last] -= 1;
                if self.commute(last, a) {
                    let moved = self.mul_letter(&prefix, a);
                    self.mul_comb_letters(&moved, &[last])
                } else {
                    let words = self.relation(last, a).expect("non-commuting pair");
                    let start = ReducedCombination::single(prefix);
                    let mut acc = ReducedCombination::default();
                    for w in words {
                        let part = self.mul_comb_letters(&start, &w);
                        for (mono, c) in part.terms {
                            acc.add_term(self.field, mono, c);
                        }
                    }
                    acc
                }
            }
            _ => {
                let mut next = m.to_vec();
                next[a] += 1;
                if next[a] >= p {
                    ReducedCombination::default()
                } else {
                    ReducedCombination::single(next)
                }
            }
        };
        debug_assert!(result
            .terms
            .keys()
            .all(|r| self.monomial_degree(r)
                >= self.monomial_degree(m) + letter_degree(self.letters[a])));
        self.memo.insert(key, result.clone());
        result
    }

    fn mul_comb_letters(
        &mut self,
        comb: &ReducedCombination,
        word: &[usize],
    ) -> ReducedCombination {
        let mut cur = comb.clone();
        for &a in word {
            let mut next = ReducedCombination::default();
            for (mono, c) in &cur.terms {
                let part = self.mul_letter(mono, a);
                for (m2, c2) in part.terms {
                    next.add_term(self.field, m2, self.field.mul(*c, c2));
                }
            }
            cur = next;
            if cur.is_zero() {
                break;
            }
        }
        cur
    }

    fn positions(&self, w: &[Letter]) -> Result<Vec<usize>> {
        w.iter().map(|&l| self.position(l)).collect()
    }

    /// The word's product as a combination of reduced monomials.
    pub fn reduce(&mut self, w: &[Letter]) -> Result<ReducedCombination> {
        let pos = self.positions(w)?;
        let empty = ReducedCombination::single(vec![0; self.letters.len()]);
        Ok(self.mul_comb_letters(&empty, &pos))
    }

    /// Product of two reduced combinations, reduced again.
    pub fn multiply(
        &mut self,
        a: &ReducedCombination,
        b: &ReducedCombination,
    ) -> ReducedCombination {
        let mut acc = ReducedCombination::default();
        for (mb, cb) in &b.terms {
            let word: Vec<usize> = mb
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
                .collect();
            let part = self.mul_comb_letters(a, &word);
            for (m, c) in part.terms {
                acc.add_term(self.field, m, self.field.mul(c, *cb));
            }
        }
        acc
    }

    /// The reduced monomial as a word.
    pub fn monomial_word(&self, m: &[u32]) -> Word {
        m.iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat(self.letters[i]).take(e as usize))
            .collect()
    }

    /// `(generator − 1)` for a letter.
    pub fn letter_element(&self, l: Letter) -> Result<AlgebraElement> {
        let pos = self.position(l)?;
        let g = self.group.generators()[pos].index;
        Ok(AlgebraElement::augmented(&self.group, self.field, g))
    }

    /// Dense product of the letters; the oracle for [`Rewriter::reduce`].
    pub fn evaluate(&self, w: &[Letter]) -> Result<AlgebraElement> {
        let factors: Vec<AlgebraElement> = w
            .iter()
            .map(|&l| self.letter_element(l))
            .collect::<Result<_>>()?;
        AlgebraElement::product_of(&self.group, self.field, &factors)
    }

    /// Dense expansion of a reduced combination.
    pub fn expand(&self, c: &ReducedCombination) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(&self.group, self.field);
        for (m, &coef) in &c.terms {
            acc = acc.add(&monomial_element(&self.group, m)?.scale(coef))?;
        }
        Ok(acc)
    }

    pub fn random_word(&self, rng: &mut impl Rng, len: usize) -> Word {
        (0..len)
            .map(|_| self.letters[rng.gen_range(0..self.letters.len())])
            .collect()
    }

    /// Random word whose degree first exceeds `min_degree`, plus up to `extra` letters.
    pub fn random_word_above(&self, rng: &mut impl Rng, min_degree: u64, extra: usize) -> Word {
        let mut w = Vec::new();
        while self.degree(&w) <= min_degree {
            w.push(self.letters[rng.gen_range(0..self.letters.len())]);
        }
        let more = rng.gen_range(0..=extra);
        w.extend(self.random_word(rng, more));
        w
    }
}

fn letter_degree(l: Letter) -> u64 {
    match l {
        Letter::Z => 2,
        Letter::X(_) | Letter::Y(_) => 1,
        Letter::U(i, j) => (j - i) as u64,
    }
}

/// Outcome of [`nilpotency_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub group: String,
    pub max_degree: u64,
    pub trials: usize,
    pub seed: u64,
    /// A word of degree above the maximum that does not vanish.
    pub counterexample: Option<String>,
}

impl NilpotencyReport {
    pub fn verified(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Samples words of degree above the maximal reduced degree and checks that
/// each evaluates to zero in the group ring.
pub fn nilpotency_check(
    group: &Arc<FiniteGroup>,
    trials: usize,
    seed: u64,
) -> Result<NilpotencyReport> {
    let rw = Rewriter::new(group)?;
    let max_degree = rw.max_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    for _ in 0..trials {
        let w = rw.random_word_above(&mut rng, max_degree, 3);
        if !rw.evaluate(&w)?.is_zero() {
            counterexample = Some(format_word(&w));
            break;
        }
    }
    Ok(NilpotencyReport {
        group: group.spec().to_string(),
        max_degree,
        trials,
        seed,
        counterexample,
    })
}
