//! Structure constants on the positive part of a simply-laced Lie algebra.
//!
//! Signs come from the bilinear form `f` on the root lattice with
//! `f(α_i, α_j) = (α_i, α_j)` for `i < j`, `½(α_i, α_i)` for `i = j` and `0`
//! for `i > j`, via `ε_{α,β} = (−1)^{f(α,β)}`. The resulting bracket
//! `[x_α, x_β] = ε_{α,β} x_{α+β}` is checked for antisymmetry and the Jacobi
//! identity whenever an algebra is built.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::lattice::LatticeVector;
use crate::linalg::Matrix;
use crate::root_system::RootSystem;
use crate::scalar::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("bracket is not antisymmetric on basis pair ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("element has a component in the root space of the exponentiated root {0}")]
    Proportional(usize),
    #[error("basis index {0} is out of range")]
    OutOfRange(usize),
    #[error("element has dimension {got}, algebra has dimension {dim}")]
    Dimension { dim: usize, got: usize },
}

/// The signs `ε_{α,β}` for every composable pair of positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonTable {
    f_matrix: Matrix<i64>,
    /// Simple roots in the order `f` was built from.
    simple_order: Vec<LatticeVector>,
    /// Keyed by positive-root indices of the root system.
    signs: BTreeMap<(usize, usize), i8>,
}

impl EpsilonTable {
    pub fn build(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let cartan = rs.cartan();
        let mut f_matrix = Matrix::<i64>::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                // (α_i, α_j) = −C_ij
                let v = match i.cmp(&j) {
                    std::cmp::Ordering::Less => -cartan.get(i, j),
                    std::cmp::Ordering::Equal => -cartan.get(i, i) / 2,
                    std::cmp::Ordering::Greater => 0,
                };
                f_matrix.set(i, j, v);
            }
        }
        let mut table = EpsilonTable {
            f_matrix,
            simple_order: rs.simple_roots().to_vec(),
            signs: BTreeMap::new(),
        };
        let pos = rs.positive_roots();
        for (a, pa) in pos.iter().enumerate() {
            for (b, pb) in pos.iter().enumerate() {
                let sum: Vec<i64> = pa.coeffs.iter().zip(&pb.coeffs).map(|(x, y)| x + y).collect();
                if rs.index_of_coeffs(&sum).is_some() {
                    let f = table.f_value(&pa.coeffs, &pb.coeffs);
                    let sign = if f.rem_euclid(2) == 0 { 1 } else { -1 };
                    table.signs.insert((a, b), sign);
                }
            }
        }
        table
    }

    /// The simple-root order the signs depend on.
    pub fn simple_order(&self) -> &[LatticeVector] {
        &self.simple_order
    }

    /// The matrix of `f` on simple roots.
    pub fn f_matrix(&self) -> &Matrix<i64> {
        &self.f_matrix
    }

    /// `f(α, β)` from simple-root coordinates, extended bilinearly.
    pub fn f_value(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                acc += ai * self.f_matrix.get(i, j) * bj;
            }
        }
        acc
    }

    /// `ε_{α,β}` for positive-root indices with `α + β` a root.
    pub fn sign(&self, a: usize, b: usize) -> Option<i8> {
        self.signs.get(&(a, b)).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), i8)> + '_ {
        self.signs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

/// A vector in the algebra, coordinates over the basis `x_α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element<T> {
    pub coeffs: Vec<T>,
}

impl<T: Ring> Element<T> {
    pub fn zero(dim: usize) -> Self {
        Element {
            coeffs: vec![T::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[i] = T::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        Element { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Element {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Element {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Element {
            coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect(),
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Element<U> {
        Element {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// `𝔫/𝔫_{>n}`: the span of `x_α` for positive roots of height `≤ n`, with
/// brackets that would land above height `n` set to zero.
#[derive(Debug, Clone)]
pub struct NilpotentAlgebra {
    /// Positive-root index (in the root system) of each basis vector.
    roots: Vec<usize>,
    heights: Vec<usize>,
    coeffs: Vec<Vec<i64>>,
    local: BTreeMap<usize, usize>,
    /// `table[i * dim + j] = Some((k, ε))` when `[x_i, x_j] = ε x_k`.
    table: Vec<Option<(usize, i8)>>,
    max_height: usize,
}

impl NilpotentAlgebra {
    /// Builds the truncated algebra and verifies antisymmetry and Jacobi over ℤ.
    pub fn build(rs: &RootSystem, eps: &EpsilonTable, max_height: usize) -> Result<Self, LieError> {
        let alg = Self::build_unchecked(rs, eps, max_height);
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// The full positive part (no truncation).
    pub fn full(rs: &RootSystem, eps: &EpsilonTable) -> Result<Self, LieError> {
        Self::build(rs, eps, rs.max_height())
    }

    pub(crate) fn build_unchecked(rs: &RootSystem, eps: &EpsilonTable, max_height: usize) -> Self {
        let pos = rs.positive_roots();
        let roots: Vec<usize> = (0..pos.len()).filter(|&i| pos[i].height <= max_height).collect();
        let local: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let dim = roots.len();
        let mut table = vec![None; dim * dim];
        for (i, &a) in roots.iter().enumerate() {
            for (j, &b) in roots.iter().enumerate() {
                if let Some(sign) = eps.sign(a, b) {
                    let sum: Vec<i64> = pos[a].coeffs.iter().zip(&pos[b].coeffs).map(|(x, y)| x + y).collect();
                    let c = rs.index_of_coeffs(&sum).expect("composable pair sums to a root");
                    if let Some(&k) = local.get(&c) {
                        table[i * dim + j] = Some((k, sign));
                    }
                }
            }
        }
        NilpotentAlgebra {
            heights: roots.iter().map(|&g| pos[g].height).collect(),
            coeffs: roots.iter().map(|&g| pos[g].coeffs.clone()).collect(),
            roots,
            local,
            table,
            max_height,
        }
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn max_height(&self) -> usize {
        self.max_height
    }

    /// Positive-root index of basis vector `i`.
    pub fn root_of(&self, i: usize) -> usize {
        self.roots[i]
    }

    /// Simple-root coordinates of basis vector `i`.
    pub fn coeffs_of(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn height_of(&self, i: usize) -> usize {
        self.heights[i]
    }

    /// Basis index of the given positive root, if it survives truncation.
    pub fn basis_of(&self, root: usize) -> Option<usize> {
        self.local.get(&root).copied()
    }

    /// `[x_i, x_j]` as `Some((k, ε))` or `None` for zero.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        self.table[i * self.dim() + j]
    }

    pub fn bracket<T: Ring>(&self, x: &Element<T>, y: &Element<T>) -> Element<T> {
        let dim = self.dim();
        let mut out = Element::<T>::zero(dim);
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some((k, s)) = self.bracket_basis(i, j) {
                    let term = a.clone() * b.clone() * T::from_i64(s as i64);
                    out.coeffs[k] = out.coeffs[k].clone() + term;
                }
            }
        }
        out
    }

    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        let dim = self.dim();
        for i in 0..dim {
            if self.bracket_basis(i, i).is_some() {
                return Err(LieError::Antisymmetry(i, i));
            }
            for j in 0..i {
                let ok = match (self.bracket_basis(i, j), self.bracket_basis(j, i)) {
                    (None, None) => true,
                    (Some((k1, s1)), Some((k2, s2))) => k1 == k2 && s1 == -s2,
                    _ => false,
                };
                if !ok {
                    return Err(LieError::Antisymmetry(i, j));
                }
            }
        }
        Ok(())
    }

    fn nested(&self, a: usize, b: usize, c: usize) -> Option<(usize, i64)> {
        let (m, s1) = self.bracket_basis(b, c)?;
        let (k, s2) = self.bracket_basis(a, m)?;
        Some((k, (s1 as i64) * (s2 as i64)))
    }

    /// Jacobi identity on every basis triple, over ℤ.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let terms = [
                        self.nested(i, j, k),
                        self.nested(j, k, i),
                        self.nested(k, i, j),
                    ];
                    // all terms live in the same root space, so they share an index
                    let mut idx = None;
                    let mut total = 0i64;
                    for (t, s) in terms.into_iter().flatten() {
                        if idx.is_some_and(|x| x != t) {
                            return Err(LieError::Jacobi(i, j, k));
                        }
                        idx = Some(t);
                        total += s;
                    }
                    if total != 0 {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_dim<T>(&self, y: &Element<T>) -> Result<(), LieError> {
        if y.coeffs.len() != self.dim() {
            return Err(LieError::Dimension {
                dim: self.dim(),
                got: y.coeffs.len(),
            });
        }
        Ok(())
    }

    /// `exp_α(c·x_α) · y = y + [c·x_α, y]` for `y` with no component in
    /// `𝔤_α`. In a simply-laced system `2α + β` is never a root, so the
    /// series stops after the linear term.
    pub fn exp_action<T: Ring>(&self, alpha: usize, c: &T, y: &Element<T>) -> Result<Element<T>, LieError> {
        if alpha >= self.dim() {
            return Err(LieError::OutOfRange(alpha));
        }
        self.check_dim(y)?;
        if !y.coeffs[alpha].is_zero() {
            return Err(LieError::Proportional(alpha));
        }
        let x = Element::basis(self.dim(), alpha).scale(c);
        Ok(y.add(&self.bracket(&x, y)))
    }

    /// Action of `exp(c_1 x_{α_1}) ⋯ exp(c_m x_{α_m})` on a general element,
    /// applying the rightmost factor first. The component of `y` in the
    /// root space being exponentiated is carried through unchanged, since
    /// `[x_α, x_α] = 0`.
    pub fn exp_product<T: Ring>(&self, factors: &[(usize, T)], y: &Element<T>) -> Result<Element<T>, LieError> {
        self.check_dim(y)?;
        let mut cur = y.clone();
        for (alpha, c) in factors.iter().rev() {
            if *alpha >= self.dim() {
                return Err(LieError::OutOfRange(*alpha));
            }
            let fixed = cur.coeffs[*alpha].clone();
            cur.coeffs[*alpha] = T::zero();
            let mut next = self.exp_action(*alpha, c, &cur)?;
            next.coeffs[*alpha] = next.coeffs[*alpha].clone() + fixed;
            cur = next;
        }
        Ok(cur)
    }
}
