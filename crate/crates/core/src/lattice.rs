//! Picard lattices of del Pezzo surfaces and their (−2)- and (−1)-classes.
//!
//! Two constructions are supported: the blow-up of the projective plane in
//! `9 − d` points (basis `h, e_1, …, e_{9−d}`, form `diag(1, −1, …, −1)`) and
//! the quadric `P¹ × P¹` (basis `e_1, e_2`, hyperbolic form).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::enumeration::{gcd_all, lattice_points_within, vectors_of_norm};
use crate::linalg::{integer_kernel, solve_integer_functional, solve_rational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("degree {0} out of range 1..=9")]
    DegreeOutOfRange(u32),
    #[error("vector has length {got}, lattice rank is {rank}")]
    DimensionMismatch { rank: usize, got: usize },
}

/// Integer coordinates of a lattice element in the construction basis.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// `vᵀ G w` for an integer Gram matrix.
pub fn bilinear(gram: &Matrix<i64>, v: &[i64], w: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for (j, &wj) in w.iter().enumerate() {
            acc += vi * gram.get(i, j) * wj;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Blow-up of P² in `9 − degree` points.
    Blowup { degree: u32 },
    /// P¹ × P¹, degree 8.
    Quadric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardLattice {
    construction: Construction,
    gram: Matrix<i64>,
    anticanonical: LatticeVector,
}

impl PicardLattice {
    /// Blow-up of P² in `9 − d` points.
    pub fn blowup(d: u32) -> Result<Self, LatticeError> {
        if !(1..=9).contains(&d) {
            return Err(LatticeError::DegreeOutOfRange(d));
        }
        let rank = (10 - d) as usize;
        let mut diag = vec![-1i64; rank];
        diag[0] = 1;
        let mut anti = vec![-1i64; rank];
        anti[0] = 3;
        Ok(PicardLattice {
            construction: Construction::Blowup { degree: d },
            gram: Matrix::diagonal(&diag),
            anticanonical: LatticeVector(anti),
        })
    }

    /// P¹ × P¹ with `(e_i, e_i) = 0`, `(e_1, e_2) = 1`, `−K = 2e_1 + 2e_2`.
    pub fn quadric() -> Self {
        PicardLattice {
            construction: Construction::Quadric,
            gram: Matrix::from_i64_rows(&[[0, 1], [1, 0]]).expect("2x2"),
            anticanonical: LatticeVector(vec![2, 2]),
        }
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn degree(&self) -> u32 {
        match self.construction {
            Construction::Blowup { degree } => degree,
            Construction::Quadric => 8,
        }
    }

    pub fn gram(&self) -> &Matrix<i64> {
        &self.gram
    }

    pub fn anticanonical(&self) -> &LatticeVector {
        &self.anticanonical
    }

    /// The class `h` (blow-up case only).
    pub fn h(&self) -> LatticeVector {
        LatticeVector::unit(self.rank(), 0)
    }

    /// Exceptional class `e_i`, 1-based as in the usual notation. In the
    /// quadric case `e_1, e_2` are the two rulings.
    pub fn e(&self, i: usize) -> LatticeVector {
        match self.construction {
            Construction::Blowup { .. } => LatticeVector::unit(self.rank(), i),
            Construction::Quadric => LatticeVector::unit(self.rank(), i - 1),
        }
    }

    /// Builds a vector from `a·h − Σ b_i e_i` in the blow-up case.
    pub fn class(&self, h: i64, minus_e: &[i64]) -> LatticeVector {
        let mut v = vec![0; self.rank()];
        v[0] = h;
        for (i, &b) in minus_e.iter().enumerate() {
            v[i + 1] = -b;
        }
        LatticeVector(v)
    }

    fn check(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                rank: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The intersection pairing `(v, w)`.
    pub fn pairing(&self, v: &LatticeVector, w: &LatticeVector) -> Result<i64, LatticeError> {
        self.check(v)?;
        self.check(w)?;
        Ok(bilinear(&self.gram, &v.0, &w.0))
    }

    /// Pairing without the dimension check; panics on mismatch.
    pub fn dot(&self, v: &LatticeVector, w: &LatticeVector) -> i64 {
        assert_eq!(v.len(), self.rank());
        assert_eq!(w.len(), self.rank());
        bilinear(&self.gram, &v.0, &w.0)
    }

    pub fn norm(&self, v: &LatticeVector) -> i64 {
        self.dot(v, v)
    }

    /// `(v, −K)`
    pub fn anticanonical_degree(&self, v: &LatticeVector) -> i64 {
        self.dot(v, &self.anticanonical)
    }

    /// A ℤ-basis of `K⊥`, as columns.
    fn orthogonal_basis(&self) -> Matrix<i64> {
        let functional = self.gram.mul_vec(&self.anticanonical.0);
        let row = Matrix::from_rows(vec![functional]).expect("one row");
        integer_kernel(&row)
    }

    /// The negated pairing restricted to `K⊥` in the given basis.
    fn positive_form(&self, basis: &Matrix<i64>) -> Matrix<i64> {
        let gb = self.gram.mul(basis).expect("compatible");
        let form = basis.transpose().mul(&gb).expect("compatible");
        form.map(|x| -x)
    }

    /// All classes `α` with `(α, α) = −2` and `(α, −K) = 0`, sorted.
    pub fn neg2_classes(&self) -> Vec<LatticeVector> {
        let basis = self.orthogonal_basis();
        if basis.cols() == 0 {
            return Vec::new();
        }
        let form = self.positive_form(&basis);
        let mut out: Vec<LatticeVector> = vectors_of_norm(&form, 2)
            .into_iter()
            .map(|y| LatticeVector(basis.mul_vec(&y)))
            .collect();
        out.sort();
        out
    }

    /// All classes `v` with `(v, v) = −1` and `(v, −K) = 1`, sorted.
    ///
    /// Writing `v = v₀ + B·y` with `(v₀, −K) = 1` and `B` a basis of `K⊥`,
    /// the condition becomes `(y + c)ᵀ P (y + c) = 1 + 1/d` where `P` is the
    /// negated form on `K⊥` and `B·c` the projection of `v₀` to `K⊥ ⊗ ℚ`.
    pub fn neg1_classes(&self) -> Vec<LatticeVector> {
        let d = self.degree() as i64;
        let functional = self.gram.mul_vec(&self.anticanonical.0);
        let Some(v0) = solve_integer_functional(&functional, &1) else {
            return Vec::new();
        };
        let basis = self.orthogonal_basis();
        let m = basis.cols();
        let target = BigRational::new(BigInt::from(d + 1), BigInt::from(d));
        let candidates: Vec<Vec<i64>> = if m == 0 {
            vec![Vec::new()]
        } else {
            let form = self.positive_form(&basis);
            // P c = Bᵀ G v₀ (sign: −BᵀGB c = −BᵀG v₀)
            let rhs_int = basis.transpose().mul_vec(&self.gram.mul_vec(&v0));
            let rhs: Vec<BigRational> = rhs_int
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(-x)))
                .collect();
            let form_q = form.map(|&x| BigRational::from_integer(BigInt::from(x)));
            let center = solve_rational(&form_q, &rhs).expect("form on K⊥ is nondegenerate");
            lattice_points_within(&form, &center, &target)
        };
        let mut out: Vec<LatticeVector> = candidates
            .into_iter()
            .map(|y| {
                let shift = if m == 0 { vec![0; self.rank()] } else { basis.mul_vec(&y) };
                LatticeVector(v0.iter().zip(shift).map(|(a, b)| a + b).collect())
            })
            .filter(|v| self.norm(v) == -1 && self.anticanonical_degree(v) == 1)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Whether `v` is primitive (its coordinates have gcd 1).
    pub fn is_primitive(v: &LatticeVector) -> bool {
        gcd_all(&v.0) == 1
    }
}
