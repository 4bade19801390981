//! Dense exact matrices: rank over ℚ and 𝔽_p, determinants, Smith normal form
//! and integer kernels.
//!
//! Rational rank and determinant use fraction-free (Bareiss) elimination so
//! intermediate entries stay integral. Nothing here touches floating point.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{is_prime, Field, IntegerScalar, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ragged rows: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("linear system has no solution")]
    Inconsistent,
}

/// Row-major dense matrix over a ring `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let ncols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::Ragged {
                    row: i,
                    len: row.len(),
                    expected: ncols,
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape {
                rows: rhs.rows,
                cols: rhs.cols,
                expected: self.cols * rhs.cols,
                got: rhs.entries.len(),
            });
        }
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c).clone() + a.clone() * rhs.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Block-diagonal sum of square or rectangular blocks.
    pub fn block_diagonal(blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &T) {
        for c in 0..self.cols {
            let v = self.get(dst, c).clone() + factor.clone() * self.get(src, c).clone();
            self.set(dst, c, v);
        }
    }

    /// `col[dst] += factor * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &T) {
        for r in 0..self.rows {
            let v = self.get(r, dst).clone() + factor.clone() * self.get(r, src).clone();
            self.set(r, dst, v);
        }
    }
}

/// Fraction-free elimination shared by [`rank_rational`] and [`determinant`].
/// Returns the rank and, for square input, the determinant.
fn bareiss<T: IntegerScalar>(m: &Matrix<T>) -> (usize, T) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut prev = T::one();
    let mut sign = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap_rows(p, rank);
            sign = -sign;
        }
        let pivot = a.get(rank, c).clone();
        for r in rank + 1..rows {
            let lead = a.get(r, c).clone();
            for j in c + 1..cols {
                let num = pivot.clone() * a.get(r, j).clone() - lead.clone() * a.get(rank, j).clone();
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a.set(r, j, q);
            }
            a.set(r, c, T::zero());
        }
        prev = pivot;
        rank += 1;
    }
    let det = if rows == 0 && cols == 0 {
        T::one()
    } else if rows == cols && rank == rows {
        sign * a.get(rows - 1, cols - 1).clone()
    } else {
        T::zero()
    };
    (rank, det)
}

/// Rank over ℚ.
pub fn rank_rational<T: IntegerScalar>(m: &Matrix<T>) -> usize {
    bareiss(m).0
}

/// Exact determinant of a square integer matrix.
pub fn determinant<T: IntegerScalar>(m: &Matrix<T>) -> Result<T, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Ok(T::one());
    }
    Ok(bareiss(m).1)
}

fn reduce_mod<T: IntegerScalar>(m: &Matrix<T>, p: u64) -> Matrix<u64> {
    let modulus = T::from_u64(p).expect("modulus fits");
    m.map(|x| {
        x.mod_floor(&modulus)
            .to_u64()
            .expect("residue fits in u64")
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Gaussian elimination over 𝔽_p on residues; returns (rank, det if square).
fn eliminate_mod_p(mut a: Matrix<u64>, p: u64) -> (usize, u64) {
    let (rows, cols) = a.shape();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut rank = 0;
    let mut det = 1u64;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| *a.get(r, c) != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.entries.swap(piv * cols + j, rank * cols + j);
            }
            det = (p - det) % p;
        }
        let pv = *a.get(rank, c);
        det = mul(det, pv);
        let inv = inv_mod(pv, p);
        for r in rank + 1..rows {
            let f = mul(*a.get(r, c), inv);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let v = (*a.get(r, j) + p - mul(f, *a.get(rank, j))) % p;
                a.set(r, j, v);
            }
        }
        rank += 1;
    }
    if rows == cols && rank < rows {
        det = 0;
    }
    (rank, det)
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p<T: IntegerScalar>(m: &Matrix<T>, p: u64) -> Result<usize, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    Ok(eliminate_mod_p(reduce_mod(m, p), p).0)
}

/// Determinant of `m` reduced modulo `p`, computed over 𝔽_p.
pub fn determinant_mod_p<T: IntegerScalar>(m: &Matrix<T>, p: u64) -> Result<u64, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(eliminate_mod_p(reduce_mod(m, p), p).1)
}

/// Rank in characteristic `p`, with `p == 0` meaning rank over ℚ.
pub fn rank_in_characteristic<T: IntegerScalar>(
    m: &Matrix<T>,
    p: u64,
) -> Result<usize, LinalgError> {
    if p == 0 {
        Ok(rank_rational(m))
    } else {
        rank_mod_p(m, p)
    }
}

/// Row-reduces a copy of `m` over a field and returns its rank.
pub fn rank_over<F: Field>(m: &Matrix<F>) -> usize {
    row_echelon(m).1
}

/// Reduced row echelon form over a field, with the rank.
pub fn row_echelon<F: Field>(m: &Matrix<F>) -> (Matrix<F>, usize) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, rank);
        let inv = a.get(rank, c).inv().expect("nonzero pivot");
        for j in 0..cols {
            let v = a.get(rank, j).clone() * inv.clone();
            a.set(rank, j, v);
        }
        for r in 0..rows {
            if r == rank || a.get(r, c).is_zero() {
                continue;
            }
            let f = -a.get(r, c).clone();
            a.add_row_multiple(r, rank, &f);
        }
        rank += 1;
    }
    (a, rank)
}

/// Solves `basis · x = target` over a field where `basis` holds the spanning
/// vectors as rows. Returns the coefficients, or `None` if `target` is not in
/// the span. The basis rows must be linearly independent.
pub fn coordinates_in_span<F: Field>(basis: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let k = basis.len();
    let n = target.len();
    // columns = basis vectors, augmented by target
    let mut a = Matrix::<F>::zeros(n, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            a.set(i, j, b[i].clone());
        }
    }
    for i in 0..n {
        a.set(i, k, target[i].clone());
    }
    let (rref, _) = row_echelon(&a);
    let mut x = vec![F::zero(); k];
    for r in 0..n {
        let lead = (0..=k).find(|&c| !rref.get(r, c).is_zero());
        match lead {
            None => continue,
            Some(c) if c == k => return None,
            Some(c) => x[c] = rref.get(r, k).clone(),
        }
    }
    Some(x)
}

/// Elementary divisors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    /// `min(rows, cols)` nonnegative entries, each dividing the next.
    pub elementary_divisors: Vec<T>,
    pub rank: usize,
}

impl<T: IntegerScalar> SmithForm<T> {
    /// Nonzero divisors only.
    pub fn nonzero_divisors(&self) -> &[T] {
        &self.elementary_divisors[..self.rank]
    }

    /// The largest nonzero divisor, or 1 for the zero matrix.
    pub fn largest(&self) -> T {
        self.nonzero_divisors()
            .last()
            .cloned()
            .unwrap_or_else(T::one)
    }
}

/// Smith normal form by elementary row and column operations, pivoting on the
/// entry of minimal absolute value.
pub fn smith_normal_form<T: IntegerScalar>(m: &Matrix<T>) -> SmithForm<T> {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        // pivot = minimal nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);

        let mut clean = true;
        let pivot = a.get(t, t).clone();
        for r in t + 1..rows {
            let q = a.get(r, t).div_floor(&pivot);
            if !q.is_zero() {
                a.add_row_multiple(r, t, &(-q));
            }
            if !a.get(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            let q = a.get(t, c).div_floor(&pivot);
            if !q.is_zero() {
                a.add_col_multiple(c, t, &(-q));
            }
            if !a.get(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            // a smaller remainder now exists; re-pivot
            continue;
        }
        // pivot must divide the rest of the block
        let offender = (t + 1..rows)
            .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !a.get(r, c).is_multiple_of(&pivot));
        if let Some((r, _)) = offender {
            a.add_row_multiple(t, r, &T::one());
            continue;
        }
        t += 1;
    }
    let mut divisors: Vec<T> = (0..steps).map(|i| a.get(i, i).abs()).collect();
    let rank = divisors.iter().filter(|d| !d.is_zero()).count();
    // zeros only ever trail; keep the nonzero prefix sorted by divisibility
    divisors[..rank].sort();
    SmithForm {
        elementary_divisors: divisors,
        rank,
    }
}

/// Unimodular column reduction of `m`: returns `(H, U)` with `H = m · U`,
/// `U` unimodular, and `H` in column echelon form. Columns of `U` past the
/// number of pivots span the integer kernel of `m`.
fn column_echelon<T: IntegerScalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>, usize) {
    let mut h = m.clone();
    let (rows, cols) = h.shape();
    let mut u = Matrix::<T>::identity(cols);
    let mut pivot = 0;
    for r in 0..rows {
        if pivot == cols {
            break;
        }
        loop {
            let best = (pivot..cols)
                .filter(|&c| !h.get(r, c).is_zero())
                .min_by(|&x, &y| h.get(r, x).abs().cmp(&h.get(r, y).abs()));
            let Some(bc) = best else {
                break;
            };
            h.swap_cols(pivot, bc);
            u.swap_cols(pivot, bc);
            let pv = h.get(r, pivot).clone();
            let mut done = true;
            for c in pivot + 1..cols {
                let q = h.get(r, c).div_floor(&pv);
                if !q.is_zero() {
                    h.add_col_multiple(c, pivot, &(-q.clone()));
                    u.add_col_multiple(c, pivot, &(-q));
                }
                if !h.get(r, c).is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    (h, u, pivot)
}

/// A ℤ-basis of `{x ∈ ℤⁿ : m·x = 0}`, returned as the columns of a matrix.
pub fn integer_kernel<T: IntegerScalar>(m: &Matrix<T>) -> Matrix<T> {
    let (_, u, pivots) = column_echelon(m);
    let cols: Vec<usize> = (pivots..m.cols()).collect();
    let rows: Vec<usize> = (0..m.cols()).collect();
    u.select(&rows, &cols)
}

/// An integer solution of `w · x = target` for a single row `w`, if one exists.
pub fn solve_integer_functional<T: IntegerScalar>(w: &[T], target: &T) -> Option<Vec<T>> {
    let m = Matrix::from_rows(vec![w.to_vec()]).expect("single row");
    let (h, u, pivots) = column_echelon(&m);
    if pivots == 0 {
        return if target.is_zero() {
            Some(vec![T::zero(); w.len()])
        } else {
            None
        };
    }
    let g = h.get(0, 0).clone();
    if !target.is_multiple_of(&g) {
        return None;
    }
    let scale = target.clone() / g;
    Some(u.column(0).into_iter().map(|x| x * scale.clone()).collect())
}

/// Solves the square nonsingular system `a · x = b` over ℚ.
pub fn solve_rational(a: &Matrix<BigRational>, b: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut aug = Matrix::<BigRational>::zeros(n, n + 1);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let (rref, rank) = row_echelon(&aug);
    if rank != n || (0..n).any(|i| !rref.get(i, i).is_one()) {
        return Err(LinalgError::Inconsistent);
    }
    Ok((0..n).map(|r| rref.get(r, n).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    fn triangle() -> Matrix<BigInt> {
        im(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
    }

    #[test]
    fn shape_is_checked() {
        assert!(Matrix::<i64>::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(Matrix::<i64>::from_rows(vec![vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn rational_rank_examples() {
        assert_eq!(rank_rational(&Matrix::<BigInt>::identity(2)), 2);
        assert_eq!(rank_rational(&triangle()), 3);
        assert_eq!(rank_rational(&Matrix::<BigInt>::zeros(3, 5)), 0);
        assert_eq!(rank_rational(&Matrix::<BigInt>::zeros(0, 0)), 0);
        let wide = im(&[&[0, 2, 4, 0], &[0, 1, 2, 0], &[1, 0, 0, 3]]);
        assert_eq!(rank_rational(&wide), 2);
        assert_eq!(rank_rational(&wide.transpose()), 2);
    }

    #[test]
    fn modular_rank_examples() {
        assert_eq!(rank_mod_p(&triangle(), 2).unwrap(), 2);
        assert_eq!(rank_mod_p(&triangle(), 3).unwrap(), 3);
        for p in [2, 3, 5, 7] {
            assert_eq!(rank_mod_p(&Matrix::<BigInt>::identity(4), p).unwrap(), 4);
        }
        assert_eq!(rank_mod_p(&triangle(), 4), Err(LinalgError::NotPrime(4)));
        assert_eq!(rank_mod_p(&triangle(), 1), Err(LinalgError::NotPrime(1)));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&im(&[&[2, -1], &[-1, 2]])).unwrap(), BigInt::from(3));
        assert_eq!(determinant(&Matrix::<BigInt>::identity(5)).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&triangle()).unwrap(), BigInt::from(-2));
        assert!(matches!(
            determinant(&Matrix::<BigInt>::zeros(2, 3)),
            Err(LinalgError::NotSquare { .. })
        ));
        // needs a row swap
        assert_eq!(determinant(&im(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(determinant_mod_p(&triangle(), 3).unwrap(), 1);
        assert_eq!(determinant_mod_p(&triangle(), 2).unwrap(), 0);
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&Matrix::<BigInt>::identity(3));
        assert_eq!(s.elementary_divisors, vec![BigInt::from(1); 3]);
        let s = smith_normal_form(&triangle());
        assert_eq!(
            s.elementary_divisors,
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]
        );
        let s = smith_normal_form(&im(&[&[2, 0], &[0, 4]]));
        assert_eq!(s.elementary_divisors, vec![BigInt::from(2), BigInt::from(4)]);
        let s = smith_normal_form(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.elementary_divisors, vec![BigInt::from(1), BigInt::from(6)]);
        let s = smith_normal_form(&Matrix::<BigInt>::zeros(2, 3));
        assert_eq!(s.rank, 0);
        assert_eq!(s.largest(), BigInt::from(1));
    }

    #[test]
    fn kernel_and_functional() {
        let w = Matrix::<i64>::from_i64_rows(&[[3, -1, -1, -1]]).unwrap();
        let k = integer_kernel(&w);
        assert_eq!(k.shape(), (4, 3));
        for c in 0..3 {
            assert_eq!(w.mul_vec(&k.column(c)), vec![0]);
        }
        // the kernel basis is primitive: its maximal minors have gcd 1
        assert_eq!(smith_normal_form(&k).largest(), 1);

        let x = solve_integer_functional(&[3i64, -1, -1], &1).unwrap();
        assert_eq!(3 * x[0] - x[1] - x[2], 1);
        assert!(solve_integer_functional(&[4i64, 6], &1).is_none());
        assert!(solve_integer_functional(&[4i64, 6], &2).is_some());
        assert!(solve_integer_functional(&[0i64, 0], &1).is_none());
    }

    #[test]
    fn rational_solve() {
        let a = Matrix::<BigRational>::from_i64_rows(&[[2, 1], [1, 3]]).unwrap();
        let b = vec![BigRational::from_i64(1), BigRational::from_i64(0)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn span_coordinates() {
        use crate::scalar::Fp;
        type F3 = Fp<3>;
        let basis = vec![
            vec![F3::new(1), F3::new(0), F3::new(1)],
            vec![F3::new(0), F3::new(1), F3::new(1)],
        ];
        let t = vec![F3::new(2), F3::new(1), F3::new(0)];
        assert_eq!(
            coordinates_in_span(&basis, &t),
            Some(vec![F3::new(2), F3::new(1)])
        );
        assert_eq!(coordinates_in_span(&basis, &[F3::new(1), F3::new(0), F3::new(0)]), None);
    }
}
