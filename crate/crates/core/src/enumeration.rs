//! Exact enumeration of lattice points in an ellipsoid.
//!
//! Given a positive definite integer Gram matrix `P`, a rational center `c`
//! and a rational bound `B`, [`lattice_points_within`] returns every integer
//! vector `y` with `(y + c)ᵀ P (y + c) ≤ B`. Coordinates are bounded one at a
//! time from the rational `LDLᵀ` decomposition (Fincke–Pohst), so the search
//! is complete with no rounding anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `P = Uᵀ D U` with `U` unit upper triangular. Returns `(d, U)`, or `None`
/// when `P` is not positive definite.
fn ldl(p: &Matrix<i64>) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = p.rows();
    let mut work: Vec<Vec<BigRational>> = (0..n)
        .map(|r| (0..n).map(|c| rat(*p.get(r, c))).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut u = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let di = work[i][i].clone();
        if !di.is_positive() {
            return None;
        }
        u[i][i] = rat(1);
        for j in i + 1..n {
            u[i][j] = &work[i][j] / &di;
        }
        for k in i + 1..n {
            for l in i + 1..n {
                let delta = &di * &u[i][k] * &u[i][l];
                work[k][l] -= delta;
            }
        }
        d.push(di);
    }
    Some((d, u))
}

fn floor_sqrt_ratio(r: &BigRational) -> BigInt {
    // floor(sqrt(x)) == floor(sqrt(floor(x))) for x ≥ 0
    r.floor().to_integer().sqrt()
}

/// All `y ∈ ℤⁿ` with `(y + c)ᵀ P (y + c) ≤ bound`, sorted lexicographically.
///
/// Panics if `gram` is not positive definite or `center` has the wrong length.
pub fn lattice_points_within(
    gram: &Matrix<i64>,
    center: &[BigRational],
    bound: &BigRational,
) -> Vec<Vec<i64>> {
    let n = gram.rows();
    assert_eq!(center.len(), n, "center dimension");
    let (d, u) = ldl(gram).expect("Gram matrix must be positive definite");
    let mut out = Vec::new();
    let mut y = vec![0i64; n];
    if n == 0 {
        if !bound.is_negative() {
            out.push(Vec::new());
        }
        return out;
    }
    descend(n - 1, bound.clone(), &d, &u, center, &mut y, &mut out);
    out.sort();
    out
}

fn descend(
    level: usize,
    remaining: BigRational,
    d: &[BigRational],
    u: &[Vec<BigRational>],
    center: &[BigRational],
    y: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let n = y.len();
    // shift t = c_i + Σ_{j>i} U_ij (y_j + c_j)
    let mut t = center[level].clone();
    for j in level + 1..n {
        t += &u[level][j] * (rat(y[j]) + &center[j]);
    }
    let radius = floor_sqrt_ratio(&(&remaining / &d[level])) + BigInt::from(1);
    let lo = (-&t - BigRational::from_integer(radius.clone())).ceil().to_integer();
    let hi = (-&t + BigRational::from_integer(radius)).floor().to_integer();
    let lo = lo.to_i64().expect("coordinate bound fits in i64");
    let hi = hi.to_i64().expect("coordinate bound fits in i64");
    for yi in lo..=hi {
        let shifted = rat(yi) + &t;
        let cost = &d[level] * &shifted * &shifted;
        if cost > remaining {
            continue;
        }
        y[level] = yi;
        let rest = &remaining - cost;
        if level == 0 {
            out.push(y.clone());
        } else {
            descend(level - 1, rest, d, u, center, y, out);
        }
    }
    y[level] = 0;
}

/// Integer vectors of exactly the given norm `yᵀ P y = norm` (center zero).
pub fn vectors_of_norm(gram: &Matrix<i64>, norm: i64) -> Vec<Vec<i64>> {
    let n = gram.rows();
    let center = vec![BigRational::zero(); n];
    lattice_points_within(gram, &center, &rat(norm))
        .into_iter()
        .filter(|y| quadratic_form(gram, y) == norm)
        .collect()
}

pub(crate) fn quadratic_form(gram: &Matrix<i64>, y: &[i64]) -> i64 {
    let n = y.len();
    let mut acc = 0i64;
    for i in 0..n {
        for j in 0..n {
            acc += y[i] * gram.get(i, j) * y[j];
        }
    }
    acc
}

/// Greatest common divisor of a list, 0 for an all-zero list.
pub(crate) fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_square_lattice() {
        let g = Matrix::<i64>::identity(2);
        // norm 1: (±1,0),(0,±1); norm 2: (±1,±1)
        assert_eq!(vectors_of_norm(&g, 1).len(), 4);
        assert_eq!(vectors_of_norm(&g, 2).len(), 4);
        assert_eq!(vectors_of_norm(&g, 3).len(), 0);
        assert_eq!(vectors_of_norm(&g, 5).len(), 8);
    }

    #[test]
    fn a2_has_six_roots() {
        let g = Matrix::<i64>::from_i64_rows(&[[2, -1], [-1, 2]]).unwrap();
        assert_eq!(vectors_of_norm(&g, 2).len(), 6);
    }

    #[test]
    fn shifted_center() {
        let g = Matrix::<i64>::identity(1);
        let c = vec![BigRational::new(BigInt::from(1), BigInt::from(2))];
        // (y + 1/2)^2 <= 1/4 only for y in {0, -1}
        let pts = lattice_points_within(&g, &c, &BigRational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(pts, vec![vec![-1], vec![0]]);
    }

    #[test]
    fn rejects_indefinite() {
        let g = Matrix::<i64>::from_i64_rows(&[[1, 0], [0, -1]]).unwrap();
        assert!(ldl(&g).is_none());
    }

    #[test]
    fn brute_force_agreement() {
        let g = Matrix::<i64>::from_i64_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 2]]).unwrap();
        for norm in 0..8 {
            let mut brute = Vec::new();
            for a in -4i64..=4 {
                for b in -4i64..=4 {
                    for c in -4i64..=4 {
                        let y = [a, b, c];
                        if quadratic_form(&g, &y) == norm {
                            brute.push(y.to_vec());
                        }
                    }
                }
            }
            brute.sort();
            assert_eq!(vectors_of_norm(&g, norm), brute, "norm {norm}");
        }
    }
}
