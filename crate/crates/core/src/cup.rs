//! Level-to-level cup matrices and characteristic verdicts.
//!
//! For `n ≥ 2` the cup matrix has rows indexed by `Φ⁺_{=n}`, columns by
//! `Φ⁺_{=n−1}`, and entry `ε_{β,α}` at `(γ, β)` when `γ − β = α` is simple.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dynkin::DynkinType;
use crate::lie::EpsilonTable;
use crate::linalg::{determinant, rank_in_characteristic, smith_normal_form, Matrix};
use crate::root_system::RootSystem;
use crate::scalar::{is_prime, prime_divisors, primes_up_to};
use crate::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CupError {
    #[error("cup matrices start at height 2, got {0}")]
    LevelTooLow(usize),
    #[error("no positive roots of height {0}")]
    EmptyLevel(usize),
    #[error("{0} is neither 0 nor a prime")]
    NotACharacteristic(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupMatrix {
    pub n: usize,
    /// Positive-root indices of height `n`.
    pub row_index: Vec<usize>,
    /// Positive-root indices of height `n − 1`.
    pub col_index: Vec<usize>,
    pub matrix: IntMatrix,
}

impl CupMatrix {
    pub fn is_surjective_in(&self, p: u64) -> bool {
        rank_in_characteristic(&self.matrix, p).expect("p checked by caller") == self.row_index.len()
    }

    /// The block on rows and columns of one component.
    pub fn component_block(&self, rs: &RootSystem, component: usize) -> CupMatrix {
        let pick = |idx: &[usize]| -> Vec<usize> {
            (0..idx.len())
                .filter(|&k| rs.positive_roots()[idx[k]].component == component)
                .collect()
        };
        let rows = pick(&self.row_index);
        let cols = pick(&self.col_index);
        CupMatrix {
            n: self.n,
            row_index: rows.iter().map(|&k| self.row_index[k]).collect(),
            col_index: cols.iter().map(|&k| self.col_index[k]).collect(),
            matrix: self.matrix.select(&rows, &cols),
        }
    }
}

pub fn build_cup_matrix(rs: &RootSystem, eps: &EpsilonTable, n: usize) -> Result<CupMatrix, CupError> {
    if n < 2 {
        return Err(CupError::LevelTooLow(n));
    }
    let row_index = rs.level(n);
    if row_index.is_empty() {
        return Err(CupError::EmptyLevel(n));
    }
    let col_index = rs.level(n - 1);
    let simple: Vec<usize> = rs
        .simple_roots()
        .iter()
        .map(|s| rs.index_of(s).expect("simple roots are positive"))
        .collect();
    let pos = rs.positive_roots();
    let mut matrix = Matrix::<BigInt>::zeros(row_index.len(), col_index.len());
    for (r, &g) in row_index.iter().enumerate() {
        for (c, &b) in col_index.iter().enumerate() {
            let diff: Vec<i64> = pos[g].coeffs.iter().zip(&pos[b].coeffs).map(|(x, y)| x - y).collect();
            let Some(i) = simple_position(&diff) else { continue };
            let sign = eps.sign(b, simple[i]).expect("β + α is a root");
            matrix.set(r, c, BigInt::from(sign));
        }
    }
    Ok(CupMatrix {
        n,
        row_index,
        col_index,
        matrix,
    })
}

fn simple_position(diff: &[i64]) -> Option<usize> {
    let mut found = None;
    for (i, &d) in diff.iter().enumerate() {
        match d {
            0 => {}
            1 if found.is_none() => found = Some(i),
            _ => return None,
        }
    }
    found
}

/// All cup matrices for `n = 2..=max_height`.
pub fn cup_matrices(rs: &RootSystem, eps: &EpsilonTable) -> Vec<CupMatrix> {
    (2..=rs.max_height())
        .map(|n| build_cup_matrix(rs, eps, n).expect("levels below the maximum are nonempty"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicVerdict {
    pub dynkin_type: DynkinType,
    pub p: u64,
    pub cartan_invertible: bool,
    pub cup_surjective_per_n: BTreeMap<usize, bool>,
    pub overall: bool,
}

fn cartan_determinant(rs: &RootSystem) -> BigInt {
    determinant(&rs.cartan().map(|&x| BigInt::from(x))).expect("Cartan matrices are square")
}

/// Cartan invertibility and cup surjectivity in characteristic `p`
/// (`p == 0` for ℚ).
pub fn verify_characteristic(rs: &RootSystem, eps: &EpsilonTable, p: u64) -> Result<CharacteristicVerdict, CupError> {
    if p != 0 && !is_prime(p) {
        return Err(CupError::NotACharacteristic(p));
    }
    let det = cartan_determinant(rs);
    let cartan_invertible = if p == 0 {
        !det.is_zero()
    } else {
        !(det % BigInt::from(p)).is_zero()
    };
    let cup_surjective_per_n: BTreeMap<usize, bool> = cup_matrices(rs, eps)
        .iter()
        .map(|m| (m.n, m.is_surjective_in(p)))
        .collect();
    let overall = cartan_invertible && cup_surjective_per_n.values().all(|&b| b);
    Ok(CharacteristicVerdict {
        dynkin_type: rs.dynkin_type(),
        p,
        cartan_invertible,
        cup_surjective_per_n,
        overall,
    })
}

/// Why a prime fails.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BadPrimeSource {
    CartanDeterminant { component: usize },
    Cup { n: usize, component: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPrimeReport {
    pub primes: BTreeSet<u64>,
    pub sources: BTreeMap<u64, Vec<BadPrimeSource>>,
    /// Cartan determinant per component.
    pub cartan_determinants: Vec<BigInt>,
    /// Nonzero elementary divisors per `(n, component)` block.
    pub elementary_divisors: BTreeMap<(usize, usize), Vec<BigInt>>,
    /// Blocks that are not of full row rank even over ℚ.
    pub rational_failures: Vec<(usize, usize)>,
}

/// Exact set of primes where [`verify_characteristic`] fails, with the
/// component and level responsible.
pub fn bad_prime_report(rs: &RootSystem, eps: &EpsilonTable) -> BadPrimeReport {
    let mut sources: BTreeMap<u64, Vec<BadPrimeSource>> = BTreeMap::new();
    let mut cartan_determinants = Vec::new();
    for (c, comp) in rs.components().iter().enumerate() {
        let cart = rs.cartan().select(&comp.simple, &comp.simple).map(|&x| BigInt::from(x));
        let det = determinant(&cart).expect("square");
        for p in prime_divisors(&det) {
            sources.entry(p).or_default().push(BadPrimeSource::CartanDeterminant { component: c });
        }
        cartan_determinants.push(det);
    }
    let mut elementary_divisors = BTreeMap::new();
    let mut rational_failures = Vec::new();
    for m in cup_matrices(rs, eps) {
        for c in 0..rs.components().len() {
            let block = m.component_block(rs, c);
            if block.row_index.is_empty() {
                continue;
            }
            let snf = smith_normal_form(&block.matrix);
            if snf.rank < block.row_index.len() {
                rational_failures.push((m.n, c));
            }
            let mut primes = BTreeSet::new();
            for d in snf.nonzero_divisors() {
                if !d.is_one() {
                    primes.extend(prime_divisors(d));
                }
            }
            for p in primes {
                sources.entry(p).or_default().push(BadPrimeSource::Cup { n: m.n, component: c });
            }
            elementary_divisors.insert((m.n, c), snf.nonzero_divisors().to_vec());
        }
    }
    BadPrimeReport {
        primes: sources.keys().copied().collect(),
        sources,
        cartan_determinants,
        elementary_divisors,
        rational_failures,
    }
}

/// Primes up to 13 together with every prime a report could single out.
pub fn default_prime_sweep(report: &BadPrimeReport) -> Vec<u64> {
    let mut primes: BTreeSet<u64> = primes_up_to(13).into_iter().collect();
    primes.extend(report.primes.iter().copied());
    primes.into_iter().collect()
}
