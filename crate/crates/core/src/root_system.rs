//! Simply-laced root systems living in an integral lattice.
//!
//! Pairings follow the intersection-form convention: simple roots have norm
//! `−2` and adjacent simple roots pair to `+1`, so the Cartan matrix is
//! `C_ij = (−α_i, α_j)` and the coroot of `α` is `x ↦ (−α, x)`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use thiserror::Error;

use crate::dynkin::{classify_graph, DynkinError, DynkinType, Irreducible};
use crate::lattice::{bilinear, LatticeVector, PicardLattice};
use crate::linalg::{determinant, rank_rational, Matrix};
use crate::scalar::prime_divisors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("simple root {index} has norm {norm}, expected -2")]
    BadNorm { index: usize, norm: i64 },
    #[error("simple roots {i} and {j} pair to {pairing}, expected 0 or 1")]
    NotSimple { i: usize, j: usize, pairing: i64 },
    #[error("simple roots are linearly dependent")]
    Dependent,
    #[error("vector {0:?} is not in the given set of (-2)-classes")]
    NotInPsi(LatticeVector),
    #[error("vector {0:?} is not a root")]
    NotARoot(LatticeVector),
    #[error("vector has length {got}, ambient rank is {rank}")]
    Dimension { rank: usize, got: usize },
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("root system has no components")]
    Empty,
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error("root system of rank {rank} does not fit in a lattice of rank {lattice_rank}")]
    TooLarge { rank: usize, lattice_rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coordinates over the simple roots.
    pub coeffs: Vec<i64>,
    /// Coordinates in the ambient lattice.
    pub vector: LatticeVector,
    pub height: usize,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Indices into the simple roots, ascending.
    pub simple: Vec<usize>,
    pub kind: Irreducible,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    gram: Matrix<i64>,
    cartan: Matrix<i64>,
    simple: Vec<LatticeVector>,
    positive: Vec<PositiveRoot>,
    components: Vec<Component>,
    by_coeffs: HashMap<Vec<i64>, usize>,
    by_vector: HashMap<LatticeVector, usize>,
}

impl RootSystem {
    /// Root system with the given simple roots inside a lattice with Gram
    /// matrix `gram`. The order of `simple` is kept.
    pub fn from_simple_roots(gram: Matrix<i64>, simple: Vec<LatticeVector>) -> Result<Self, RootSystemError> {
        let rank = gram.rows();
        for v in &simple {
            if v.len() != rank {
                return Err(RootSystemError::Dimension { rank, got: v.len() });
            }
        }
        let r = simple.len();
        let mut adjacency = vec![vec![false; r]; r];
        for i in 0..r {
            let norm = bilinear(&gram, &simple[i].0, &simple[i].0);
            if norm != -2 {
                return Err(RootSystemError::BadNorm { index: i, norm });
            }
            for j in 0..i {
                let p = bilinear(&gram, &simple[i].0, &simple[j].0);
                match p {
                    0 => {}
                    1 => {
                        adjacency[i][j] = true;
                        adjacency[j][i] = true;
                    }
                    _ => return Err(RootSystemError::NotSimple { i: j, j: i, pairing: p }),
                }
            }
        }
        if r > 0 {
            let m = Matrix::from_rows(simple.iter().map(|v| v.0.iter().map(|&x| BigInt::from(x)).collect()).collect())
                .expect("equal lengths");
            if rank_rational(&m) != r {
                return Err(RootSystemError::Dependent);
            }
        }
        let classified = classify_graph(&adjacency)?;
        let components: Vec<Component> = classified
            .into_iter()
            .map(|(simple, kind)| Component { simple, kind })
            .collect();

        let mut cartan = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                cartan.set(i, j, -bilinear(&gram, &simple[i].0, &simple[j].0));
            }
        }
        let mut rs = RootSystem {
            gram,
            cartan,
            simple,
            positive: Vec::new(),
            components,
            by_coeffs: HashMap::new(),
            by_vector: HashMap::new(),
        };
        rs.saturate();
        Ok(rs)
    }

    /// Abstract root system of the given type: the lattice is the root
    /// lattice with Gram matrix `−C`, and the simple roots are the unit vectors.
    pub fn from_type(t: &DynkinType) -> Self {
        let cartan = t.cartan_matrix();
        let n = cartan.rows();
        let gram = cartan.map(|x| -x);
        let simple = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        Self::from_simple_roots(gram, simple).expect("canonical Cartan matrices are valid")
    }

    /// Root system spanned by `basis` inside the lattice, checking that every
    /// generated root lies in `psi`.
    pub fn detect_simple_roots(
        lattice: &PicardLattice,
        psi: &[LatticeVector],
        basis: &[LatticeVector],
    ) -> Result<Self, RootSystemError> {
        let psi_set: BTreeSet<&LatticeVector> = psi.iter().collect();
        for b in basis {
            if !psi_set.contains(b) {
                return Err(RootSystemError::NotInPsi(b.clone()));
            }
        }
        let rs = Self::from_simple_roots(lattice.gram().clone(), basis.to_vec())?;
        for root in &rs.positive {
            if !psi_set.contains(&root.vector) || !psi_set.contains(&root.vector.neg()) {
                return Err(RootSystemError::NotInPsi(root.vector.clone()));
            }
        }
        Ok(rs)
    }

    /// Recovers a base from a full, negation-closed root set: positive roots
    /// are the lexicographically positive ones, simple roots are those that
    /// are not a sum of two positive roots.
    pub fn from_root_set(gram: Matrix<i64>, roots: &[LatticeVector]) -> Result<Self, RootSystemError> {
        let positive: Vec<&LatticeVector> = roots
            .iter()
            .filter(|v| v.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
            .collect();
        let pos_set: BTreeSet<&LatticeVector> = positive.iter().copied().collect();
        let simple: Vec<LatticeVector> = positive
            .iter()
            .filter(|v| {
                !positive
                    .iter()
                    .any(|a| *a != **v && pos_set.contains(&v.sub(a)))
            })
            .map(|v| (*v).clone())
            .collect();
        Self::from_simple_roots(gram, simple)
    }

    fn saturate(&mut self) {
        let r = self.simple.len();
        let cartan = self.cartan.clone();
        let mut levels: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let first: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut c = vec![0; r];
                c[i] = 1;
                c
            })
            .collect();
        seen.extend(first.iter().cloned());
        levels.push(first);
        loop {
            let mut next = Vec::new();
            for beta in levels.last().expect("nonempty") {
                for i in 0..r {
                    // β + α_i is a root iff (β, α_i) = 1
                    let pairing: i64 = -(0..r).map(|j| beta[j] * cartan.get(j, i)).sum::<i64>();
                    if pairing != 1 {
                        continue;
                    }
                    let mut cand = beta.clone();
                    cand[i] += 1;
                    if seen.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let comp_of_simple: Vec<usize> = {
            let mut v = vec![0; r];
            for (ci, c) in self.components.iter().enumerate() {
                for &s in &c.simple {
                    v[s] = ci;
                }
            }
            v
        };
        let mut positive = Vec::new();
        for (h, mut level) in levels.into_iter().enumerate() {
            level.sort_by(|a, b| b.cmp(a));
            for coeffs in level {
                let vector = self.combine(&coeffs);
                let first = coeffs.iter().position(|&c| c != 0).expect("nonzero root");
                positive.push(PositiveRoot {
                    component: comp_of_simple[first],
                    coeffs,
                    vector,
                    height: h + 1,
                });
            }
        }
        self.by_coeffs = positive.iter().enumerate().map(|(i, p)| (p.coeffs.clone(), i)).collect();
        self.by_vector = positive.iter().enumerate().map(|(i, p)| (p.vector.clone(), i)).collect();
        self.positive = positive;
    }

    /// `Σ c_i α_i` in ambient coordinates.
    pub fn combine(&self, coeffs: &[i64]) -> LatticeVector {
        let mut v = vec![0i64; self.gram.rows()];
        for (c, s) in coeffs.iter().zip(&self.simple) {
            if *c == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(&s.0) {
                *x += c * y;
            }
        }
        LatticeVector(v)
    }

    pub fn gram(&self) -> &Matrix<i64> {
        &self.gram
    }

    pub fn ambient_rank(&self) -> usize {
        self.gram.rows()
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    /// All roots, positive ones first, then their negatives.
    pub fn roots(&self) -> Vec<LatticeVector> {
        let mut out: Vec<LatticeVector> = self.positive.iter().map(|p| p.vector.clone()).collect();
        out.extend(self.positive.iter().map(|p| p.vector.neg()));
        out
    }

    pub fn root_count(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn dynkin_type(&self) -> DynkinType {
        DynkinType::new(self.components.iter().map(|c| c.kind).collect())
    }

    pub fn component(&self, index: usize) -> Result<&Component, RootSystemError> {
        self.components.get(index).ok_or(RootSystemError::NoSuchComponent(index))
    }

    pub fn pairing(&self, v: &LatticeVector, w: &LatticeVector) -> i64 {
        bilinear(&self.gram, &v.0, &w.0)
    }

    /// Pairing of two roots given by simple-root coordinates.
    pub fn pairing_coeffs(&self, a: &[i64], b: &[i64]) -> i64 {
        let cartan = &self.cartan;
        -(0..a.len())
            .map(|i| (0..b.len()).map(|j| a[i] * cartan.get(i, j) * b[j]).sum::<i64>())
            .sum::<i64>()
    }

    /// Index of the positive root with the given simple-root coordinates.
    pub fn index_of_coeffs(&self, coeffs: &[i64]) -> Option<usize> {
        self.by_coeffs.get(coeffs).copied()
    }

    /// Index of the positive root with the given ambient coordinates.
    pub fn index_of(&self, v: &LatticeVector) -> Option<usize> {
        self.by_vector.get(v).copied()
    }

    /// `Some(true)` for a positive root, `Some(false)` for a negative one.
    pub fn root_sign(&self, v: &LatticeVector) -> Option<bool> {
        if self.by_vector.contains_key(v) {
            Some(true)
        } else if self.by_vector.contains_key(&v.neg()) {
            Some(false)
        } else {
            None
        }
    }

    pub fn is_root(&self, v: &LatticeVector) -> bool {
        self.root_sign(v).is_some()
    }

    /// Positive roots of height exactly `n`, in storage order.
    pub fn level(&self, n: usize) -> Vec<usize> {
        (0..self.positive.len()).filter(|&i| self.positive[i].height == n).collect()
    }

    pub fn max_height(&self) -> usize {
        self.positive.iter().map(|p| p.height).max().unwrap_or(0)
    }

    /// Number of positive roots at each height `1..=max_height`.
    pub fn height_profile(&self) -> Vec<usize> {
        (1..=self.max_height()).map(|n| self.level(n).len()).collect()
    }

    /// `C_ij = ⟨α_i^∨, α_j⟩ = (−α_i, α_j)`.
    pub fn cartan_matrix(&self) -> Matrix<i64> {
        self.cartan.clone()
    }

    pub fn cartan(&self) -> &Matrix<i64> {
        &self.cartan
    }

    fn check_root(&self, alpha: &LatticeVector) -> Result<(), RootSystemError> {
        if alpha.len() != self.ambient_rank() {
            return Err(RootSystemError::Dimension {
                rank: self.ambient_rank(),
                got: alpha.len(),
            });
        }
        if !self.is_root(alpha) {
            return Err(RootSystemError::NotARoot(alpha.clone()));
        }
        Ok(())
    }

    /// The coroot `α^∨ = (−α, ·)` as a linear functional.
    pub fn coroot(&self, alpha: &LatticeVector) -> Result<Coroot, RootSystemError> {
        self.check_root(alpha)?;
        let functional = self.gram.mul_vec(&alpha.0).into_iter().map(|x| -x).collect();
        Ok(Coroot { functional })
    }

    /// The reflection `v ↦ v − ⟨α^∨, v⟩ α`.
    pub fn reflect(&self, alpha: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector, RootSystemError> {
        self.check_root(alpha)?;
        if v.len() != self.ambient_rank() {
            return Err(RootSystemError::Dimension {
                rank: self.ambient_rank(),
                got: v.len(),
            });
        }
        Ok(self.reflect_unchecked(alpha, v))
    }

    pub(crate) fn reflect_unchecked(&self, alpha: &LatticeVector, v: &LatticeVector) -> LatticeVector {
        let k = -self.pairing(alpha, v);
        v.sub(&alpha.scale(k))
    }

    /// Reflection in the `i`-th simple root.
    pub fn simple_reflection(&self, i: usize, v: &LatticeVector) -> LatticeVector {
        self.reflect_unchecked(&self.simple[i], v)
    }

    /// The unique positive root of maximal height in a component.
    pub fn highest_root(&self, component: usize) -> Result<&PositiveRoot, RootSystemError> {
        self.component(component)?;
        self.positive
            .iter()
            .filter(|p| p.component == component)
            .max_by_key(|p| p.height)
            .ok_or(RootSystemError::Empty)
    }

    /// Component-local simple-root coordinates of a positive root.
    pub fn local_coeffs(&self, root: &PositiveRoot) -> Vec<i64> {
        self.components[root.component]
            .simple
            .iter()
            .map(|&s| root.coeffs[s])
            .collect()
    }

    /// Dimension data of the reductive group attached to this root system in
    /// the degree-`d` Picard lattice.
    pub fn group_dimensions(&self, d: u32) -> Result<GroupDimensions, RootSystemError> {
        let lattice_rank = 10usize.saturating_sub(d as usize);
        if self.rank() > lattice_rank {
            return Err(RootSystemError::TooLarge {
                rank: self.rank(),
                lattice_rank,
            });
        }
        Ok(GroupDimensions {
            dim_g: lattice_rank + self.root_count(),
            semisimple_rank: self.rank(),
            torus_quotient_dim: lattice_rank - self.rank(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupDimensions {
    pub dim_g: usize,
    pub semisimple_rank: usize,
    pub torus_quotient_dim: usize,
}

/// A coroot viewed as a linear functional on the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coroot {
    functional: Vec<i64>,
}

impl Coroot {
    pub fn eval(&self, x: &LatticeVector) -> i64 {
        self.functional.iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    pub fn functional(&self) -> &[i64] {
        &self.functional
    }
}

/// Primes at which a characteristic fails to be very good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeryGoodPrimes {
    pub bad_primes: BTreeSet<u64>,
    /// Primes dividing a highest-root coefficient (the non-good primes).
    pub coefficient_primes: BTreeSet<u64>,
    /// Primes dividing a Cartan determinant.
    pub determinant_primes: BTreeSet<u64>,
    pub description: String,
}

impl VeryGoodPrimes {
    /// 0 is always very good; a prime is very good iff it is not bad.
    pub fn is_very_good(&self, p: u64) -> bool {
        p == 0 || !self.bad_primes.contains(&p)
    }
}

/// Bad primes of a type, from highest-root coefficients and Cartan
/// determinants of its components.
pub fn very_good_primes(t: &DynkinType) -> VeryGoodPrimes {
    let mut coefficient_primes = BTreeSet::new();
    let mut determinant_primes = BTreeSet::new();
    for comp in t.components() {
        let rs = RootSystem::from_type(&DynkinType::irreducible(*comp));
        let top = rs.highest_root(0).expect("irreducible");
        for c in &top.coeffs {
            coefficient_primes.extend(prime_divisors(c));
        }
        let det = determinant(&rs.cartan_matrix().map(|&x| BigInt::from(x))).expect("square");
        determinant_primes.extend(prime_divisors(&det));
    }
    let bad: BTreeSet<u64> = coefficient_primes.union(&determinant_primes).copied().collect();
    let description = if bad.is_empty() {
        "every characteristic is very good".to_string()
    } else {
        let list: Vec<String> = bad.iter().map(u64::to_string).collect();
        format!("very good characteristics: 0 and all primes except {}", list.join(", "))
    };
    VeryGoodPrimes {
        bad_primes: bad,
        coefficient_primes,
        determinant_primes,
        description,
    }
}
