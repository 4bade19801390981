//! Root subsystems given by a base inside an ambient root system, and
//! counting such bases up to the ambient Weyl group.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::dynkin::{classify_graph, DynkinError, DynkinType};
use crate::lattice::{bilinear, LatticeVector};
use crate::linalg::{rank_rational, Matrix};
use crate::root_system::{RootSystem, RootSystemError};

/// Largest ambient rank searched unless the caller raises the cap.
pub const DEFAULT_MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsystemError {
    #[error("{0:?} is not a root of the ambient system")]
    NotARoot(LatticeVector),
    #[error("roots {i} and {j} pair to {pairing}, expected 0 or 1")]
    BadPairing { i: usize, j: usize, pairing: i64 },
    #[error("roots are linearly dependent")]
    Dependent,
    #[error("ambient rank {rank} exceeds the search cap {cap}")]
    AmbientTooLarge { rank: usize, cap: usize },
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// Roots of `ambient` forming a base of a subsystem.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub ambient: RootSystem,
    pub sub_simple_roots: Vec<LatticeVector>,
}

impl Embedding {
    pub fn new(ambient: RootSystem, sub_simple_roots: Vec<LatticeVector>) -> Result<Self, SubsystemError> {
        for v in &sub_simple_roots {
            if !ambient.is_root(v) {
                return Err(SubsystemError::NotARoot(v.clone()));
            }
        }
        for i in 0..sub_simple_roots.len() {
            for j in 0..i {
                let p = ambient.pairing(&sub_simple_roots[i], &sub_simple_roots[j]);
                if p != 0 && p != 1 {
                    return Err(SubsystemError::BadPairing { i: j, j: i, pairing: p });
                }
            }
        }
        if !sub_simple_roots.is_empty() {
            let m = Matrix::from_i64_rows(&sub_simple_roots.iter().map(|v| v.0.clone()).collect::<Vec<_>>())
                .expect("equal lengths")
                .map(|&x: &i64| num_bigint::BigInt::from(x));
            if rank_rational(&m) != sub_simple_roots.len() {
                return Err(SubsystemError::Dependent);
            }
        }
        Ok(Embedding { ambient, sub_simple_roots })
    }

    /// Root system generated by the sub base, in the ambient lattice.
    pub fn closure(&self) -> Result<RootSystem, SubsystemError> {
        Ok(RootSystem::from_simple_roots(self.ambient.gram().clone(), self.sub_simple_roots.clone())?)
    }
}

/// Type of the graph on the sub base with edges where roots pair to 1.
pub fn classify(e: &Embedding) -> Result<DynkinType, SubsystemError> {
    let n = e.sub_simple_roots.len();
    let adjacency: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && e.ambient.pairing(&e.sub_simple_roots[i], &e.sub_simple_roots[j]) == 1)
                .collect()
        })
        .collect();
    let comps = classify_graph(&adjacency)?;
    Ok(DynkinType::new(comps.into_iter().map(|(_, t)| t).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCount {
    pub orbits: usize,
    /// Unordered bases of the given type.
    pub base_sets: usize,
    pub orbit_sizes: Vec<usize>,
    /// One sorted base per orbit, in discovery order.
    pub representatives: Vec<Vec<LatticeVector>>,
    /// Every base closes up to as many roots as the abstract type has.
    pub closure_ok: bool,
}

/// Visits sub-diagram nodes so that each node after the first of its
/// component is adjacent to an earlier one; returns the order.
fn search_order(cartan: &Matrix<i64>) -> Vec<usize> {
    let n = cartan.rows();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in 0..n {
                if !seen[w] && *cartan.get(v, w) == -1 {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

fn canonical(mut set: Vec<LatticeVector>) -> Vec<LatticeVector> {
    set.sort();
    set
}

/// Number of `W(ambient)`-orbits of bases of type `sub` inside the ambient
/// root system, searching only if the ambient rank is at most `max_rank`.
pub fn count_embeddings_up_to_weyl(
    ambient: &DynkinType,
    sub: &DynkinType,
    max_rank: usize,
) -> Result<EmbeddingCount, SubsystemError> {
    if ambient.rank() > max_rank {
        return Err(SubsystemError::AmbientTooLarge {
            rank: ambient.rank(),
            cap: max_rank,
        });
    }
    let rs = RootSystem::from_type(ambient);
    let roots = rs.roots();
    let cartan = sub.cartan_matrix();
    let order = search_order(&cartan);
    let k = order.len();

    // Backtracking over ordered tuples whose pairings match `−C`.
    let mut sets: BTreeSet<Vec<LatticeVector>> = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    fn extend(
        rs: &RootSystem,
        roots: &[LatticeVector],
        cartan: &Matrix<i64>,
        order: &[usize],
        chosen: &mut Vec<usize>,
        sets: &mut BTreeSet<Vec<LatticeVector>>,
    ) {
        let depth = chosen.len();
        if depth == order.len() {
            sets.insert(canonical(chosen.iter().map(|&i| roots[i].clone()).collect()));
            return;
        }
        let node = order[depth];
        'cand: for (ci, cand) in roots.iter().enumerate() {
            for (d, &prev) in chosen.iter().enumerate() {
                if prev == ci || rs.pairing(cand, &roots[prev]) != -cartan.get(node, order[d]) {
                    continue 'cand;
                }
            }
            chosen.push(ci);
            extend(rs, roots, cartan, order, chosen, sets);
            chosen.pop();
        }
    }
    extend(&rs, &roots, &cartan, &order, &mut chosen, &mut sets);

    let expected_roots = 2 * sub.components().iter().map(|c| c.positive_root_count()).sum::<usize>();
    let mut closure_ok = true;
    for s in &sets {
        let closed = RootSystem::from_simple_roots(rs.gram().clone(), s.clone())?;
        closure_ok &= closed.root_count() == expected_roots && closed.roots().iter().all(|r| rs.is_root(r));
    }

    let base_sets = sets.len();
    let mut unvisited = sets;
    let mut orbit_sizes = Vec::new();
    let mut representatives = Vec::new();
    while let Some(start) = unvisited.pop_first() {
        let mut size = 1;
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..rs.rank() {
                let img = canonical(cur.iter().map(|v| rs.simple_reflection(i, v)).collect());
                if unvisited.remove(&img) {
                    size += 1;
                    queue.push_back(img);
                }
            }
        }
        orbit_sizes.push(size);
        representatives.push(start);
    }
    Ok(EmbeddingCount {
        orbits: orbit_sizes.len(),
        base_sets,
        orbit_sizes,
        representatives,
        closure_ok,
    })
}

/// Pairing matrix of a list of vectors under `gram`.
pub fn pairing_matrix(gram: &Matrix<i64>, vs: &[LatticeVector]) -> Matrix<i64> {
    let n = vs.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, bilinear(gram, &vs[i].0, &vs[j].0));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::d4::d4_cubic_configuration;
    use crate::lattice::PicardLattice;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let lat = PicardLattice::blowup(3).unwrap();
        let psi = RootSystem::from_root_set(lat.gram().clone(), &lat.neg2_classes()).unwrap();
        assert_eq!(psi.dynkin_type(), ty("E6"));
        let (_, d4) = d4_cubic_configuration();
        let e = Embedding::new(psi.clone(), d4.simple_roots().to_vec()).unwrap();
        assert_eq!(classify(&e).unwrap(), ty("D4"));
        assert_eq!(e.closure().unwrap().root_count(), 24);

        let single = Embedding::new(psi.clone(), vec![lat.e(1).sub(&lat.e(2))]).unwrap();
        assert_eq!(classify(&single).unwrap(), ty("A1"));
        let a2 = Embedding::new(psi.clone(), vec![lat.e(1).sub(&lat.e(2)), lat.e(2).sub(&lat.e(3))]).unwrap();
        assert_eq!(classify(&a2).unwrap(), ty("A2"));
    }

    #[test]
    fn invalid_embeddings() {
        let a2 = RootSystem::from_type(&ty("A2"));
        let s = a2.simple_roots().to_vec();
        assert!(matches!(
            Embedding::new(a2.clone(), vec![s[0].clone(), s[0].neg()]),
            Err(SubsystemError::BadPairing { .. })
        ));
        assert!(matches!(
            Embedding::new(a2.clone(), vec![LatticeVector(vec![1, -1])]),
            Err(SubsystemError::NotARoot(_))
        ));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_embeddings_up_to_weyl(&ty("A2"), &ty("A1"), 6).unwrap().orbits, 1);
        let c = count_embeddings_up_to_weyl(&ty("A2"), &ty("A1+A1"), 6).unwrap();
        assert_eq!((c.orbits, c.base_sets), (0, 0));
        let c = count_embeddings_up_to_weyl(&ty("A2"), &ty("A1"), 6).unwrap();
        assert_eq!(c.base_sets, 6);
        let c = count_embeddings_up_to_weyl(&ty("D4"), &ty("A1+A1"), 6).unwrap();
        assert!(c.closure_ok);
    }

    #[test]
    fn rank_cap() {
        assert!(matches!(
            count_embeddings_up_to_weyl(&ty("E7"), &ty("A1"), DEFAULT_MAX_RANK),
            Err(SubsystemError::AmbientTooLarge { rank: 7, cap: 6 })
        ));
    }
}
