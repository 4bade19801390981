//! Root chains, fundamental cycles and divisor sequences on a root poset.
//!
//! Coefficient vectors here are component-local unless stated otherwise: the
//! `i`-th entry refers to the `i`-th simple root of the component.

use thiserror::Error;

use crate::lattice::LatticeVector;
use crate::root_system::{RootSystem, RootSystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{0:?} is not a positive root")]
    NotPositive(LatticeVector),
    #[error("roots lie in different components ({0} and {1})")]
    DifferentComponents(usize, usize),
    #[error("difference is not a nonnegative sum of simple roots: {0:?}")]
    NotDominated(Vec<i64>),
    #[error("no simple root can be removed from {0:?}")]
    NoDescent(Vec<i64>),
    #[error("highest root {highest:?} disagrees with saturation {saturated:?}")]
    CycleMismatch { highest: Vec<i64>, saturated: Vec<i64> },
    #[error("invalid chain: {0}")]
    Invalid(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// Positive roots `β_0, …, β_t` with consecutive differences simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootChain {
    pub steps: Vec<LatticeVector>,
}

impl RootChain {
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.steps.len() <= 1
    }

    /// Checks every step is a positive root and every increment is simple.
    pub fn validate(&self, rs: &RootSystem) -> Result<(), ChainError> {
        if self.steps.is_empty() {
            return Err(ChainError::Invalid("empty chain".into()));
        }
        for s in &self.steps {
            if rs.index_of(s).is_none() {
                return Err(ChainError::NotPositive(s.clone()));
            }
        }
        for w in self.steps.windows(2) {
            let diff = w[1].sub(&w[0]);
            if !rs.simple_roots().contains(&diff) {
                return Err(ChainError::Invalid(format!("step {:?} -> {:?} is not simple", w[0], w[1])));
            }
        }
        Ok(())
    }
}

fn positive_index(rs: &RootSystem, v: &LatticeVector) -> Result<usize, ChainError> {
    rs.index_of(v).ok_or_else(|| ChainError::NotPositive(v.clone()))
}

/// A chain from `beta` up to `gamma`, built top-down by removing at each
/// step the lowest-index simple summand `α_i` with `(γ, α_i) = −1`.
pub fn root_sequence(rs: &RootSystem, beta: &LatticeVector, gamma: &LatticeVector) -> Result<RootChain, ChainError> {
    let bi = positive_index(rs, beta)?;
    let gi = positive_index(rs, gamma)?;
    let (b, g) = (&rs.positive_roots()[bi], &rs.positive_roots()[gi]);
    if b.component != g.component {
        return Err(ChainError::DifferentComponents(b.component, g.component));
    }
    let mut diff: Vec<i64> = g.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
    if diff.iter().any(|&c| c < 0) {
        return Err(ChainError::NotDominated(diff));
    }
    let mut current = g.coeffs.clone();
    let mut steps = vec![gamma.clone()];
    while diff.iter().any(|&c| c != 0) {
        let cur_vec = rs.combine(&current);
        let i = (0..diff.len())
            .find(|&i| diff[i] > 0 && rs.pairing(&cur_vec, &rs.simple_roots()[i]) == -1)
            .ok_or_else(|| ChainError::NoDescent(current.clone()))?;
        current[i] -= 1;
        diff[i] -= 1;
        steps.push(rs.combine(&current));
    }
    steps.reverse();
    Ok(RootChain { steps })
}

/// Highest-root coefficients of a component, cross-checked against
/// [`saturation_cycle`].
pub fn fundamental_cycle(rs: &RootSystem, component: usize) -> Result<Vec<i64>, ChainError> {
    let highest = rs.local_coeffs(rs.highest_root(component)?);
    let saturated = saturation_cycle(rs, component)?;
    if highest != saturated {
        return Err(ChainError::CycleMismatch { highest, saturated });
    }
    Ok(highest)
}

/// Start from the first simple root and add `D_i` while `(Z, D_i) ≥ 1`.
pub fn saturation_cycle(rs: &RootSystem, component: usize) -> Result<Vec<i64>, ChainError> {
    let comp = rs.component(component)?;
    let simple = &comp.simple;
    if simple.is_empty() {
        return Err(RootSystemError::Empty.into());
    }
    let mut z = vec![0i64; simple.len()];
    z[0] = 1;
    loop {
        let zv = global(rs, simple, &z);
        let Some(i) = (0..simple.len()).find(|&i| rs.pairing(&zv, &rs.simple_roots()[simple[i]]) >= 1) else {
            return Ok(z);
        };
        z[i] += 1;
    }
}

fn global(rs: &RootSystem, simple: &[usize], local: &[i64]) -> LatticeVector {
    let mut coeffs = vec![0i64; rs.rank()];
    for (&s, &c) in simple.iter().zip(local) {
        coeffs[s] = c;
    }
    rs.combine(&coeffs)
}

/// Effective cycles `0 = Z_0 < Z_1 < … < Z_N = Z` over one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSequence {
    pub component: usize,
    pub cycles: Vec<Vec<i64>>,
    pub fundamental_cycle: Vec<i64>,
    pub n: usize,
}

impl DivisorSequence {
    pub fn reduced_cycle(&self) -> Vec<i64> {
        vec![1; self.fundamental_cycle.len()]
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<(), ChainError> {
        let simple = &rs.component(self.component)?.simple;
        let r = simple.len();
        let bad = |m: String| Err(ChainError::Invalid(m));
        if self.cycles.len() != self.n + 1 {
            return bad(format!("expected {} cycles, found {}", self.n + 1, self.cycles.len()));
        }
        if self.fundamental_cycle.iter().sum::<i64>() != self.n as i64 {
            return bad("N differs from the coefficient sum of Z".into());
        }
        if self.cycles[0].iter().any(|&c| c != 0) {
            return bad("Z_0 is not zero".into());
        }
        if self.cycles[self.n] != self.fundamental_cycle {
            return bad("last cycle is not Z".into());
        }
        if self.n < r || self.cycles[r] != self.reduced_cycle() {
            return bad("Z_r is not the reduced cycle".into());
        }
        for w in self.cycles.windows(2) {
            let d: Vec<i64> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
            if d.iter().any(|&x| x < 0) || d.iter().sum::<i64>() != 1 {
                return bad(format!("{:?} -> {:?} is not a simple step", w[0], w[1]));
            }
        }
        for z in &self.cycles {
            let zv = global(rs, simple, z);
            for &s in simple {
                let p = rs.pairing(&zv, &rs.simple_roots()[s]);
                if p > 1 {
                    return bad(format!("({z:?}, D_{s}) = {p} exceeds 1"));
                }
            }
        }
        let red = global(rs, simple, &self.reduced_cycle());
        if rs.pairing(&red, &red) != -2 || rs.index_of(&red).is_none() {
            return bad("reduced cycle is not a root of norm -2".into());
        }
        Ok(())
    }
}

/// Chains `D_1 → Z_red` and `Z_red → Z`, prefixed by `Z_0 = 0`.
pub fn divisor_sequence(rs: &RootSystem, component: usize) -> Result<DivisorSequence, ChainError> {
    let z = fundamental_cycle(rs, component)?;
    let simple = rs.component(component)?.simple.clone();
    let r = simple.len();
    let first = global(rs, &simple, &{
        let mut v = vec![0; r];
        v[0] = 1;
        v
    });
    let red = global(rs, &simple, &vec![1; r]);
    let top = global(rs, &simple, &z);
    let lower = root_sequence(rs, &first, &red)?;
    let upper = root_sequence(rs, &red, &top)?;
    let mut cycles = vec![vec![0i64; r]];
    for v in lower.steps.iter().chain(upper.steps.iter().skip(1)) {
        let idx = rs.index_of(v).expect("chain steps are positive roots");
        cycles.push(rs.local_coeffs(&rs.positive_roots()[idx]));
    }
    let seq = DivisorSequence {
        component,
        n: z.iter().sum::<i64>() as usize,
        fundamental_cycle: z,
        cycles,
    };
    seq.validate(rs)?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{DynkinType, Irreducible};

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type(&s.parse::<DynkinType>().unwrap())
    }

    #[test]
    fn trivial_chain() {
        let a2 = rs("A2");
        let b = a2.simple_roots()[0].clone();
        let c = root_sequence(&a2, &b, &b).unwrap();
        assert_eq!(c.steps, vec![b]);
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn a2_chain() {
        let a2 = rs("A2");
        let b = a2.simple_roots()[0].clone();
        let g = a2.combine(&[1, 1]);
        let c = root_sequence(&a2, &b, &g).unwrap();
        assert_eq!(c.steps, vec![b, g]);
    }

    #[test]
    fn d4_chain_to_highest_root() {
        let d4 = RootSystem::from_type(&DynkinType::irreducible(Irreducible::d(4)));
        let b = d4.simple_roots()[0].clone();
        let g = d4.combine(&[1, 1, 1, 2]);
        let c = root_sequence(&d4, &b, &g).unwrap();
        assert_eq!(c.len(), 4);
        c.validate(&d4).unwrap();
    }

    #[test]
    fn rejects_bad_inputs() {
        let a2 = rs("A2");
        let g = a2.combine(&[1, 1]);
        let b = a2.simple_roots()[0].clone();
        assert!(matches!(root_sequence(&a2, &g, &b), Err(ChainError::NotDominated(_))));
        let two = rs("A1+A1");
        let (x, y) = (two.simple_roots()[0].clone(), two.simple_roots()[1].clone());
        assert!(matches!(root_sequence(&two, &x, &y), Err(ChainError::DifferentComponents(..))));
        assert!(matches!(
            root_sequence(&a2, &b, &LatticeVector(vec![2, 0])),
            Err(ChainError::NotPositive(_))
        ));
    }

    #[test]
    fn fundamental_cycles() {
        assert_eq!(fundamental_cycle(&rs("A1"), 0).unwrap(), vec![1]);
        assert_eq!(fundamental_cycle(&rs("A5"), 0).unwrap(), vec![1; 5]);
        assert_eq!(fundamental_cycle(&rs("D4"), 0).unwrap(), vec![1, 1, 1, 2]);
    }

    #[test]
    fn divisor_sequences() {
        let a1 = divisor_sequence(&rs("A1"), 0).unwrap();
        assert_eq!(a1.cycles, vec![vec![0], vec![1]]);
        let d4 = divisor_sequence(&rs("D4"), 0).unwrap();
        assert_eq!(d4.n, 5);
        assert_eq!(d4.cycles[4], vec![1, 1, 1, 1]);
        assert_eq!(d4.cycles[5], vec![1, 1, 1, 2]);
        let a3 = divisor_sequence(&rs("A3"), 0).unwrap();
        assert_eq!(a3.cycles, vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn validator_rejects_tampering() {
        let d4r = rs("D4");
        let mut s = divisor_sequence(&d4r, 0).unwrap();
        s.cycles.swap(2, 3);
        assert!(s.validate(&d4r).is_err());
    }
}
