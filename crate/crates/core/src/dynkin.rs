//! Simply-laced Dynkin types: parsing, canonical Cartan matrices, and
//! recognition of a type from an adjacency graph.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    #[error("cannot parse Dynkin type {0:?}")]
    Parse(String),
    #[error("{family}{rank} is not a simply-laced type")]
    NotSimplyLaced { family: char, rank: usize },
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("diagram contains a cycle")]
    Cycle,
    #[error("node {node} has {degree} neighbours")]
    DegreeTooHigh { node: usize, degree: usize },
    #[error("diagram is a tree but not of type A, D or E (arms {arms:?})")]
    NotAde { arms: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// One irreducible simply-laced type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Irreducible {
    pub family: Family,
    pub rank: usize,
}

impl Irreducible {
    /// Validates and normalizes `D_2 → A_1 + A_1`, `D_3 → A_3`.
    pub fn new(family: Family, rank: usize) -> Result<Vec<Irreducible>, DynkinError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(DynkinError::InvalidRank {
                family: family.letter(),
                rank,
            });
        }
        Ok(match (family, rank) {
            (Family::D, 2) => vec![Irreducible { family: Family::A, rank: 1 }; 2],
            (Family::D, 3) => vec![Irreducible { family: Family::A, rank: 3 }],
            _ => vec![Irreducible { family, rank }],
        })
    }

    pub const fn a(rank: usize) -> Self {
        Irreducible { family: Family::A, rank }
    }

    pub const fn d(rank: usize) -> Self {
        Irreducible { family: Family::D, rank }
    }

    pub const fn e(rank: usize) -> Self {
        Irreducible { family: Family::E, rank }
    }

    /// Edges of the diagram in the default labelling (0-based).
    ///
    /// `A_n` and `D_n` (n ≥ 5) and `E_n` follow Bourbaki. `D_4` uses the
    /// labelling with the branch node last: `α_1, α_2, α_3` all attached to
    /// `α_4`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D if n == 4 => vec![(0, 3), (1, 3), (2, 3)],
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // 1-3-4-5-6(-7-8) with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((4..n).map(|i| (i - 1, i)));
                e
            }
        }
    }

    pub fn cartan_matrix(&self) -> Matrix<i64> {
        let n = self.rank;
        let mut c = Matrix::<i64>::identity(n).map(|x| 2 * x);
        for (a, b) in self.edges() {
            c.set(a, b, -1);
            c.set(b, a, -1);
        }
        c
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            _ => 120,
        }
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A (possibly reducible) simply-laced type, components in canonical order:
/// E before D before A, larger rank first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DynkinType(Vec<Irreducible>);

impl DynkinType {
    pub fn new(components: Vec<Irreducible>) -> Self {
        let mut c = components;
        c.sort_by(|a, b| b.family.cmp(&a.family).then(b.rank.cmp(&a.rank)));
        DynkinType(c)
    }

    pub fn empty() -> Self {
        DynkinType(Vec::new())
    }

    pub fn irreducible(c: Irreducible) -> Self {
        DynkinType(vec![c])
    }

    pub fn components(&self) -> &[Irreducible] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank).sum()
    }

    /// Block-diagonal Cartan matrix, components in canonical order.
    pub fn cartan_matrix(&self) -> Matrix<i64> {
        let blocks: Vec<_> = self.0.iter().map(Irreducible::cartan_matrix).collect();
        Matrix::block_diagonal(&blocks)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for DynkinType {
    type Err = DynkinError;

    /// Accepts `E6`, `A2+A1`, `d4`, `A_2 + A_1`, and `empty`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        if cleaned.eq_ignore_ascii_case("empty") || cleaned == "0" {
            return Ok(DynkinType::empty());
        }
        let mut comps = Vec::new();
        for part in cleaned.split('+') {
            let mut chars = part.chars();
            let letter = chars
                .next()
                .ok_or_else(|| DynkinError::Parse(s.to_string()))?
                .to_ascii_uppercase();
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| DynkinError::Parse(s.to_string()))?;
            let family = match letter {
                'A' => Family::A,
                'D' => Family::D,
                'E' => Family::E,
                'B' | 'C' | 'F' | 'G' => {
                    return Err(DynkinError::NotSimplyLaced { family: letter, rank })
                }
                _ => return Err(DynkinError::Parse(s.to_string())),
            };
            comps.extend(Irreducible::new(family, rank)?);
        }
        Ok(DynkinType::new(comps))
    }
}

/// Connected components of the graph with their recognized types. Node
/// indices inside each component are ascending.
pub fn classify_graph(adjacency: &[Vec<bool>]) -> Result<Vec<(Vec<usize>, Irreducible)>, DynkinError> {
    let n = adjacency.len();
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && adjacency[i][j]).collect())
        .collect();
    for (node, nb) in neighbours.iter().enumerate() {
        if nb.len() >= 4 {
            return Err(DynkinError::DegreeTooHigh {
                node,
                degree: nb.len(),
            });
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in &neighbours[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        let edges: usize = comp.iter().map(|&v| neighbours[v].len()).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return Err(DynkinError::Cycle);
        }
        let ty = classify_tree(&comp, &neighbours)?;
        out.push((comp, ty));
    }
    Ok(out)
}

fn classify_tree(comp: &[usize], neighbours: &[Vec<usize>]) -> Result<Irreducible, DynkinError> {
    let r = comp.len();
    let branch: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| neighbours[v].len() == 3)
        .collect();
    match branch.len() {
        0 => Ok(Irreducible::a(r)),
        1 => {
            let centre = branch[0];
            let mut arms: Vec<usize> = neighbours[centre]
                .iter()
                .map(|&start| arm_length(centre, start, neighbours))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(Irreducible::d(r)),
                [1, 2, 2] => Ok(Irreducible::e(6)),
                [1, 2, 3] => Ok(Irreducible::e(7)),
                [1, 2, 4] => Ok(Irreducible::e(8)),
                _ => Err(DynkinError::NotAde { arms }),
            }
        }
        _ => Err(DynkinError::NotAde { arms: Vec::new() }),
    }
}

fn arm_length(centre: usize, start: usize, neighbours: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (centre, start, 1);
    loop {
        let next: Vec<usize> = neighbours[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_of(edges: &[(usize, usize)], n: usize) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    #[test]
    fn parse_and_display() {
        let t: DynkinType = "A2+A1".parse().unwrap();
        assert_eq!(t.to_string(), "A2+A1");
        let t: DynkinType = "a1 + a2".parse().unwrap();
        assert_eq!(t.to_string(), "A2+A1");
        assert_eq!("D3".parse::<DynkinType>().unwrap().to_string(), "A3");
        assert_eq!("D2".parse::<DynkinType>().unwrap().to_string(), "A1+A1");
        assert_eq!("E_8".parse::<DynkinType>().unwrap().rank(), 8);
        assert!(matches!("B3".parse::<DynkinType>(), Err(DynkinError::NotSimplyLaced { .. })));
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("X".parse::<DynkinType>().is_err());
        assert!("empty".parse::<DynkinType>().unwrap().is_empty());
    }

    #[test]
    fn default_diagrams_classify_to_themselves() {
        let types = [
            Irreducible::a(1),
            Irreducible::a(5),
            Irreducible::d(4),
            Irreducible::d(7),
            Irreducible::e(6),
            Irreducible::e(7),
            Irreducible::e(8),
        ];
        for t in types {
            let comps = classify_graph(&graph_of(&t.edges(), t.rank)).unwrap();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].1, t);
        }
    }

    #[test]
    fn rejects_non_ade() {
        // triangle
        assert_eq!(classify_graph(&graph_of(&[(0, 1), (1, 2), (0, 2)], 3)), Err(DynkinError::Cycle));
        // star with four arms (affine D4)
        assert!(matches!(
            classify_graph(&graph_of(&[(0, 4), (1, 4), (2, 4), (3, 4)], 5)),
            Err(DynkinError::DegreeTooHigh { node: 4, degree: 4 })
        ));
        // affine E6: arms 2,2,2
        let e6_aff = [(0, 1), (1, 6), (2, 3), (3, 6), (4, 5), (5, 6)];
        assert!(matches!(classify_graph(&graph_of(&e6_aff, 7)), Err(DynkinError::NotAde { .. })));
        // two branch points
        let two = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)];
        assert!(classify_graph(&graph_of(&two, 6)).is_err());
    }

    #[test]
    fn d4_cartan_has_central_last() {
        let c = Irreducible::d(4).cartan_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j {
                    2
                } else if i == 3 || j == 3 {
                    -1
                } else {
                    0
                };
                assert_eq!(*c.get(i, j), expected);
            }
        }
    }

    #[test]
    fn reducible_graph() {
        let comps = classify_graph(&graph_of(&[(0, 1)], 3)).unwrap();
        let types: Vec<_> = comps.iter().map(|c| c.1).collect();
        assert_eq!(types, vec![Irreducible::a(2), Irreducible::a(1)]);
        assert_eq!(comps[0].0, vec![0, 1]);
    }
}
