use rootforge_core::dynkin::DynkinType;
use rootforge_core::lattice::{LatticeVector, PicardLattice};
use rootforge_core::RootSystem;

/// All `b ∈ ℤⁿ` with `Σ b_i² = sq` and `Σ b_i = sum`, by direct recursion.
fn fixed_square_sum(n: usize, sq: i64, sum: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let left = (n - prefix.len()) as i64;
    if sum * sum > left * sq {
        return;
    }
    if left == 0 {
        if sq == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let bound = (sq as f64).sqrt() as i64;
    for b in -bound..=bound {
        if b * b > sq {
            continue;
        }
        prefix.push(b);
        fixed_square_sum(n, sq - b * b, sum - b, prefix, out);
        prefix.pop();
    }
}

/// Classes `a·h − Σ b_i e_i` with `a² − Σ b_i² = norm` and `3a − Σ b_i = degree`.
fn brute_force(d: u32, norm: i64, degree: i64) -> Vec<LatticeVector> {
    let n = (9 - d) as usize;
    let mut out = Vec::new();
    for a in -8i64..=8 {
        let sq = a * a - norm;
        if sq < 0 {
            continue;
        }
        let mut bs = Vec::new();
        fixed_square_sum(n, sq, 3 * a - degree, &mut Vec::new(), &mut bs);
        for b in bs {
            let mut v = vec![a];
            v.extend(b.iter().map(|x| -x));
            out.push(LatticeVector(v));
        }
    }
    out.sort();
    out
}

#[test]
fn psi_matches_brute_force() {
    for d in 1..=9 {
        let lat = PicardLattice::blowup(d).unwrap();
        assert_eq!(lat.neg2_classes(), brute_force(d, -2, 0), "degree {d}");
    }
}

#[test]
fn psi_counts_frozen() {
    let counts: Vec<usize> = (1..=9).map(|d| brute_force(d, -2, 0).len()).collect();
    assert_eq!(counts, vec![240, 126, 72, 40, 20, 8, 2, 0, 0]);
}

#[test]
fn lines_match_brute_force() {
    for d in 1..=8 {
        let lat = PicardLattice::blowup(d).unwrap();
        assert_eq!(lat.neg1_classes(), brute_force(d, -1, 1), "degree {d}");
    }
    assert_eq!(brute_force(3, -1, 1).len(), 27);
    assert_eq!(brute_force(7, -1, 1).len(), 3);
    assert_eq!(brute_force(1, -1, 1).len(), 240);
}

#[test]
fn quadric_classes() {
    let q = PicardLattice::quadric();
    assert_eq!(q.neg2_classes(), vec![LatticeVector(vec![-1, 1]), LatticeVector(vec![1, -1])]);
    assert!(q.neg1_classes().is_empty());
}

#[test]
fn psi_types() {
    let expected = ["E8", "E7", "E6", "D5", "A4", "A2+A1", "A1"];
    for (d, t) in (1..=7).zip(expected) {
        let lat = PicardLattice::blowup(d).unwrap();
        let rs = RootSystem::from_root_set(lat.gram().clone(), &lat.neg2_classes()).unwrap();
        assert_eq!(rs.dynkin_type(), t.parse::<DynkinType>().unwrap(), "degree {d}");
        assert_eq!(rs.root_count(), lat.neg2_classes().len());
    }
    let q = PicardLattice::quadric();
    let rs = RootSystem::from_root_set(q.gram().clone(), &q.neg2_classes()).unwrap();
    assert_eq!(rs.dynkin_type().to_string(), "A1");
}

#[test]
fn lines_meet_roots_in_small_pairings() {
    let lat = PicardLattice::blowup(3).unwrap();
    for l in lat.neg1_classes() {
        for r in lat.neg2_classes() {
            assert!(lat.dot(&l, &r).abs() <= 1);
        }
    }
}
