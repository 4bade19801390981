//! The `D_4` configuration on a cubic surface and the ten-dimensional module
//! `𝔲_{≤3}` in characteristic 2.
//!
//! Labels are 1-based: `α_1, α_2, α_3` are the outer nodes and `α_4` the
//! branch node. With the sign convention of [`EpsilonTable`] one has
//! `x_{α_i+α_4} = [x_{α_4}, x_{α_i}]` and
//! `x_{α_i+α_j+α_4} = [x_{α_j+α_4}, x_{α_i}] = [x_{α_i+α_4}, x_{α_j}]`,
//! which [`D4Module::new`] checks.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use thiserror::Error;

use crate::lattice::{LatticeVector, PicardLattice};
use crate::lie::{Element, EpsilonTable, LieError, NilpotentAlgebra};
use crate::linalg::{coordinates_in_span, rank_over, Matrix};
use crate::root_system::RootSystem;
use crate::scalar::{Field, FiniteField, Ring};

/// `x_0(x_1+x_2+x_3)^2 − x_1x_2x_3 = 0`: the three lines do not meet.
pub const CUBIC_ORDINARY: &str = "x0*(x1+x2+x3)^2 - x1*x2*x3 = 0";
/// `x_0(x_1+x_2+x_3)^2 + x_1x_2(x_1+x_2) = 0`: the three lines are concurrent.
pub const CUBIC_SUPERSINGULAR: &str = "x0*(x1+x2+x3)^2 + x1*x2*(x1+x2) = 0";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum D4Error {
    #[error("basis label {0} disagrees with its bracket definition")]
    Inconsistent(Label),
    #[error("exp computation and closed form disagree for {action} on basis vector {basis}")]
    Disagreement { action: String, basis: usize },
    #[error("characteristic {0} given, the decomposition needs characteristic 2")]
    WrongCharacteristic(u64),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Degree-3 Picard lattice with `α_i = e_i − e_{i+3}` (`i ≤ 3`) and
/// `α_4 = h − e_1 − e_2 − e_3`.
pub fn d4_cubic_configuration() -> (PicardLattice, RootSystem) {
    let lattice = PicardLattice::blowup(3).expect("degree 3 is valid");
    let mut simple: Vec<LatticeVector> = (1..=3).map(|i| lattice.e(i).sub(&lattice.e(i + 3))).collect();
    simple.push(lattice.class(1, &[1, 1, 1, 0, 0, 0]));
    let rs = RootSystem::from_simple_roots(lattice.gram().clone(), simple).expect("the four classes form a D4 basis");
    (lattice, rs)
}

/// `e_4, e_5, e_6` and `h − e_i − e_{i+3}` for `i = 1, 2, 3`.
pub fn six_lines(lattice: &PicardLattice) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = (4..=6).map(|i| lattice.e(i)).collect();
    for i in 1..=3 {
        out.push(lattice.h().sub(&lattice.e(i)).sub(&lattice.e(i + 3)));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// `x_{α_i}`, `i ∈ 1..=4`.
    Simple(usize),
    /// `x_{α_i+α_4}`, `i ∈ 1..=3`.
    PlusFour(usize),
    /// `x_{α_i+α_j+α_4}`, `i < j ≤ 3`.
    Triple(usize, usize),
}

impl Label {
    pub fn all() -> Vec<Label> {
        let mut out: Vec<Label> = (1..=4).map(Label::Simple).collect();
        out.extend((1..=3).map(Label::PlusFour));
        out.extend([(1, 2), (1, 3), (2, 3)].map(|(i, j)| Label::Triple(i, j)));
        out
    }

    fn coeffs(self) -> Vec<i64> {
        let mut c = vec![0; 4];
        match self {
            Label::Simple(i) => c[i - 1] = 1,
            Label::PlusFour(i) => {
                c[i - 1] = 1;
                c[3] = 1;
            }
            Label::Triple(i, j) => {
                c[i - 1] = 1;
                c[j - 1] = 1;
                c[3] = 1;
            }
        }
        c
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Simple(i) => write!(f, "x_a{i}"),
            Label::PlusFour(i) => write!(f, "x_a{i}+a4"),
            Label::Triple(i, j) => write!(f, "x_a{i}+a{j}+a4"),
        }
    }
}

/// Group elements acting on `𝔲_{≤3}`.
#[derive(Debug, Clone, PartialEq)]
pub enum UnipotentAction<T> {
    /// `u_λ = exp(λx_{α_1}) exp(λx_{α_2}) exp(λx_{α_3})`.
    U(T),
    /// `v_λ = exp(λx_{α_4})`.
    V(T),
    /// `u_λ v_λ`.
    UV(T),
    /// `[v_1, u_μ] = v_1 u_μ v_1⁻¹ u_μ⁻¹`.
    Commutator(T),
}

impl<T: Ring> UnipotentAction<T> {
    fn name(&self) -> &'static str {
        match self {
            UnipotentAction::U(_) => "u",
            UnipotentAction::V(_) => "v",
            UnipotentAction::UV(_) => "uv",
            UnipotentAction::Commutator(_) => "[v1,u]",
        }
    }
}

/// `𝔲_{≤3}` for `D_4` over the scalar ring `T`.
#[derive(Debug, Clone)]
pub struct D4Module<T> {
    lattice: PicardLattice,
    rs: RootSystem,
    algebra: NilpotentAlgebra,
    full: NilpotentAlgebra,
    index: BTreeMap<Label, usize>,
    _scalar: PhantomData<T>,
}

impl<T: Ring> D4Module<T> {
    pub fn new() -> Result<Self, D4Error> {
        let (lattice, rs) = d4_cubic_configuration();
        let eps = EpsilonTable::build(&rs);
        let algebra = NilpotentAlgebra::build(&rs, &eps, 3)?;
        let full = NilpotentAlgebra::full(&rs, &eps)?;
        let index = Label::all()
            .into_iter()
            .map(|l| {
                let root = rs.index_of_coeffs(&l.coeffs()).expect("label is a positive root");
                (l, algebra.basis_of(root).expect("height at most 3"))
            })
            .collect();
        let m = D4Module {
            lattice,
            rs,
            algebra,
            full,
            index,
            _scalar: PhantomData,
        };
        m.check_labels()?;
        Ok(m)
    }

    fn check_labels(&self) -> Result<(), D4Error> {
        for i in 1..=3 {
            if self.bracket(&self.x(Label::Simple(4)), &self.x(Label::Simple(i))) != self.x(Label::PlusFour(i)) {
                return Err(D4Error::Inconsistent(Label::PlusFour(i)));
            }
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let t = self.x(Label::Triple(i, j));
            let a = self.bracket(&self.x(Label::PlusFour(j)), &self.x(Label::Simple(i)));
            let b = self.bracket(&self.x(Label::PlusFour(i)), &self.x(Label::Simple(j)));
            if a != t || b != t {
                return Err(D4Error::Inconsistent(Label::Triple(i, j)));
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn index(&self, l: Label) -> usize {
        self.index[&l]
    }

    /// Label of each basis vector, in basis order.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = vec![Label::Simple(1); self.dim()];
        for (&l, &i) in &self.index {
            out[i] = l;
        }
        out
    }

    pub fn x(&self, l: Label) -> Element<T> {
        Element::basis(self.dim(), self.index(l))
    }

    fn sum(&self, labels: impl IntoIterator<Item = Label>) -> Element<T> {
        labels.into_iter().fold(Element::zero(self.dim()), |acc, l| acc.add(&self.x(l)))
    }

    /// `z_1 = Σ x_{α_i}`, `z_2 = Σ x_{α_i+α_4}`, `z_3 = Σ x_{α_i+α_j+α_4}`.
    pub fn z(&self, k: usize) -> Element<T> {
        match k {
            1 => self.sum((1..=3).map(Label::Simple)),
            2 => self.sum((1..=3).map(Label::PlusFour)),
            3 => self.sum([(1, 2), (1, 3), (2, 3)].map(|(i, j)| Label::Triple(i, j))),
            _ => panic!("z_{k} is not defined"),
        }
    }

    pub fn bracket(&self, x: &Element<T>, y: &Element<T>) -> Element<T> {
        self.algebra.bracket(x, y)
    }

    fn factors(&self, g: &UnipotentAction<T>) -> Vec<(usize, T)> {
        let u = |l: &T| (1..=3).map(|i| (self.index(Label::Simple(i)), l.clone())).collect::<Vec<_>>();
        let v = |l: &T| vec![(self.index(Label::Simple(4)), l.clone())];
        match g {
            UnipotentAction::U(l) => u(l),
            UnipotentAction::V(l) => v(l),
            UnipotentAction::UV(l) => [u(l), v(l)].concat(),
            UnipotentAction::Commutator(m) => {
                let one = T::one();
                [v(&one), u(m), v(&-one.clone()), u(&-m.clone())].concat()
            }
        }
    }

    /// The action computed from products of root-group exponentials.
    pub fn act_exp(&self, g: &UnipotentAction<T>, y: &Element<T>) -> Result<Element<T>, D4Error> {
        Ok(self.algebra.exp_product(&self.factors(g), y)?)
    }

    /// The action from the closed-form formulas on basis vectors.
    pub fn act_closed_form(&self, g: &UnipotentAction<T>, y: &Element<T>) -> Element<T> {
        match g {
            UnipotentAction::U(l) => self.linear(y, |b| self.u_basis(l, b)),
            UnipotentAction::V(l) => self.linear(y, |b| self.v_basis(l, b)),
            UnipotentAction::UV(l) => {
                let w = self.act_closed_form(&UnipotentAction::V(l.clone()), y);
                self.act_closed_form(&UnipotentAction::U(l.clone()), &w)
            }
            UnipotentAction::Commutator(m) => {
                let seq = [
                    UnipotentAction::U(-m.clone()),
                    UnipotentAction::V(-T::one()),
                    UnipotentAction::U(m.clone()),
                    UnipotentAction::V(T::one()),
                ];
                seq.iter().fold(y.clone(), |acc, h| self.act_closed_form(h, &acc))
            }
        }
    }

    fn linear(&self, y: &Element<T>, f: impl Fn(Label) -> Element<T>) -> Element<T> {
        let labels = self.labels();
        let mut out = Element::zero(self.dim());
        for (i, c) in y.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&f(labels[i]).scale(c));
            }
        }
        out
    }

    fn u_basis(&self, l: &T, b: Label) -> Element<T> {
        match b {
            Label::Simple(4) => self
                .x(b)
                .sub(&self.z(2).scale(l))
                .add(&self.z(3).scale(&(l.clone() * l.clone()))),
            Label::PlusFour(j) => {
                let others = (1..=3)
                    .filter(|&i| i != j)
                    .map(|i| Label::Triple(i.min(j), i.max(j)));
                self.x(b).sub(&self.sum(others).scale(l))
            }
            _ => self.x(b),
        }
    }

    fn v_basis(&self, l: &T, b: Label) -> Element<T> {
        match b {
            Label::Simple(j) if j <= 3 => self.x(b).add(&self.x(Label::PlusFour(j)).scale(l)),
            _ => self.x(b),
        }
    }

    /// The action, checked against the closed form.
    pub fn act(&self, g: &UnipotentAction<T>, y: &Element<T>) -> Result<Element<T>, D4Error> {
        let e = self.act_exp(g, y)?;
        if e != self.act_closed_form(g, y) {
            let basis = y.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
            return Err(D4Error::Disagreement {
                action: g.name().to_string(),
                basis,
            });
        }
        Ok(e)
    }

    /// Matrix of `g` whose `j`-th column is `g · x_j`.
    pub fn matrix(&self, g: &UnipotentAction<T>) -> Result<Matrix<T>, D4Error> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let basis = Element::basis(n, j);
            let img = self.act(g, &basis).map_err(|e| match e {
                D4Error::Disagreement { action, .. } => D4Error::Disagreement { action, basis: j },
                other => other,
            })?;
            cols.push(img.coeffs);
        }
        Ok(Matrix::from_rows(cols).expect("square").transpose())
    }

    /// Unit diagonal, and every off-diagonal entry strictly raises height.
    pub fn is_unipotent(&self, m: &Matrix<T>) -> bool {
        (0..self.dim()).all(|r| {
            (0..self.dim()).all(|c| {
                let v = m.get(r, c);
                if r == c {
                    *v == T::one()
                } else {
                    v.is_zero() || self.algebra.height_of(r) > self.algebra.height_of(c)
                }
            })
        })
    }
}

/// Subspaces of `𝔲_{≤3}` by spanning vectors.
#[derive(Debug, Clone)]
pub struct Summands<T> {
    pub u1: Vec<Element<T>>,
    pub u2: Vec<Element<T>>,
    pub u_prime: Vec<Element<T>>,
    pub u3: Vec<Element<T>>,
    pub u4: Vec<Element<T>>,
}

impl<T: Ring> D4Module<T> {
    pub fn summands(&self) -> Summands<T> {
        let t = |i, j| self.x(Label::Triple(i, j));
        Summands {
            u1: vec![self.x(Label::Simple(1)), self.x(Label::PlusFour(1)), t(1, 2).add(&t(1, 3))],
            u2: vec![self.x(Label::Simple(2)), self.x(Label::PlusFour(2)), t(1, 2).add(&t(2, 3))],
            u_prime: vec![self.x(Label::Simple(4)), self.z(1), self.z(2), self.z(3)],
            u3: vec![self.z(1), self.z(2)],
            u4: vec![self.x(Label::Simple(4)).add(&self.z(1)), self.z(3)],
        }
    }
}

/// Outcome of the characteristic-2 decomposition checks.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport<T> {
    pub field_size: usize,
    pub formulas_agree: bool,
    pub unipotent: bool,
    /// Stability of each named summand under its generators.
    pub stable: BTreeMap<&'static str, bool>,
    /// Dimensions of `u¹, u², u³, u⁴`.
    pub summand_dims: Vec<usize>,
    pub direct_sum_rank: usize,
    /// `(λ, matrix of u_λ v_λ on u⁴)`.
    pub twist_matrices: Vec<(T, Matrix<T>)>,
    pub twist_matches: bool,
    /// `(λ, matrix of u_λ v_λ on u³)`.
    pub standard_matrices: Vec<(T, Matrix<T>)>,
    /// Some `λ` with `λ² ≠ λ`, separating `u⁴` from `u³`.
    pub frobenius_witness: Option<T>,
    pub commutator_identity: bool,
    pub composition_series: bool,
    pub z2_fixed: bool,
}

impl<T> DecompositionReport<T> {
    pub fn passed(&self) -> bool {
        self.formulas_agree
            && self.unipotent
            && self.stable.values().all(|&b| b)
            && self.summand_dims == [3, 3, 2, 2]
            && self.direct_sum_rank == 10
            && self.twist_matches
            && self.commutator_identity
            && self.composition_series
            && self.z2_fixed
    }
}

fn in_span<F: Field>(basis: &[Element<F>], v: &Element<F>) -> bool {
    let rows: Vec<Vec<F>> = basis.iter().map(|e| e.coeffs.clone()).collect();
    coordinates_in_span(&rows, &v.coeffs).is_some()
}

fn span_rank<F: Field>(vs: &[Element<F>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank_over(&Matrix::from_rows(vs.iter().map(|e| e.coeffs.clone()).collect()).expect("equal lengths"))
}

/// Matrix of `g` on a subspace with basis `basis` (columns are images).
fn restricted<F: Field>(images: &[Element<F>], basis: &[Element<F>]) -> Option<Matrix<F>> {
    let rows: Vec<Vec<F>> = basis.iter().map(|e| e.coeffs.clone()).collect();
    let cols: Option<Vec<Vec<F>>> = images.iter().map(|v| coordinates_in_span(&rows, &v.coeffs)).collect();
    Some(Matrix::from_rows(cols?).ok()?.transpose())
}

impl<F: FiniteField> D4Module<F> {
    /// Runs every decomposition check for every `λ` in the field.
    pub fn verify_decomposition(&self) -> Result<DecompositionReport<F>, D4Error> {
        if F::characteristic() != 2 {
            return Err(D4Error::WrongCharacteristic(F::characteristic()));
        }
        let s = self.summands();
        let elements = F::elements();
        let mut formulas_agree = true;
        let mut unipotent = true;
        let mut stable: BTreeMap<&'static str, bool> =
            ["u1", "u2", "u'", "u3", "u4"].into_iter().map(|k| (k, true)).collect();
        let mut twist_matrices = Vec::new();
        let mut standard_matrices = Vec::new();
        let mut twist_matches = true;
        let mut commutator_identity = true;
        let mut composition_series = true;
        let mut z2_fixed = true;

        let t12 = self.x(Label::Triple(1, 2));
        let flags1 = [
            vec![t12.add(&self.x(Label::Triple(1, 3)))],
            vec![self.x(Label::PlusFour(1)), t12.add(&self.x(Label::Triple(1, 3)))],
            s.u1.clone(),
        ];
        let flags2 = [
            vec![t12.add(&self.x(Label::Triple(2, 3)))],
            vec![self.x(Label::PlusFour(2)), t12.add(&self.x(Label::Triple(2, 3)))],
            s.u2.clone(),
        ];

        for l in &elements {
            let gl3 = [UnipotentAction::U(l.clone()), UnipotentAction::V(l.clone())];
            let uprime = [UnipotentAction::UV(l.clone()), UnipotentAction::Commutator(l.clone())];
            let mut mats = Vec::new();
            for g in gl3.iter().chain(&uprime) {
                match self.matrix(g) {
                    Ok(m) => {
                        unipotent &= self.is_unipotent(&m);
                        mats.push(m);
                    }
                    Err(D4Error::Disagreement { .. }) => formulas_agree = false,
                    Err(e) => return Err(e),
                }
            }
            let img = |g: &UnipotentAction<F>, v: &Element<F>| self.act_exp(g, v);
            for g in &gl3 {
                for (name, sp) in [("u1", &s.u1), ("u2", &s.u2), ("u'", &s.u_prime)] {
                    for v in sp {
                        if !in_span(sp, &img(g, v)?) {
                            stable.insert(name, false);
                        }
                    }
                }
                for flags in [&flags1, &flags2] {
                    for k in 0..flags.len() {
                        for v in &flags[k] {
                            let diff = img(g, v)?.sub(v);
                            let ok = if k == 0 { diff.is_zero() } else { in_span(&flags[k - 1], &diff) };
                            composition_series &= ok;
                        }
                    }
                }
                if let UnipotentAction::U(_) = g {
                    z2_fixed &= img(g, &self.z(2))? == self.z(2);
                }
            }
            for g in &uprime {
                for (name, sp) in [("u3", &s.u3), ("u4", &s.u4)] {
                    for v in sp {
                        if !in_span(sp, &img(g, v)?) {
                            stable.insert(name, false);
                        }
                    }
                }
                if let UnipotentAction::Commutator(_) = g {
                    for v in &s.u_prime {
                        commutator_identity &= img(g, v)? == *v;
                    }
                }
            }
            let uv = &uprime[0];
            let on = |sp: &Vec<Element<F>>| -> Result<Option<Matrix<F>>, D4Error> {
                let imgs: Vec<Element<F>> = sp.iter().map(|v| img(uv, v)).collect::<Result<_, _>>()?;
                Ok(restricted(&imgs, sp))
            };
            let sq = l.clone() * l.clone();
            match on(&s.u4)? {
                Some(m) => {
                    let expected = Matrix::from_rows(vec![vec![F::one(), F::zero()], vec![sq.clone(), F::one()]])
                        .expect("2x2");
                    twist_matches &= m == expected;
                    twist_matrices.push((l.clone(), m));
                }
                None => twist_matches = false,
            }
            if let Some(m) = on(&s.u3)? {
                standard_matrices.push((l.clone(), m));
            }
        }
        let frobenius_witness = elements.iter().find(|l| (*l).clone() * (*l).clone() != **l).cloned();
        let all: Vec<Element<F>> = [s.u1.clone(), s.u2.clone(), s.u3.clone(), s.u4.clone()].concat();
        Ok(DecompositionReport {
            field_size: elements.len(),
            formulas_agree,
            unipotent,
            stable,
            summand_dims: [&s.u1, &s.u2, &s.u3, &s.u4].iter().map(|v| span_rank(v)).collect(),
            direct_sum_rank: span_rank(&all),
            twist_matrices,
            twist_matches,
            standard_matrices,
            frobenius_witness,
            commutator_identity,
            composition_series,
            z2_fixed,
        })
    }
}

type M3<F> = [[F; 3]; 3];

fn m3_zero<F: Ring>() -> M3<F> {
    std::array::from_fn(|_| std::array::from_fn(|_| F::zero()))
}

fn m3_unit<F: Ring>(r: usize, c: usize) -> M3<F> {
    let mut m = m3_zero();
    m[r][c] = F::one();
    m
}

fn m3_lin<F: Ring>(a: &M3<F>, ca: &F, b: &M3<F>, cb: &F) -> M3<F> {
    std::array::from_fn(|r| std::array::from_fn(|c| ca.clone() * a[r][c].clone() + cb.clone() * b[r][c].clone()))
}

fn m3_commutator<F: Ring>(a: &M3<F>, b: &M3<F>) -> M3<F> {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            (0..3).fold(F::zero(), |acc, k| {
                acc + a[r][k].clone() * b[k][c].clone() - b[r][k].clone() * a[k][c].clone()
            })
        })
    })
}

/// Equal modulo scalar matrices (the Lie algebra of `PGL_n`).
fn eq_mod_scalars<F: Ring, const N: usize>(a: &[[F; N]; N], b: &[[F; N]; N]) -> bool {
    let d0 = a[0][0].clone() - b[0][0].clone();
    (0..N).all(|r| {
        (0..N).all(|c| {
            let d = a[r][c].clone() - b[r][c].clone();
            if r == c {
                d == d0
            } else {
                d.is_zero()
            }
        })
    })
}

/// Outcome of the checks on the three maps `p_i : 𝔟 → 𝔟_{pgl_3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMapsReport {
    /// Bracket preservation for `p_1, p_2, p_3` on all basis pairs of `𝔟`.
    pub homomorphism: [bool; 3],
    /// `p ∘ p_1 = p ∘ p_2 = p ∘ p_3` on every basis element.
    pub projections_agree: bool,
    /// Each `p_i` kills `x_α` off `{α_i, α_4, α_i+α_4}`.
    pub vanishing: bool,
    pub u2_dim: usize,
    pub image_rank: usize,
    pub fiber_product_dim: usize,
}

impl PiMapsReport {
    pub fn passed(&self) -> bool {
        self.homomorphism.iter().all(|&b| b)
            && self.projections_agree
            && self.vanishing
            && self.u2_dim == 7
            && self.image_rank == self.u2_dim
            && self.fiber_product_dim == self.u2_dim
    }
}

/// A basis element of `𝔟 = 𝔱 ⊕ 𝔲`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BElem {
    /// `ρ_k ⊗ 1` for the dual basis of the ambient lattice.
    Torus(usize),
    /// Basis vector of the full positive algebra.
    Root(usize),
}

impl<T: Ring> D4Module<T> {
    fn full_root_index(&self, l: Label) -> usize {
        let root = self.rs.index_of_coeffs(&l.coeffs()).expect("label is a root");
        self.full.basis_of(root).expect("full algebra")
    }

    fn pairing_rho(&self, k: usize, root: usize) -> i64 {
        self.rs.positive_roots()[self.full.root_of(root)].vector.0[k]
    }

    fn p_image<F: Ring>(&self, i: usize, b: BElem) -> M3<F> {
        let (ai, a4, ai4) = (
            self.full_root_index(Label::Simple(i)),
            self.full_root_index(Label::Simple(4)),
            self.full_root_index(Label::PlusFour(i)),
        );
        match b {
            BElem::Torus(k) => {
                let mut m = m3_zero();
                m[0][0] = F::from_i64(self.pairing_rho(k, ai4));
                m[1][1] = F::from_i64(self.pairing_rho(k, ai));
                m
            }
            BElem::Root(r) if r == ai => m3_unit(1, 2),
            BElem::Root(r) if r == a4 => m3_unit(0, 1),
            BElem::Root(r) if r == ai4 => m3_unit(0, 2),
            BElem::Root(_) => m3_zero(),
        }
    }

    /// `[a, b]` in `𝔟` as a list of `(coefficient, basis element)`.
    fn b_bracket(&self, a: BElem, b: BElem) -> Vec<(i64, BElem)> {
        match (a, b) {
            (BElem::Torus(_), BElem::Torus(_)) => vec![],
            (BElem::Torus(k), BElem::Root(r)) => vec![(self.pairing_rho(k, r), BElem::Root(r))],
            (BElem::Root(r), BElem::Torus(k)) => vec![(-self.pairing_rho(k, r), BElem::Root(r))],
            (BElem::Root(r), BElem::Root(s)) => match self.full.bracket_basis(r, s) {
                Some((t, sign)) => vec![(sign as i64, BElem::Root(t))],
                None => vec![],
            },
        }
    }

    /// Homomorphism, projection and dimension checks for `p_1, p_2, p_3`
    /// over the field `F`.
    pub fn verify_pi_maps<F: Field>(&self) -> PiMapsReport {
        let basis: Vec<BElem> = (0..self.rs.ambient_rank())
            .map(BElem::Torus)
            .chain((0..self.full.dim()).map(BElem::Root))
            .collect();
        let mut homomorphism = [true; 3];
        for i in 1..=3 {
            for &a in &basis {
                for &b in &basis {
                    let lhs = self
                        .b_bracket(a, b)
                        .into_iter()
                        .fold(m3_zero::<F>(), |acc, (c, e)| m3_lin(&acc, &F::one(), &self.p_image(i, e), &F::from_i64(c)));
                    let rhs = m3_commutator(&self.p_image::<F>(i, a), &self.p_image::<F>(i, b));
                    homomorphism[i - 1] &= eq_mod_scalars(&lhs, &rhs);
                }
            }
        }
        let proj = |m: &M3<F>| -> [[F; 2]; 2] { std::array::from_fn(|r| std::array::from_fn(|c| m[r][c].clone())) };
        let projections_agree = basis.iter().all(|&b| {
            let p1 = proj(&self.p_image(1, b));
            (2..=3).all(|i| eq_mod_scalars(&p1, &proj(&self.p_image(i, b))))
        });
        let mut vanishing = true;
        for i in 1..=3 {
            let keep = [Label::Simple(i), Label::Simple(4), Label::PlusFour(i)].map(|l| self.full_root_index(l));
            for r in 0..self.full.dim() {
                if !keep.contains(&r) {
                    vanishing &= self.p_image::<F>(i, BElem::Root(r)) == m3_zero();
                }
            }
        }

        // u_{≤2} → n³ with n the strictly upper triangular 3×3 matrices,
        // coordinates (E12, E13, E23) per factor.
        let u2: Vec<usize> = (0..self.full.dim()).filter(|&r| self.full.height_of(r) <= 2).collect();
        let coords = |m: &M3<F>| [m[0][1].clone(), m[0][2].clone(), m[1][2].clone()];
        let images: Vec<Vec<F>> = u2
            .iter()
            .map(|&r| (1..=3).flat_map(|i| coords(&self.p_image(i, BElem::Root(r)))).collect())
            .collect();
        let image_rank = rank_over(&Matrix::from_rows(images.clone()).expect("equal lengths"));
        // p(b_1) = p(b_2) = p(b_3) reads b1_12 = b2_12 and b2_12 = b3_12.
        let mut constraints = vec![vec![F::zero(); 9]; 2];
        constraints[0][0] = F::one();
        constraints[0][3] = -F::one();
        constraints[1][3] = F::one();
        constraints[1][6] = -F::one();
        let constraint_matrix = Matrix::from_rows(constraints.clone()).expect("2x9");
        let fiber_product_dim = 9 - rank_over(&constraint_matrix);
        let inside = images.iter().all(|v| {
            constraints.iter().all(|c| {
                c.iter().zip(v).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone()).is_zero()
            })
        });
        PiMapsReport {
            homomorphism,
            projections_agree,
            vanishing,
            u2_dim: u2.len(),
            image_rank: if inside { image_rank } else { 0 },
            fiber_product_dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{DynkinType, Irreducible};
    use crate::scalar::{Fp, Gf4};

    #[test]
    fn configuration() {
        let (lat, rs) = d4_cubic_configuration();
        assert_eq!(rs.dynkin_type(), DynkinType::irreducible(Irreducible::d(4)));
        let s = rs.simple_roots();
        for i in 0..3 {
            assert_eq!(rs.pairing(&s[i], &s[3]), 1);
            for j in 0..3 {
                if i != j {
                    assert_eq!(rs.pairing(&s[i], &s[j]), 0);
                }
            }
        }
        let lines = six_lines(&lat);
        let neg1 = lat.neg1_classes();
        for l in &lines {
            assert_eq!(lat.norm(l), -1);
            assert_eq!(lat.anticanonical_degree(l), 1);
            assert!(neg1.contains(l));
        }
    }

    #[test]
    fn module_basics() {
        let m = D4Module::<i64>::new().unwrap();
        assert_eq!(m.dim(), 10);
        assert!(m.bracket(&m.x(Label::Simple(1)), &m.x(Label::Simple(2))).is_zero());
        let z: Vec<i64> = m.z(3).coeffs;
        assert_eq!(z.iter().sum::<i64>(), 3);
    }

    #[test]
    fn integer_formulas() {
        let m = D4Module::<i64>::new().unwrap();
        for l in [-2i64, -1, 0, 1, 3] {
            let u = UnipotentAction::U(l);
            let got = m.act(&u, &m.z(2)).unwrap();
            assert_eq!(got, m.z(2).sub(&m.z(3).scale(&(2 * l))));
            let v = UnipotentAction::V(l);
            assert_eq!(m.act(&v, &m.z(1)).unwrap(), m.z(1).add(&m.z(2).scale(&l)));
            let x4 = m.x(Label::Simple(4));
            let expect = x4.sub(&m.z(2).scale(&l)).add(&m.z(3).scale(&(l * l)));
            assert_eq!(m.act(&u, &x4).unwrap(), expect);
            let t = m.x(Label::Triple(1, 2));
            assert_eq!(m.act(&u, &t).unwrap(), t);
            for g in [u, v, UnipotentAction::UV(l), UnipotentAction::Commutator(l)] {
                assert!(m.is_unipotent(&m.matrix(&g).unwrap()));
            }
        }
    }

    #[test]
    fn decomposition_f2_f4() {
        let r2 = D4Module::<Fp<2>>::new().unwrap().verify_decomposition().unwrap();
        assert!(r2.passed(), "{r2:?}");
        assert!(r2.frobenius_witness.is_none());
        let r4 = D4Module::<Gf4>::new().unwrap().verify_decomposition().unwrap();
        assert!(r4.passed(), "{r4:?}");
        let w = r4.frobenius_witness.unwrap();
        let (_, m) = r4.twist_matrices.iter().find(|(l, _)| *l == w).unwrap();
        assert_eq!(*m.get(1, 0), w * w);
        assert_ne!(*m.get(1, 0), w);
    }

    #[test]
    fn decomposition_needs_char_2() {
        assert!(matches!(
            D4Module::<Fp<3>>::new().unwrap().verify_decomposition(),
            Err(D4Error::WrongCharacteristic(3))
        ));
    }

    #[test]
    fn pi_maps() {
        let m = D4Module::<Gf4>::new().unwrap();
        let r = m.verify_pi_maps::<Gf4>();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.u2_dim, 7);
        let rq = m.verify_pi_maps::<num_rational::BigRational>();
        assert!(rq.passed(), "{rq:?}");
    }
}
