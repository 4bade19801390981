use std::collections::BTreeSet;
use std::fmt::Display;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use rootforge_core::chains::{divisor_sequence, fundamental_cycle, root_sequence, saturation_cycle};
use rootforge_core::cup::{bad_prime_report, build_cup_matrix, default_prime_sweep, verify_characteristic, BadPrimeSource};
use rootforge_core::d4::{six_lines, D4Module, Label, UnipotentAction, CUBIC_ORDINARY, CUBIC_SUPERSINGULAR};
use rootforge_core::lie::{EpsilonTable, NilpotentAlgebra};
use rootforge_core::linalg::{determinant, rank_in_characteristic};
use rootforge_core::root_system::very_good_primes;
use rootforge_core::scalar::{is_prime, FiniteField};
use rootforge_core::subsystem::count_embeddings_up_to_weyl;
use rootforge_core::{DynkinType, LatticeVector, Matrix, PicardLattice, RootSystem};

use crate::report::{Report, Table};
use crate::CliError;

/// Root counts of `Ψ` for blow-up degrees 1 through 9.
pub const PSI_COUNTS: [usize; 9] = [240, 126, 72, 40, 20, 8, 2, 0, 0];
/// Types of `Ψ` for blow-up degrees 1 through 9.
pub const PSI_TYPES: [&str; 9] = ["E8", "E7", "E6", "D5", "A4", "A2+A1", "A1", "empty", "empty"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    Blowup(u32),
    Quadric,
}

impl Surface {
    pub fn lattice(self) -> Result<PicardLattice, CliError> {
        match self {
            Surface::Blowup(d) => PicardLattice::blowup(d).map_err(|e| CliError::Usage(e.to_string())),
            Surface::Quadric => Ok(PicardLattice::quadric()),
        }
    }

    fn expected(self) -> (usize, &'static str) {
        match self {
            Surface::Blowup(d) => (PSI_COUNTS[d as usize - 1], PSI_TYPES[d as usize - 1]),
            Surface::Quadric => (2, "A1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSelection {
    Auto,
    List(Vec<u64>),
}

impl std::str::FromStr for PrimeSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(PrimeSelection::Auto);
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p: u64 = part.parse().map_err(|_| format!("'{part}' is not a number"))?;
            if p != 0 && !is_prime(p) {
                return Err(format!("{p} is neither 0 nor a prime"));
            }
            out.push(p);
        }
        if out.is_empty() {
            return Err("empty prime list".into());
        }
        Ok(PrimeSelection::List(out))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    F2,
    F4,
}

pub fn parse_type(s: &str) -> Result<DynkinType, CliError> {
    s.parse::<DynkinType>().map_err(|e| CliError::Usage(format!("invalid type '{s}': {e}")))
}

pub fn vector_json(v: &LatticeVector) -> Value {
    json!(v.0)
}

fn vector_text(v: &LatticeVector) -> String {
    v.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn psi_system(lat: &PicardLattice) -> Result<Option<RootSystem>, CliError> {
    let psi = lat.neg2_classes();
    if psi.is_empty() {
        return Ok(None);
    }
    RootSystem::from_root_set(lat.gram().clone(), &psi)
        .map(Some)
        .map_err(|e| CliError::Compute(e.to_string()))
}

pub fn cmd_roots(surface: Surface) -> Result<Report, CliError> {
    let inputs = match surface {
        Surface::Blowup(d) => json!({"case": "blowup", "degree": d}),
        Surface::Quadric => json!({"case": "quadric", "degree": 8}),
    };
    let mut report = Report::new("roots", inputs);
    let lat = surface.lattice()?;
    let psi = lat.neg2_classes();
    let lines = lat.neg1_classes();
    let rs = psi_system(&lat)?;
    let psi_type = rs.as_ref().map_or_else(DynkinType::empty, |r| r.dynkin_type());
    let simple: Vec<Value> = rs
        .as_ref()
        .map(|r| r.simple_roots().iter().map(vector_json).collect())
        .unwrap_or_default();
    report.results = json!({
        "picard_rank": lat.rank(),
        "gram": lat.gram().row_vecs(),
        "anticanonical": vector_json(lat.anticanonical()),
        "psi_count": psi.len(),
        "psi_type": psi_type.to_string(),
        "simple_roots": simple,
        "psi": psi.iter().map(vector_json).collect::<Vec<_>>(),
        "neg1_count": lines.len(),
        "neg1": lines.iter().map(vector_json).collect::<Vec<_>>(),
        "height_profile": rs.as_ref().map(|r| r.height_profile()).unwrap_or_default(),
    });
    let mut table = Table::new(&["kind", "class"]);
    for v in &psi {
        table.push(vec!["(-2)".into(), vector_text(v)]);
    }
    for v in &lines {
        table.push(vec!["(-1)".into(), vector_text(v)]);
    }
    report.table = Some(table);
    report.summary = vec![
        format!("Picard rank {}", lat.rank()),
        format!("(-2)-classes: {} of type {}", psi.len(), psi_type),
        format!("(-1)-classes: {}", lines.len()),
    ];
    let (count, ty) = surface.expected();
    report.verdict("psi-count", psi.len() == count, format!("{} (-2)-classes, expected {count}", psi.len()));
    report.verdict("psi-type", psi_type.to_string() == ty, format!("type {psi_type}, expected {ty}"));
    if surface == Surface::Blowup(3) {
        report.verdict("cubic-lines-27", lines.len() == 27, format!("{} lines", lines.len()));
    }
    Ok(report)
}

fn source_text(s: &BadPrimeSource) -> String {
    match s {
        BadPrimeSource::CartanDeterminant { component } => format!("cartan-determinant:component-{component}"),
        BadPrimeSource::Cup { n, component } => format!("cup:n={n}:component-{component}"),
    }
}

pub fn cmd_cupcheck(t: &DynkinType, primes: &PrimeSelection) -> Result<Report, CliError> {
    let inputs = json!({
        "type": t.to_string(),
        "primes": match primes {
            PrimeSelection::Auto => json!("auto"),
            PrimeSelection::List(l) => json!(l),
        },
    });
    let mut report = Report::new("cupcheck", inputs);
    let rs = RootSystem::from_type(t);
    let eps = EpsilonTable::build(&rs);
    let bad = bad_prime_report(&rs, &eps);
    let vg = very_good_primes(t);
    let list: Vec<u64> = match primes {
        PrimeSelection::Auto => std::iter::once(0).chain(default_prime_sweep(&bad)).collect(),
        PrimeSelection::List(l) => l.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
    };
    let cups: Vec<_> = (2..=rs.max_height())
        .map(|n| build_cup_matrix(&rs, &eps, n).expect("level exists"))
        .collect();
    let rows: Vec<(u64, Value, Vec<Vec<String>>, bool)> = list
        .par_iter()
        .map(|&p| {
            let verdict = verify_characteristic(&rs, &eps, p).expect("validated characteristic");
            let mut levels = Vec::new();
            let mut table_rows = Vec::new();
            for m in &cups {
                let rank = rank_in_characteristic(&m.matrix, p).expect("validated characteristic");
                let (r, c) = m.matrix.shape();
                levels.push(json!({"n": m.n, "rows": r, "cols": c, "rank": rank, "surjective": rank == r}));
                table_rows.push(vec![
                    p.to_string(),
                    m.n.to_string(),
                    r.to_string(),
                    c.to_string(),
                    rank.to_string(),
                    (rank == r).to_string(),
                ]);
            }
            let v = json!({
                "p": p,
                "very_good": vg.is_very_good(p),
                "cartan_invertible": verdict.cartan_invertible,
                "levels": levels,
                "overall": verdict.overall,
            });
            (p, v, table_rows, verdict.overall)
        })
        .collect();

    let mut table = Table::new(&["p", "n", "rows", "cols", "rank", "surjective"]);
    let mut per_p = Vec::new();
    for (p, v, trs, overall) in rows {
        per_p.push(v);
        for r in trs {
            table.push(r);
        }
        if vg.is_very_good(p) {
            report.verdict(
                format!("cup-surjective-p{p}"),
                overall,
                format!("very good characteristic {p}: overall {overall}"),
            );
        }
    }
    let attribution: serde_json::Map<String, Value> = bad
        .sources
        .iter()
        .map(|(p, srcs)| (p.to_string(), json!(srcs.iter().map(source_text).collect::<Vec<_>>())))
        .collect();
    let divisors: serde_json::Map<String, Value> = bad
        .elementary_divisors
        .iter()
        .map(|((n, c), ds)| (format!("n={n}:component-{c}"), json!(ds.iter().map(big_json).collect::<Vec<_>>())))
        .collect();
    report.results = json!({
        "type": t.to_string(),
        "cartan_determinants": bad.cartan_determinants.iter().map(big_json).collect::<Vec<_>>(),
        "bad_primes": bad.primes,
        "attribution": attribution,
        "elementary_divisors": divisors,
        "rational_failures": bad.rational_failures,
        "simple_root_order": eps.simple_order().iter().map(vector_json).collect::<Vec<_>>(),
        "sign_form": eps.f_matrix().row_vecs(),
        "very_good": {
            "bad_primes": vg.bad_primes,
            "coefficient_primes": vg.coefficient_primes,
            "determinant_primes": vg.determinant_primes,
            "description": vg.description,
        },
        "characteristics": per_p,
    });
    report.table = Some(table);
    report.summary = vec![
        format!("type {t}"),
        format!("exact bad primes: {:?}", bad.primes),
        format!("{}", vg.description),
    ];
    for (p, srcs) in &bad.sources {
        report.summary.push(format!(
            "p={p}: {}",
            srcs.iter().map(source_text).collect::<Vec<_>>().join(", ")
        ));
    }
    report.verdict(
        "bad-primes-not-very-good",
        bad.primes.is_subset(&vg.bad_primes) && bad.rational_failures.is_empty(),
        format!("exact {:?} within {:?}", bad.primes, vg.bad_primes),
    );
    Ok(report)
}

fn parse_coeffs(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad coefficient list '{s}'"))))
        .collect()
}

pub fn cmd_chain(t: &DynkinType, from: Option<&str>, to: Option<&str>) -> Result<Report, CliError> {
    let inputs = json!({"type": t.to_string(), "from": from, "to": to});
    let mut report = Report::new("chain", inputs);
    let rs = RootSystem::from_type(t);
    match (from, to) {
        (Some(f), Some(g)) => {
            let (fc, gc) = (parse_coeffs(f)?, parse_coeffs(g)?);
            if fc.len() != rs.rank() || gc.len() != rs.rank() {
                return Err(CliError::Usage(format!("coefficient lists must have length {}", rs.rank())));
            }
            let chain = root_sequence(&rs, &rs.combine(&fc), &rs.combine(&gc)).map_err(|e| CliError::Compute(e.to_string()))?;
            let ok = chain.validate(&rs).is_ok();
            let steps: Vec<Value> = chain.steps.iter().map(vector_json).collect();
            report.summary = chain.steps.iter().map(vector_text).collect();
            report.results = json!({"length": chain.len(), "steps": steps});
            report.verdict("root-chain-valid", ok, format!("chain of length {}", chain.len()));
        }
        (None, None) => {
            let pos = rs.positive_roots();
            let mut checked = 0usize;
            let mut failures = Vec::new();
            for b in pos {
                for g in pos {
                    if b.component != g.component || b.coeffs.iter().zip(&g.coeffs).any(|(x, y)| x > y) {
                        continue;
                    }
                    checked += 1;
                    let ok = root_sequence(&rs, &b.vector, &g.vector)
                        .map(|c| c.validate(&rs).is_ok() && c.len() == g.height - b.height)
                        .unwrap_or(false);
                    if !ok {
                        failures.push(json!([b.coeffs, g.coeffs]));
                    }
                }
            }
            report.summary = vec![format!("{checked} comparable pairs, {} failures", failures.len())];
            report.results = json!({"pairs_checked": checked, "failures": failures});
            report.verdict(
                "root-chains-all-pairs",
                failures.is_empty(),
                format!("{checked} pairs checked"),
            );
        }
        _ => return Err(CliError::Usage("--from and --to must be given together".into())),
    }
    Ok(report)
}

pub fn cmd_cycle(t: &DynkinType) -> Result<Report, CliError> {
    let mut report = Report::new("cycle", json!({"type": t.to_string()}));
    let rs = RootSystem::from_type(t);
    let mut comps = Vec::new();
    for (c, comp) in rs.components().iter().enumerate() {
        let z = fundamental_cycle(&rs, c).map_err(|e| CliError::Compute(e.to_string()))?;
        let sat = saturation_cycle(&rs, c).map_err(|e| CliError::Compute(e.to_string()))?;
        let seq = divisor_sequence(&rs, c).map_err(|e| CliError::Compute(e.to_string()))?;
        let mut red = vec![0i64; rs.rank()];
        for &s in &comp.simple {
            red[s] = 1;
        }
        let red_v = rs.combine(&red);
        let norm = rs.pairing(&red_v, &red_v);
        comps.push(json!({
            "component": c,
            "type": comp.kind.to_string(),
            "fundamental_cycle": z,
            "saturation": sat,
            "n": seq.n,
            "divisor_sequence": seq.cycles,
            "reduced_cycle_norm": norm,
        }));
        report.summary.push(format!("{}: Z = {:?}, N = {}", comp.kind, z, seq.n));
        report.verdict(
            format!("fundamental-cycle-component-{c}"),
            z == sat,
            format!("highest root {z:?}, saturation {sat:?}"),
        );
        report.verdict(
            format!("divisor-sequence-component-{c}"),
            seq.validate(&rs).is_ok(),
            format!("{} steps", seq.n),
        );
        report.verdict(
            format!("reduced-cycle-norm-component-{c}"),
            norm == -2 && rs.index_of(&red_v).is_some(),
            format!("(Z_red, Z_red) = {norm}"),
        );
    }
    report.results = json!({"components": comps});
    Ok(report)
}

fn field_matrix<F: Display>(m: &Matrix<F>) -> Value {
    json!((0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// `(claim id, passed, detail)`.
pub type Claim = (String, bool, String);

/// Runs the ten-dimensional module battery over `F`.
pub fn d4_battery<F: FiniteField + Display>(field_name: &str) -> Result<(Value, Vec<Claim>), CliError> {
    let compute = |e: rootforge_core::d4::D4Error| CliError::Compute(e.to_string());
    let mut verdicts: Vec<Claim> = Vec::new();
    let module = D4Module::<F>::new().map_err(compute)?;
    verdicts.push(("basis-double-definition".into(), true, "both bracket expressions agree".into()));
    verdicts.push(("module-dimension-10".into(), module.dim() == 10, format!("dimension {}", module.dim())));

    let rs = module.root_system();
    let lat = module.lattice();
    let lines = six_lines(lat);
    let lines_ok = lines
        .iter()
        .all(|l| lat.norm(l) == -1 && lat.anticanonical_degree(l) == 1);
    verdicts.push((
        "cubic-configuration-d4".into(),
        rs.dynkin_type().to_string() == "D4",
        format!("type {}", rs.dynkin_type()),
    ));
    verdicts.push(("six-lines".into(), lines_ok, "norm -1 and degree 1".into()));

    let dec = module.verify_decomposition().map_err(compute)?;
    verdicts.push(("action-formulas-agree".into(), dec.formulas_agree, "exp products match closed forms".into()));
    verdicts.push(("actions-unipotent".into(), dec.unipotent, "unit diagonal, height-raising".into()));
    verdicts.push((
        "summands-stable".into(),
        dec.stable.values().all(|&b| b),
        format!("{:?}", dec.stable),
    ));
    verdicts.push((
        "direct-sum-3-3-2-2".into(),
        dec.summand_dims == [3, 3, 2, 2] && dec.direct_sum_rank == 10,
        format!("dims {:?}, total rank {}", dec.summand_dims, dec.direct_sum_rank),
    ));
    verdicts.push(("twist-matrix-lambda-squared".into(), dec.twist_matches, "u_l v_l on u4 is ((1,0),(l^2,1))".into()));
    if dec.field_size > 2 {
        verdicts.push((
            "frobenius-twist-witness".into(),
            dec.frobenius_witness.is_some(),
            format!("lambda = {:?}", dec.frobenius_witness.as_ref().map(|w| w.to_string())),
        ));
    }
    verdicts.push(("commutator-trivial-on-u-prime".into(), dec.commutator_identity, "[v_1, u_m] fixes u'".into()));
    verdicts.push(("composition-series".into(), dec.composition_series, "flags of u1 and u2 with trivial factors".into()));
    verdicts.push(("u-fixes-z2-char2".into(), dec.z2_fixed, "u_l z2 = z2".into()));

    let zmod = D4Module::<i64>::new().map_err(compute)?;
    let mut integer_ok = true;
    for l in [1i64, 2, 3] {
        let got = zmod.act(&UnipotentAction::U(l), &zmod.z(2)).map_err(compute)?;
        integer_ok &= got == zmod.z(2).sub(&zmod.z(3).scale(&(2 * l)));
    }
    verdicts.push(("integer-z2-term".into(), integer_ok, "over Z, u_l z2 = z2 - 2 l z3".into()));

    let pi = module.verify_pi_maps::<F>();
    verdicts.push((
        "pi-maps-homomorphism".into(),
        pi.homomorphism.iter().all(|&b| b) && pi.vanishing,
        format!("{:?}", pi.homomorphism),
    ));
    verdicts.push(("pi-maps-projection-agree".into(), pi.projections_agree, "p o p_1 = p o p_2 = p o p_3".into()));
    verdicts.push((
        "pi-maps-dimension-identity".into(),
        pi.u2_dim == 7 && pi.image_rank == 7 && pi.fiber_product_dim == 7,
        format!(
            "dim u<=2 {}, image rank {}, fiber product {}",
            pi.u2_dim, pi.image_rank, pi.fiber_product_dim
        ),
    ));

    let twists: Vec<Value> = dec
        .twist_matrices
        .iter()
        .map(|(l, m)| json!({"lambda": l.to_string(), "matrix": field_matrix(m)}))
        .collect();
    let standard: Vec<Value> = dec
        .standard_matrices
        .iter()
        .map(|(l, m)| json!({"lambda": l.to_string(), "matrix": field_matrix(m)}))
        .collect();
    let labels: Vec<String> = module.labels().iter().map(Label::to_string).collect();
    let results = json!({
        "field": field_name,
        "dimension": module.dim(),
        "basis": labels,
        "z": (1..=3).map(|k| module.z(k).coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "configuration": {
            "simple_roots": rs.simple_roots().iter().map(vector_json).collect::<Vec<_>>(),
            "lines": lines.iter().map(vector_json).collect::<Vec<_>>(),
            "cubic_ordinary": CUBIC_ORDINARY,
            "cubic_supersingular": CUBIC_SUPERSINGULAR,
        },
        "decomposition": {
            "summand_dims": dec.summand_dims,
            "direct_sum_rank": dec.direct_sum_rank,
            "stable": dec.stable,
            "u4_matrices": twists,
            "u3_matrices": standard,
            "frobenius_witness": dec.frobenius_witness.as_ref().map(|w| w.to_string()),
        },
        "pi_maps": {
            "homomorphism": pi.homomorphism,
            "projections_agree": pi.projections_agree,
            "u2_dim": pi.u2_dim,
            "image_rank": pi.image_rank,
            "fiber_product_dim": pi.fiber_product_dim,
        },
    });
    Ok((results, verdicts))
}

pub fn cmd_d4(field: FieldChoice) -> Result<Report, CliError> {
    let name = match field {
        FieldChoice::F2 => "F2",
        FieldChoice::F4 => "F4",
    };
    let mut report = Report::new("d4", json!({"field": name}));
    let (results, verdicts) = match field {
        FieldChoice::F2 => d4_battery::<rootforge_core::F2>(name)?,
        FieldChoice::F4 => d4_battery::<rootforge_core::F4>(name)?,
    };
    report.results = results;
    report.summary = vec![format!("u<=3 over {name}: {} checks", verdicts.len())];
    for (c, ok, d) in verdicts {
        report.verdict(c, ok, d);
    }
    Ok(report)
}

pub fn cmd_embed(ambient: &DynkinType, sub: &DynkinType, max_rank: usize) -> Result<Report, CliError> {
    let inputs = json!({"ambient": ambient.to_string(), "sub": sub.to_string(), "max_rank": max_rank});
    let mut report = Report::new("embed", inputs);
    let count = count_embeddings_up_to_weyl(ambient, sub, max_rank).map_err(|e| CliError::Compute(e.to_string()))?;
    report.results = json!({
        "orbits": count.orbits,
        "base_sets": count.base_sets,
        "orbit_sizes": count.orbit_sizes,
        "representatives": count
            .representatives
            .iter()
            .map(|r| r.iter().map(vector_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "closure_ok": count.closure_ok,
    });
    report.summary = vec![format!(
        "{} orbit(s) of {sub} bases in {ambient} ({} bases)",
        count.orbits, count.base_sets
    )];
    report.verdict("closure-counts", count.closure_ok, "every base closes to the abstract root count");
    if ambient.to_string() == "E6" && sub.to_string() == "D4" {
        report.verdict("d4-in-e6-single-orbit", count.orbits == 1, format!("{} orbit(s)", count.orbits));
    }
    Ok(report)
}

/// Cartan determinant of one irreducible type.
pub fn cartan_det(t: &DynkinType) -> BigInt {
    determinant(&t.cartan_matrix().map(|&x| BigInt::from(x))).expect("square")
}

/// Builds the full positive algebra (checking Jacobi and antisymmetry).
pub fn structure_constants_ok(t: &DynkinType) -> Result<usize, String> {
    let rs = RootSystem::from_type(t);
    let eps = EpsilonTable::build(&rs);
    NilpotentAlgebra::full(&rs, &eps).map(|a| a.dim()).map_err(|e| e.to_string())
}

/// Irreducible ADE types of rank at most `max_rank`.
pub fn irreducible_types(max_rank: usize) -> Vec<DynkinType> {
    use rootforge_core::Irreducible;
    let mut out: Vec<Irreducible> = (1..=max_rank).map(Irreducible::a).collect();
    out.extend((4..=max_rank).map(Irreducible::d));
    out.extend((6..=max_rank.min(8)).map(Irreducible::e));
    out.into_iter().map(DynkinType::irreducible).collect()
}

fn claim_roots() -> (bool, String) {
    let mut ok = true;
    let mut got = Vec::new();
    for d in 1..=9u32 {
        let lat = PicardLattice::blowup(d).expect("degree in range");
        let n = lat.neg2_classes().len();
        let ty = psi_system(&lat).ok().flatten().map_or_else(|| "empty".to_string(), |r| r.dynkin_type().to_string());
        ok &= n == PSI_COUNTS[d as usize - 1] && ty == PSI_TYPES[d as usize - 1];
        got.push(format!("d={d}:{n}:{ty}"));
    }
    let q = PicardLattice::quadric();
    let qn = q.neg2_classes().len();
    let qt = psi_system(&q).ok().flatten().map(|r| r.dynkin_type().to_string());
    ok &= qn == 2 && qt.as_deref() == Some("A1");
    got.push(format!("quadric:{qn}:{}", qt.unwrap_or_default()));
    (ok, got.join(" "))
}

fn claim_very_good() -> (bool, String) {
    let mut ok = true;
    let mut got = Vec::new();
    for t in irreducible_types(8) {
        let vg = very_good_primes(&t);
        let c = &t.components()[0];
        let expected: BTreeSet<u64> = match c.family {
            rootforge_core::Family::A => (2..=c.rank as u64 + 1)
                .filter(|&p| is_prime(p) && (c.rank as u64 + 1).is_multiple_of(p))
                .collect(),
            rootforge_core::Family::D => BTreeSet::from([2]),
            rootforge_core::Family::E if c.rank == 8 => BTreeSet::from([2, 3, 5]),
            rootforge_core::Family::E => BTreeSet::from([2, 3]),
        };
        ok &= vg.bad_primes == expected;
        got.push(format!("{t}:{:?}", vg.bad_primes));
    }
    (ok, got.join(" "))
}

fn claim_cup_very_good() -> (bool, String) {
    let types = irreducible_types(8);
    let results: Vec<(String, bool, usize)> = types
        .par_iter()
        .map(|t| {
            let rs = RootSystem::from_type(t);
            let eps = EpsilonTable::build(&rs);
            let vg = very_good_primes(t);
            let mut ok = true;
            let mut checked = 0;
            for p in std::iter::once(0).chain(rootforge_core::scalar::primes_up_to(13)) {
                if !vg.is_very_good(p) {
                    continue;
                }
                checked += 1;
                ok &= verify_characteristic(&rs, &eps, p).map(|v| v.overall).unwrap_or(false);
            }
            (t.to_string(), ok, checked)
        })
        .collect();
    let ok = results.iter().all(|r| r.1);
    let checked: usize = results.iter().map(|r| r.2).sum();
    let failed: Vec<&str> = results.iter().filter(|r| !r.1).map(|r| r.0.as_str()).collect();
    (ok, format!("{checked} (type, p) pairs, failures {failed:?}"))
}

fn claim_d4_char2() -> (bool, String) {
    let rs = RootSystem::from_type(&"D4".parse().expect("valid type"));
    let eps = EpsilonTable::build(&rs);
    let ranks: Vec<(usize, usize, usize)> = (2..=rs.max_height())
        .map(|n| {
            let m = build_cup_matrix(&rs, &eps, n).expect("level exists");
            (n, m.matrix.rows(), rank_in_characteristic(&m.matrix, 2).expect("prime"))
        })
        .collect();
    let ok = ranks.iter().all(|&(n, rows, rank)| if n == 3 { rank == 2 && rank < rows } else { rank == rows });
    let text: Vec<String> = ranks.iter().map(|(n, r, k)| format!("n={n}:{k}/{r}")).collect();
    (ok, text.join(" "))
}

fn claim_chains(max_rank: usize) -> (bool, String) {
    let mut pairs = 0usize;
    let mut ok = true;
    for t in irreducible_types(max_rank) {
        let rs = RootSystem::from_type(&t);
        let pos = rs.positive_roots();
        for b in pos {
            for g in pos {
                if b.coeffs.iter().zip(&g.coeffs).any(|(x, y)| x > y) {
                    continue;
                }
                pairs += 1;
                ok &= root_sequence(&rs, &b.vector, &g.vector)
                    .map(|c| c.validate(&rs).is_ok() && c.len() == g.height - b.height)
                    .unwrap_or(false);
            }
        }
    }
    (ok, format!("{pairs} comparable pairs up to rank {max_rank}"))
}

fn claim_cycles() -> (bool, String) {
    let mut ok = true;
    for t in irreducible_types(8) {
        let rs = RootSystem::from_type(&t);
        let z = fundamental_cycle(&rs, 0);
        ok &= z.is_ok() && z == saturation_cycle(&rs, 0);
        ok &= divisor_sequence(&rs, 0).map(|s| s.validate(&rs).is_ok()).unwrap_or(false);
        let red = rs.combine(&vec![1; rs.rank()]);
        ok &= rs.pairing(&red, &red) == -2;
    }
    let d4 = RootSystem::from_type(&"D4".parse().expect("valid type"));
    let z = fundamental_cycle(&d4, 0).unwrap_or_default();
    ok &= z == [1, 1, 1, 2];
    (ok, format!("D4 cycle {z:?}"))
}

fn claim_structure_constants() -> (bool, String) {
    let results: Vec<(String, Result<usize, String>)> = irreducible_types(8)
        .par_iter()
        .map(|t| (t.to_string(), structure_constants_ok(t)))
        .collect();
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let e8 = results.iter().find(|(t, _)| t == "E8").and_then(|(_, r)| r.as_ref().ok().copied());
    (ok && e8 == Some(120), format!("{} types, E8 dimension {e8:?}", results.len()))
}

fn claim_d4_module() -> (bool, String) {
    match d4_battery::<rootforge_core::F4>("F4") {
        Ok((_, vs)) => {
            let failed: Vec<String> = vs.iter().filter(|v| !v.1).map(|v| v.0.clone()).collect();
            (failed.is_empty(), format!("{} checks over F4, failures {failed:?}", vs.len()))
        }
        Err(e) => (false, e.to_string()),
    }
}

fn claim_embedding(max_rank: usize) -> (bool, String) {
    let e6: DynkinType = "E6".parse().expect("valid type");
    let d4: DynkinType = "D4".parse().expect("valid type");
    match count_embeddings_up_to_weyl(&e6, &d4, max_rank) {
        Ok(c) => (c.orbits == 1 && c.closure_ok, format!("{} orbit(s), {} bases", c.orbits, c.base_sets)),
        Err(e) => (false, e.to_string()),
    }
}

/// Applies random simple reflections to the cubic `D_4` base and checks the
/// image is again a `D_4` base.
fn claim_weyl_sample(seed: u64, samples: usize) -> (bool, String) {
    use rand::{Rng, SeedableRng};
    use rootforge_core::d4::d4_cubic_configuration;
    use rootforge_core::subsystem::{classify, Embedding};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let lat = PicardLattice::blowup(3).expect("degree in range");
    let psi = RootSystem::from_root_set(lat.gram().clone(), &lat.neg2_classes()).expect("E6");
    let (_, d4) = d4_cubic_configuration();
    let mut ok = true;
    for _ in 0..samples {
        let mut base: Vec<LatticeVector> = d4.simple_roots().to_vec();
        for _ in 0..rng.gen_range(0..24) {
            let s = rng.gen_range(0..psi.rank());
            base = base.iter().map(|v| psi.simple_reflection(s, v)).collect();
        }
        ok &= Embedding::new(psi.clone(), base)
            .ok()
            .and_then(|e| classify(&e).ok())
            .map(|t| t.to_string() == "D4")
            .unwrap_or(false);
    }
    (ok, format!("{samples} random Weyl images of the cubic D4 base"))
}

pub fn cmd_verify_paper(seed: u64, max_rank: usize) -> Result<Report, CliError> {
    let mut report = Report::new("verify-paper", json!({"seed": seed, "max_rank": max_rank}));
    let lines = PicardLattice::blowup(3).expect("degree in range").neg1_classes().len();
    let claims: Vec<(&str, (bool, String))> = vec![
        ("psi-counts-and-types", claim_roots()),
        ("cubic-lines-27", (lines == 27, format!("{lines} lines"))),
        ("very-good-primes", claim_very_good()),
        ("cup-surjective-very-good", claim_cup_very_good()),
        ("d4-char2-cup-failure", claim_d4_char2()),
        ("root-chains", claim_chains(6)),
        ("fundamental-cycles", claim_cycles()),
        ("structure-constants", claim_structure_constants()),
        ("d4-module-battery", claim_d4_module()),
        ("d4-in-e6-unique", claim_embedding(max_rank)),
        ("weyl-invariance-sample", claim_weyl_sample(seed, 16)),
    ];
    let mut results = serde_json::Map::new();
    for (c, (ok, d)) in claims {
        results.insert(c.to_string(), json!({"passed": ok, "detail": d}));
        report.verdict(c, ok, d);
    }
    report.results = Value::Object(results);
    report.summary = vec![format!("seed {seed}")];
    Ok(report)
}
