use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use hecke_core::affweyl::{AffineElement, AffineWeyl, ClassMode};
use hecke_core::building::{
    empirical_constant, n_value, parameter_vector, vertex_checks, BuildingError, ThinBuilding, TreeBuilding,
    VertexScheme,
};
use hecke_core::coeff::{Frac, LaurentPoly, Rational};
use hecke_core::hecke::{HeckeAlgebra, Normalization};
use hecke_core::rootdata::Coweight;
use hecke_core::spherical::Spherical;

use crate::job::root_system;
use crate::CliError;

pub const REPORT_SCHEMA: &str = "hecke-verify/1";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub count: usize,
    pub failures: usize,
    /// Instances the ball or grid was too small for.
    pub skipped: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub target: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Outcome of one instance of a check.
enum Case {
    Ok,
    Fail(String),
    Skip,
}

fn tally<T: Sync>(name: &str, items: &[T], f: impl Fn(&T) -> Result<Case, CliError> + Sync + Send) -> Result<Check, CliError> {
    let results: Vec<Case> = items.par_iter().map(&f).collect::<Result<_, _>>()?;
    let mut c = Check { name: name.to_string(), count: 0, failures: 0, skipped: 0, first_failure: None };
    for r in results {
        match r {
            Case::Ok => c.count += 1,
            Case::Skip => c.skipped += 1,
            Case::Fail(m) => {
                c.count += 1;
                c.failures += 1;
                c.first_failure.get_or_insert(m);
            }
        }
    }
    Ok(c)
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Case {
    if ok {
        Case::Ok
    } else {
        Case::Fail(msg())
    }
}

fn spherical(system: &str) -> Result<Spherical, CliError> {
    Ok(Spherical::new(root_system(system)?)?)
}

fn pairs(sph: &Spherical, grid: i32) -> Vec<(Coweight, Coweight)> {
    let g = sph.root_system().dominant_grid(grid);
    g.iter().flat_map(|l| g.iter().map(move |m| (*l, *m))).collect()
}

fn triples(sph: &Spherical, grid: i32) -> Vec<(Coweight, Coweight, Coweight)> {
    let rs = sph.root_system();
    pairs(sph, grid)
        .into_iter()
        .flat_map(|(l, m)| rs.dominant_below(&l.add(&m)).into_iter().map(move |nu| (l, m, nu)))
        .collect()
}

pub fn positivity(system: &str, grid: i32) -> Result<Vec<Check>, CliError> {
    let sph = spherical(system)?;
    let t = triples(&sph, grid);
    Ok(vec![tally("c' has nonnegative integer coefficients in q - 1", &t, |(l, m, nu)| {
        Ok(match sph.c_prime(l, m, nu) {
            Ok(_) => Case::Ok,
            Err(e) => Case::Fail(format!("({}, {}; {}): {}", l, m, nu, e)),
        })
    })?])
}

pub fn routes(system: &str, grid: i32) -> Result<Vec<Check>, CliError> {
    let sph = spherical(system)?;
    let t = triples(&sph, grid);
    let agree = tally("symmetric and Hecke routes agree", &t, |(l, m, nu)| {
        let sym = sph.c_via_symmetric(l, m)?;
        let c = sym.get(nu).cloned().unwrap_or_else(|| Frac::zero(sph.vars()));
        let h = sph.c_via_hecke(l, m, nu)?;
        Ok(expect(c == h, || format!("({}, {}; {}): {} vs {}", l, m, nu, c, h)))
    })?;
    let p = pairs(&sph, grid);
    let rs = sph.root_system();
    let sym = tally("commutativity and star symmetry", &p, |(l, m)| {
        let a = sph.c_via_symmetric(l, m)?;
        let b = sph.c_via_symmetric(m, l)?;
        let s = sph.c_via_symmetric(&rs.star(l).map_err(core)?, &rs.star(m).map_err(core)?)?;
        let starred: std::collections::BTreeMap<Coweight, Frac> =
            s.into_iter().map(|(nu, c)| (rs.star(&nu).unwrap(), c)).collect();
        Ok(expect(a == b && a == starred, || format!("({}, {})", l, m)))
    })?;
    Ok(vec![agree, sym])
}

fn core<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn box_coweights(n: usize, b: i32) -> Vec<Coweight> {
    let side = (2 * b + 1) as usize;
    (0..side.pow(n as u32))
        .map(|mut k| {
            let mut c = vec![0; n];
            for slot in c.iter_mut() {
                *slot = (k % side) as i32 - b;
                k /= side;
            }
            Coweight::new(&c)
        })
        .collect()
}

pub fn bernstein(system: &str, grid: i32) -> Result<Vec<Check>, CliError> {
    let rs = root_system(system)?;
    let n = rs.rank;
    let h = HeckeAlgebra::new(Arc::new(AffineWeyl::new(rs).map_err(core)?), ClassMode::Extended, Normalization::T);
    let cases: Vec<(Coweight, usize)> =
        box_coweights(n, grid).into_iter().flat_map(|l| (1..=n).map(move |i| (l, i))).collect();
    Ok(vec![tally("Bernstein relation residual is zero", &cases, |(l, i)| {
        let r = h.bernstein_residual(l, *i).map_err(core)?;
        Ok(expect(r.is_zero(), || format!("λ = {}, i = {}", l, i)))
    })?])
}

pub fn satake(system: &str, grid: i32) -> Result<Vec<Check>, CliError> {
    let sph = spherical(system)?;
    let h = sph.hecke();
    let e0 = h.idempotent(0).map_err(core)?.num;
    let lams = sph.root_system().dominant_grid(grid);
    let sat = tally("1₀ T_{t_λ} 1₀ = P_λ 1₀", &lams, |l| {
        let q = LaurentPoly::monomial(sph.vars(), sph.q_half(l), Rational::one());
        let lhs = h.satake_product(l).map_err(core)?.num.scale(&q);
        let p = h.from_group_algebra(sph.ptilde(l)?.iter()).map_err(core)?;
        let rhs = h.mul(&p, &e0).map_err(core)?;
        Ok(expect(lhs.sub(&rhs).is_zero(), || format!("λ = {}", l)))
    })?;
    let dc = tally("double coset identity", &lams, |l| {
        Ok(expect(h.double_coset_identity_residual(l).map_err(core)?.is_zero(), || format!("λ = {}", l)))
    })?;
    let sig = tally("P_λ 1₀ = q^{-1/2} 1₀ x^λ 1₀", &lams, |l| {
        let p = h.from_group_algebra(sph.ptilde(l)?.iter()).map_err(core)?;
        let lhs = h.mul(&p, &e0).map_err(core)?;
        let x = h.x_lambda(l).map_err(core)?;
        let rhs = h.mul(&h.mul(&e0, &x).map_err(core)?, &e0).map_err(core)?;
        Ok(expect(lhs.sub(&rhs).is_zero(), || format!("λ = {}", l)))
    })?;
    Ok(vec![sat, dc, sig])
}

pub fn generation(system: &str, grid: i32) -> Result<Vec<Check>, CliError> {
    let sph = spherical(system)?;
    let lams = sph.root_system().dominant_grid(grid);
    Ok(vec![tally("P_λ is a polynomial in the P_{λ_i}", &lams, |l| {
        Ok(expect(sph.generation(l)?.residual_zero, || format!("λ = {}", l)))
    })?])
}

fn ball(aw: &Arc<AffineWeyl>, k: usize) -> Vec<AffineElement> {
    ThinBuilding::new(aw.clone(), k).chambers()
}

pub fn hecke(system: &str, length: usize) -> Result<Vec<Check>, CliError> {
    let rs = root_system(system)?;
    let aw = Arc::new(AffineWeyl::new(rs).map_err(core)?);
    let hp = HeckeAlgebra::new(aw.clone(), ClassMode::W, Normalization::TPrime);
    let h = HeckeAlgebra::new(aw.clone(), ClassMode::W, Normalization::T);
    let elems = ball(&aw, length);
    let prs: Vec<(AffineElement, AffineElement)> =
        elems.iter().flat_map(|a| elems.iter().map(move |b| (*a, *b))).collect();
    let pos = tally("d' has nonnegative integer coefficients in q - 1", &prs, |(a, b)| {
        for (w, c) in hp.structure_d_prime(a, b).map_err(core)? {
            if !c.assert_nonneg_integer_coeffs() {
                return Ok(Case::Fail(format!("({}, {}; {}) = {}", aw.format(a), aw.format(b), aw.format(&w), c)));
            }
        }
        Ok(Case::Ok)
    })?;
    let sum = tally("Σ_w d(w1, w2; w) = 1", &prs, |(a, b)| {
        let prod = h.mul_basis(a, b).map_err(core)?;
        let mut total = LaurentPoly::zero(h.vars());
        for (_, c) in prod.iter() {
            total = &total + c;
        }
        Ok(expect(total.is_one(), || format!("({}, {})", aw.format(a), aw.format(b))))
    })?;
    Ok(vec![pos, sum])
}

/// "tree:q0=2,q1=3,r=6" or "thin:A2,r=8".
#[derive(Clone, Debug, PartialEq)]
pub enum BuildingSpec {
    Tree { q0: u32, q1: u32, radius: u32 },
    Thin { system: String, radius: usize },
}

pub fn parse_building(s: &str, default_radius: Option<usize>) -> Result<BuildingSpec, CliError> {
    let bad = || CliError::Usage(format!("building must look like tree:q0=2,q1=3,r=6 or thin:A2,r=8; got {:?}", s));
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    let mut radius = default_radius;
    let mut q = [None, None];
    let mut system = None;
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some(("r", v)) => radius = Some(v.parse().map_err(|_| bad())?),
            Some(("q0", v)) => q[0] = Some(v.parse::<u32>().map_err(|_| bad())?),
            Some(("q1", v)) => q[1] = Some(v.parse::<u32>().map_err(|_| bad())?),
            Some(_) => return Err(bad()),
            None => system = Some(part.to_string()),
        }
    }
    match kind {
        "tree" if system.is_none() => Ok(BuildingSpec::Tree {
            q0: q[0].ok_or_else(bad)?,
            q1: q[1].ok_or_else(bad)?,
            radius: radius.unwrap_or(6) as u32,
        }),
        "thin" if q == [None, None] => {
            Ok(BuildingSpec::Thin { system: system.ok_or_else(bad)?, radius: radius.unwrap_or(8) })
        }
        _ => Err(bad()),
    }
}

fn empirical_checks<B: VertexScheme + Sync>(
    b: &B,
    sph: &Spherical,
    grid: i32,
    q: &[Rational],
) -> Result<Check, CliError> {
    let t = triples(sph, grid);
    tally("a_{λ,μ;ν} counted in the building equals c_{λ,μ;ν}", &t, |(l, m, nu)| {
        let e = match empirical_constant(b, sph, l, m, nu, 4) {
            Ok(e) => e,
            Err(BuildingError::NoWitness(_)) | Err(BuildingError::Margin(_)) => return Ok(Case::Skip),
            Err(e) => return Ok(Case::Fail(format!("({}, {}; {}): {}", l, m, nu, e))),
        };
        let c = sph.c_via_symmetric(l, m)?.get(nu).map(|c| c.eval_q(q)).transpose()?.unwrap_or_else(Rational::zero);
        Ok(expect(e.value == c, || format!("({}, {}; {}): counted {} but c = {}", l, m, nu, e.value, c)))
    })
}

fn vertex_check<B: VertexScheme>(b: &B, sph: &Spherical, reach: usize) -> Result<Check, CliError> {
    let rep = vertex_checks(b, sph, reach)?;
    Ok(Check {
        name: format!("vertex sets partition, have size N_λ, and satisfy star duality (reach {})", reach),
        count: rep.pairs,
        failures: rep.violations.len(),
        skipped: 0,
        first_failure: rep.violations.first().cloned(),
    })
}

fn size_check<B: VertexScheme>(b: &B, sph: &Spherical, lams: &[Coweight]) -> Result<Check, CliError> {
    let mut c = Check { name: "|V_λ(x)| = N_λ".into(), count: 0, failures: 0, skipped: 0, first_failure: None };
    for l in lams {
        match b.vertex_set(&b.base_vertex(), l) {
            Ok(v) => {
                c.count += 1;
                let n = n_value(b, sph, l)?;
                if Rational::from_int(v.len() as i64) != n {
                    c.failures += 1;
                    c.first_failure.get_or_insert(format!("λ = {}: {} vertices, N = {}", l, v.len(), n));
                }
            }
            Err(BuildingError::Margin(_)) => c.skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(c)
}

pub fn building(spec: &BuildingSpec, against: Option<&str>, grid: i32) -> Result<Vec<Check>, CliError> {
    match spec {
        BuildingSpec::Tree { q0, q1, radius } => {
            if let Some(a) = against {
                if root_system(a)?.label() != "BC1" {
                    return Err(CliError::Usage(format!("a tree is checked against BC1, not {}", a)));
                }
            }
            let t = TreeBuilding::new(*q0, *q1, *radius)?;
            let sph = spherical("BC1")?;
            let q = parameter_vector(t.affine(), ClassMode::Extended, &t.parameters())?;
            let lams: Vec<Coweight> = (0..=(*radius as i32) / 2).map(|k| Coweight::new(&[k])).collect();
            let sizes = size_check(&t, &sph, &lams)?;
            let reach = 2 * (*radius as usize / 4);
            let vc = vertex_check(&t, &sph, reach)?;
            let emp = empirical_checks(&t, &sph, grid, &q)?;

            let aw = t.affine_arc().clone();
            let h = HeckeAlgebra::new(aw.clone(), ClassMode::W, Normalization::T);
            let qw = parameter_vector(&aw, ClassMode::W, &t.parameters())?;
            let l = (*radius as usize).saturating_sub(2).min(4);
            let elems = ball(&aw, l);
            let a = t.base_chamber();
            let cs = t.chambers_within(a, 2);
            let prs: Vec<(AffineElement, AffineElement)> =
                elems.iter().flat_map(|x| elems.iter().map(move |y| (*x, *y))).collect();
            let cc = tally("chamber counts equal (q_{w1} q_{w2} / q_w) d(w1, w2; w)", &prs, |(w1, w2)| {
                let prod = h.mul_basis(w1, w2).map_err(core)?;
                let qv = |w: &AffineElement| aw.q_w(w, ClassMode::W).eval_q(&qw);
                for &c in &cs {
                    let w3 = t.w_distance(a, c)?;
                    let d = prod.coeff(&w3).map(|x| x.eval_q(&qw)).transpose()?.unwrap_or_else(Rational::zero);
                    let f = &(&qv(w1)? * &qv(w2)?) / &qv(&w3)?;
                    let n = t.chamber_count(w1, w2, a, c)?;
                    if Rational::from_int(n as i64) != &f * &d {
                        return Ok(Case::Fail(format!("({}, {}) at edge {}", aw.format(w1), aw.format(w2), c)));
                    }
                }
                Ok(Case::Ok)
            })?;
            Ok(vec![sizes, vc, emp, cc])
        }
        BuildingSpec::Thin { system, radius } => {
            let rs = root_system(system)?;
            if let Some(a) = against {
                if root_system(a)?.label() != rs.label() {
                    return Err(CliError::Usage(format!("thin:{} is checked against {}, not {}", system, rs.label(), a)));
                }
            }
            let sph = Spherical::new(rs.clone())?;
            let aw = Arc::new(AffineWeyl::new(rs).map_err(core)?);
            let b = ThinBuilding::new(aw.clone(), *radius);
            let ones = vec![Rational::one(); sph.vars().len()];
            let lams = sph.root_system().dominant_grid(grid);
            let sizes = size_check(&b, &sph, &lams)?;
            let vc = vertex_check(&b, &sph, radius / 2)?;
            let emp = empirical_checks(&b, &sph, grid, &ones)?;

            let h = HeckeAlgebra::new(aw.clone(), ClassMode::W, Normalization::T);
            let ones = vec![Rational::one(); h.vars().len()];
            let small = ball(&aw, (radius / 3).max(1));
            let targets = ball(&aw, (2 * (radius / 3)).max(1));
            let id = aw.identity();
            let prs: Vec<(AffineElement, AffineElement)> =
                small.iter().flat_map(|x| small.iter().map(move |y| (*x, *y))).collect();
            let cc = tally("chamber counts equal d(w1, w2; w) at q = 1", &prs, |(w1, w2)| {
                let prod = h.mul_basis(w1, w2).map_err(core)?;
                for c in &targets {
                    let n = b.chamber_count(w1, w2, &id, c)?;
                    let d = prod.coeff(c).map(|x| x.eval_q(&ones)).transpose()?.unwrap_or_else(Rational::zero);
                    if Rational::from_int(n as i64) != d {
                        return Ok(Case::Fail(format!("({}, {}) at {}", aw.format(w1), aw.format(w2), aw.format(c))));
                    }
                }
                Ok(Case::Ok)
            })?;
            Ok(vec![sizes, vc, emp, cc])
        }
    }
}

pub fn report(suite: &str, target: &str, checks: Vec<Check>) -> Report {
    let passed = checks.iter().all(|c| c.failures == 0);
    Report { schema: REPORT_SCHEMA.to_string(), suite: suite.to_string(), target: target.to_string(), checks, passed }
}

pub fn pretty(r: &Report) -> String {
    let mut s = format!("verify {} {}\n", r.suite, r.target);
    for c in &r.checks {
        let status = if c.failures == 0 { "PASS" } else { "FAIL" };
        s += &format!("{} {}: {} checked", status, c.name, c.count);
        if c.skipped > 0 {
            s += &format!(", {} out of reach", c.skipped);
        }
        if c.failures > 0 {
            s += &format!(", {} failed; first: {}", c.failures, c.first_failure.as_deref().unwrap_or(""));
        }
        s.push('\n');
    }
    s += if r.passed { "all checks passed\n" } else { "some checks failed\n" };
    s
}

pub fn write_csv<W: std::io::Write>(r: &Report, w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let err = |e: csv::Error| CliError::Usage(e.to_string());
    out.write_record(["check", "count", "failures", "skipped", "first_failure"]).map_err(err)?;
    for c in &r.checks {
        out.write_record([
            c.name.clone(),
            c.count.to_string(),
            c.failures.to_string(),
            c.skipped.to_string(),
            c.first_failure.clone().unwrap_or_default(),
        ])
        .map_err(err)?;
    }
    out.flush().map_err(|e| CliError::Usage(e.to_string()))
}
