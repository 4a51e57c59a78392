//! Enumerable regular buildings: the thin building of an affine Weyl group
//! and the semi-homogeneous trees of type BC₁.
//!
//! Both are finite balls around a base chamber. Queries that would need
//! chambers outside the ball are refused with [`BuildingError::Margin`].

mod thin;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affweyl::{AffError, AffineWeyl, ClassMode};
use crate::coeff::{CoeffError, Rational};
use crate::hecke::HeckeError;
use crate::rootdata::{Coweight, RootError, RootSystem};
use crate::spherical::{Spherical, SphericalError};

pub use thin::ThinBuilding;
pub use tree::TreeBuilding;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildingError {
    #[error("query leaves the safe interior: {0}")]
    Margin(String),
    #[error("chamber or vertex not in the ball: {0}")]
    OutOfBall(String),
    #[error("no witness pair in the ball; increase radius ({0})")]
    NoWitness(String),
    #[error("bad building parameters: {0}")]
    BadParams(String),
    #[error("regularity violated: {0}")]
    Irregular(String),
    #[error(transparent)]
    Aff(#[from] AffError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

impl From<RootError> for BuildingError {
    fn from(e: RootError) -> Self {
        BuildingError::Aff(e.into())
    }
}

/// The vertex side of a building: good vertices and the sets V_λ(x).
pub trait VertexScheme {
    type Vertex: Copy + Eq + Ord + Hash + Debug;

    fn affine(&self) -> &AffineWeyl;

    fn root_system(&self) -> &RootSystem {
        self.affine().root_system()
    }

    /// q_i for each generator index i = 0..=n.
    fn parameters(&self) -> Vec<i64>;

    fn base_vertex(&self) -> Self::Vertex;

    /// The λ with y ∈ V_λ(x), read off from the geometry of the pair.
    fn relation(&self, x: &Self::Vertex, y: &Self::Vertex) -> Result<Coweight, BuildingError>;

    /// V_λ(x), as the projection of a union of chamber sets C_w(a).
    fn vertex_set(&self, x: &Self::Vertex, lam: &Coweight) -> Result<Vec<Self::Vertex>, BuildingError>;

    /// Good vertices whose every V_λ of reach ≤ `reach` fits in the ball.
    fn interior_vertices(&self, reach: usize) -> Vec<Self::Vertex>;

    /// Largest reach (in the sense of `interior_vertices`) that `lam` needs.
    fn reach(&self, lam: &Coweight) -> Result<usize, BuildingError>;
}

/// q-values as a vector over the variables of `mode`.
pub fn parameter_vector(aw: &AffineWeyl, mode: ClassMode, per_gen: &[i64]) -> Result<Vec<Rational>, BuildingError> {
    let nv = aw.vars(mode).len();
    let mut out: Vec<Option<i64>> = vec![None; nv];
    for (i, &q) in per_gen.iter().enumerate() {
        let k = aw.var_index(i, mode);
        match out[k] {
            Some(p) if p != q => {
                return Err(BuildingError::BadParams(format!("q{} = {} but its class already has q = {}", i, q, p)));
            }
            _ => out[k] = Some(q),
        }
    }
    Ok(out.into_iter().map(|x| Rational::from_int(x.unwrap_or(1))).collect())
}

/// N_λ evaluated at the parameters of `b`.
pub fn n_value<B: VertexScheme>(b: &B, sph: &Spherical, lam: &Coweight) -> Result<Rational, BuildingError> {
    let q = parameter_vector(b.affine(), ClassMode::Extended, &b.parameters())?;
    Ok(sph.n_lambda(lam)?.eval_q(&q)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalConstant {
    /// a_{λ,μ;ν}.
    pub value: Rational,
    /// |V_λ(u) ∩ V_{μ*}(v)|.
    pub count: u64,
    /// Number of witnesses v ∈ V_ν(u) that were counted and agreed.
    pub witnesses: usize,
}

/// a_{λ,μ;ν} = N_ν/(N_λN_μ)·|V_λ(u) ∩ V_{μ*}(v)| for v ∈ V_ν(u), u the base
/// vertex; up to `max_witnesses` choices of v must agree.
pub fn empirical_constant<B: VertexScheme>(
    b: &B,
    sph: &Spherical,
    lam: &Coweight,
    mu: &Coweight,
    nu: &Coweight,
    max_witnesses: usize,
) -> Result<EmpiricalConstant, BuildingError> {
    let rs = b.root_system();
    let u = b.base_vertex();
    let mu_star = rs.star(mu)?;
    let vs = b.vertex_set(&u, nu).map_err(|e| match e {
        BuildingError::Margin(m) => BuildingError::NoWitness(m),
        e => e,
    })?;
    if vs.is_empty() {
        return Err(BuildingError::NoWitness(format!("V_{}(u) is empty", nu)));
    }
    let vl = b.vertex_set(&u, lam)?;
    let step = (vs.len() / max_witnesses.max(1)).max(1);
    let mut count: Option<u64> = None;
    let mut witnesses = 0;
    for v in vs.iter().step_by(step).take(max_witnesses.max(1)) {
        let mut c = 0u64;
        for z in &vl {
            if b.relation(v, z)? == mu_star {
                c += 1;
            }
        }
        match count {
            Some(k) if k != c => {
                return Err(BuildingError::Irregular(format!(
                    "|V_{}(u) ∩ V_{}(v)| is {} and {} for two witnesses",
                    lam, mu_star, k, c
                )));
            }
            _ => count = Some(c),
        }
        witnesses += 1;
    }
    let count = count.unwrap();
    let n = |x: &Coweight| n_value(b, sph, x);
    let value = &(&n(nu)? / &(&n(lam)? * &n(mu)?)) * &Rational::from_int(count as i64);
    Ok(EmpiricalConstant { value, count, witnesses })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VertexReport {
    /// Interior vertices examined.
    pub vertices: usize,
    /// Ordered pairs examined.
    pub pairs: usize,
    pub violations: Vec<String>,
}

/// Partition, size and star duality checks for the vertex sets around every
/// interior good vertex of reach ≤ `reach`.
pub fn vertex_checks<B: VertexScheme>(b: &B, sph: &Spherical, reach: usize) -> Result<VertexReport, BuildingError> {
    let rs = b.root_system();
    let mut rep = VertexReport::default();
    let inner = b.interior_vertices(reach);
    let outer = b.interior_vertices(0);
    rep.vertices = inner.len();
    let mut lams: BTreeSet<Coweight> = BTreeSet::new();
    for x in &inner {
        for y in &outer {
            let lam = b.relation(x, y)?;
            if b.reach(&lam)? <= reach {
                lams.insert(lam);
            }
        }
    }
    let outer_set: BTreeSet<B::Vertex> = outer.iter().cloned().collect();
    for x in &inner {
        let mut owner: BTreeMap<B::Vertex, Coweight> = BTreeMap::new();
        for lam in &lams {
            let set = b.vertex_set(x, lam)?;
            let n = n_value(b, sph, lam)?;
            if Rational::from_int(set.len() as i64) != n {
                rep.violations.push(format!("|V_{}({:?})| = {} but N = {}", lam, x, set.len(), n));
            }
            for y in set {
                if let Some(prev) = owner.insert(y, *lam) {
                    rep.violations.push(format!("{:?} lies in V_{} and V_{} of {:?}", y, prev, lam, x));
                }
                let rel = b.relation(x, &y)?;
                if rel != *lam {
                    rep.violations.push(format!("{:?} ∈ V_{}({:?}) but the pair has relation {}", y, lam, x, rel));
                }
            }
        }
        for y in &outer_set {
            let lam = b.relation(x, y)?;
            if b.reach(&lam)? > reach {
                continue;
            }
            rep.pairs += 1;
            if owner.get(y) != Some(&lam) {
                rep.violations.push(format!("{:?} is not covered by V_{}({:?})", y, lam, x));
            }
            let back = b.relation(y, x)?;
            let star = rs.star(&lam)?;
            if back != star {
                rep.violations.push(format!("{:?} ∈ V_{}({:?}) but the reverse relation is {}", y, lam, x, back));
            }
            if inner.contains(y) && !b.vertex_set(y, &star)?.contains(x) {
                rep.violations.push(format!("{:?} ∉ V_{}({:?})", x, star, y));
            }
        }
    }
    Ok(rep)
}

/// Sampled strong vertex regularity:
/// |V_λ(x) ∩ V_{μ*}(y)| = |V_{λ*}(x′) ∩ V_μ(y′)| for y ∈ V_ν(x), y′ ∈ V_{ν*}(x′).
pub fn strong_vertex_regularity<B: VertexScheme>(
    b: &B,
    lams: &[Coweight],
    samples: usize,
    seed: u64,
) -> Result<VertexReport, BuildingError> {
    let rs = b.root_system();
    let mut rep = VertexReport::default();
    let reach = lams.iter().map(|l| b.reach(l)).collect::<Result<Vec<_>, _>>()?.into_iter().max().unwrap_or(0);
    let inner = b.interior_vertices(reach);
    rep.vertices = inner.len();
    if inner.len() < 2 {
        return Ok(rep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = |x: &B::Vertex, y: &B::Vertex, l: &Coweight, m: &Coweight| -> Result<u64, BuildingError> {
        let mut c = 0;
        for z in b.vertex_set(x, l)? {
            if b.relation(y, &z)? == *m {
                c += 1;
            }
        }
        Ok(c)
    };
    for _ in 0..samples {
        let x = *inner.choose(&mut rng).unwrap();
        let y = *inner.choose(&mut rng).unwrap();
        let x2 = *inner.choose(&mut rng).unwrap();
        let nu = b.relation(&x, &y)?;
        let nu_star = rs.star(&nu)?;
        // A y′ with y′ ∈ V_{ν*}(x′), if the ball holds one.
        let Some(y2) = inner.iter().find(|v| b.relation(&x2, v).map(|r| r == nu_star).unwrap_or(false)).cloned() else {
            continue;
        };
        rep.pairs += 1;
        for l in lams {
            for m in lams {
                let ls = rs.star(l)?;
                let ms = rs.star(m)?;
                let c1 = count(&x, &y, l, &ms)?;
                let c2 = count(&x2, &y2, &ls, m)?;
                if c1 != c2 {
                    rep.violations.push(format!(
                        "|V_{}({:?}) ∩ V_{}({:?})| = {} but |V_{}({:?}) ∩ V_{}({:?})| = {}",
                        l, x, ms, y, c1, ls, x2, m, y2, c2
                    ));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
