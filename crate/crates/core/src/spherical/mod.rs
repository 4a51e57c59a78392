//! The commutative side: W₀-invariants of the group algebra of P, the
//! spherical functions P_λ, and their structure constants.
//!
//! Internally we work with the rescaled functions
//! `P̃_λ = q_{t_λ}^{1/2} W₀(q) P_λ`, which have Laurent polynomial
//! coefficients.

mod constants;
mod group_algebra;

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::affweyl::{AffineElement, AffineWeyl, ClassMode};
use crate::coeff::{CoeffError, Frac, LaurentPoly, Mono, Rational, Vars};
use crate::hecke::{HeckeAlgebra, HeckeElement, HeckeError, Normalization};
use crate::rootdata::{Coweight, RootError, RootSystem};

pub use constants::{ARelationReport, GenerationResult};
pub use group_algebra::{GroupAlgebraElement, Phi};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SphericalError {
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("input is not W₀-invariant")]
    NotInvariant,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<RootError> for SphericalError {
    fn from(e: RootError) -> Self {
        SphericalError::Hecke(e.into())
    }
}

impl From<crate::affweyl::AffError> for SphericalError {
    fn from(e: crate::affweyl::AffError) -> Self {
        SphericalError::Hecke(e.into())
    }
}

pub struct Spherical {
    rs: Arc<RootSystem>,
    aw: Arc<AffineWeyl>,
    hecke: HeckeAlgebra,
    hprime: HeckeAlgebra,
    vars: Vars,
    /// τ_α as a u-monomial, per root index.
    tau: Vec<Mono>,
    phi: Phi,
    w0_poly: LaurentPoly,
    ptilde: RwLock<FxHashMap<Coweight, Arc<GroupAlgebraElement>>>,
    hecke_route: RwLock<FxHashMap<(Coweight, Coweight), Arc<HeckeElement>>>,
}

impl Spherical {
    pub fn new(rs: Arc<RootSystem>) -> Result<Spherical, SphericalError> {
        let aw = Arc::new(AffineWeyl::new(rs.clone())?);
        let mode = ClassMode::Extended;
        let hecke = HeckeAlgebra::new(aw.clone(), mode, Normalization::T);
        let hprime = HeckeAlgebra::new(aw.clone(), mode, Normalization::TPrime);
        let vars = aw.vars(mode).clone();
        let w = rs.weyl()?;

        // q_α for α conjugate to a simple root α_j is q_j.
        let mut q_alpha: Vec<Option<usize>> = vec![None; rs.num_roots()];
        for e in w.all() {
            for j in 0..rs.rank {
                let img = w.act_root(e, rs.simple_root_index(j));
                if q_alpha[img].is_none() {
                    q_alpha[img] = Some(j + 1);
                }
            }
        }
        let qmono = |i: usize| Mono::unit(aw.var_index(i, mode), 2);
        let tau: Vec<Mono> = (0..rs.num_roots())
            .map(|r| {
                if rs.in_r3(r) {
                    qmono(q_alpha[r].expect("R₃ roots are conjugate to simple roots"))
                } else if rs.in_r1(r) {
                    qmono(0)
                } else {
                    qmono(q_alpha[r].expect("short roots are conjugate to α_n")).sub(&qmono(0))
                }
            })
            .collect();
        let fin: Vec<AffineElement> = w.all().map(|x| aw.finite(x)).collect();
        let w0_poly = aw.poincare_polynomial(&fin, mode);
        Ok(Spherical {
            phi: Phi::new(rs.rank),
            rs,
            aw,
            hecke,
            hprime,
            vars,
            tau,
            w0_poly,
            ptilde: RwLock::new(FxHashMap::default()),
            hecke_route: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn affine(&self) -> &AffineWeyl {
        &self.aw
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn hecke_prime(&self) -> &HeckeAlgebra {
        &self.hprime
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn w0_poly(&self) -> &LaurentPoly {
        &self.w0_poly
    }

    fn check_dominant(&self, lam: &Coweight) -> Result<(), SphericalError> {
        self.rs.check_rank(lam)?;
        if !lam.is_dominant() {
            return Err(RootError::NotDominant(lam.to_string()).into());
        }
        Ok(())
    }

    /// τ_α; 1 when `root` is `None` (α ∉ R).
    pub fn tau(&self, root: Option<usize>) -> LaurentPoly {
        match root {
            Some(r) => LaurentPoly::monomial(&self.vars, self.tau[r], Rational::one()),
            None => LaurentPoly::one(&self.vars),
        }
    }

    fn tau_mono(&self, root: usize) -> Mono {
        self.tau[root]
    }

    /// τ_{α/2}^{1/2} as a u-monomial.
    fn tau_half_sqrt(&self, root: usize) -> Mono {
        if !self.rs.has_half(root) {
            return Mono::ONE;
        }
        let half = self.rs.root_index(&self.rs.root(root).map(|x| x / 2)).unwrap();
        self.tau[half].half().expect("τ has even exponents")
    }

    /// Σ_{γ ∈ W₀λ} x^γ.
    pub fn orbit_sum(&self, lam: &Coweight) -> Result<GroupAlgebraElement, SphericalError> {
        self.check_dominant(lam)?;
        let one = LaurentPoly::one(&self.vars);
        let mut g = GroupAlgebraElement::zero();
        for mu in self.rs.orbit(lam) {
            g.add_term(mu, &one);
        }
        Ok(g)
    }

    /// q_{t_λ}^{1/2} as a u-monomial.
    pub fn q_half(&self, lam: &Coweight) -> Mono {
        self.hecke.sqrt_q_translation(lam)
    }

    /// W_{0λ}(q).
    pub fn stabilizer_poly(&self, lam: &Coweight) -> Result<LaurentPoly, SphericalError> {
        let stab: Vec<AffineElement> =
            self.rs.stabilizer_subgroup(lam)?.0.into_iter().map(|x| self.aw.finite(x)).collect();
        Ok(self.aw.poincare_polynomial(&stab, ClassMode::Extended))
    }

    pub fn q_w_lambda(&self, lam: &Coweight) -> Result<LaurentPoly, SphericalError> {
        let wl = self.aw.w_lambda(lam)?;
        Ok(self.aw.q_w(&wl.w, ClassMode::Extended))
    }

    /// P̃_λ = Σ_w w(F_λ) / ∏_{α∈R}(τ_{α/2}^{1/2} x^{α^∨} − 1), where
    /// F_λ = x^λ ∏_{α>0}(τ_α τ_{α/2}^{1/2} x^{α^∨} − 1)(τ_{α/2}^{1/2} x^{−α^∨} − 1).
    pub fn ptilde(&self, lam: &Coweight) -> Result<Arc<GroupAlgebraElement>, SphericalError> {
        self.check_dominant(lam)?;
        if let Some(p) = self.ptilde.read().unwrap().get(lam) {
            return Ok(p.clone());
        }
        let rs = &self.rs;
        let w = rs.weyl()?;
        let mut f = GroupAlgebraElement::monomial(*lam, LaurentPoly::one(&self.vars));
        for r in 0..rs.num_positive() {
            let a = self.tau_half_sqrt(r);
            let beta = *rs.coroot(r);
            f = f.mul_binomial(&self.tau_mono(r).add(&a), &beta);
            f = f.mul_binomial(&a, &beta.neg());
        }
        let mut sum = GroupAlgebraElement::zero();
        for e in w.all() {
            sum = sum.add(&f.act(w, e));
        }
        for r in 0..rs.num_roots() {
            let a = self.tau_half_sqrt(r);
            sum = sum
                .div_binomial(&a, rs.coroot(r), &self.phi)
                .ok_or_else(|| SphericalError::Internal(format!("inexact division computing P_{}", lam)))?;
        }
        if !sum.is_invariant(rs) {
            return Err(SphericalError::Internal(format!("P_{} is not W₀-invariant", lam)));
        }
        let p = Arc::new(sum);
        self.ptilde.write().unwrap().insert(*lam, p.clone());
        Ok(p)
    }

    /// P_λ = num / den.
    pub fn macdonald_p(&self, lam: &Coweight) -> Result<(GroupAlgebraElement, LaurentPoly), SphericalError> {
        let pt = self.ptilde(lam)?;
        let inv = LaurentPoly::monomial(&self.vars, self.q_half(lam).neg(), Rational::one());
        Ok((pt.scale(&inv), self.w0_poly.clone()))
    }

    fn height(&self, mu: &Coweight) -> Rational {
        self.rs.coroot_coords(mu).into_iter().fold(Rational::zero(), |a, b| a + b)
    }

    /// Expansion of num/den in the basis {P̃_ν}.
    pub fn expand_in_ptilde_basis(
        &self,
        num: &GroupAlgebraElement,
        den: &LaurentPoly,
    ) -> Result<BTreeMap<Coweight, Frac>, SphericalError> {
        self.eliminate_ptilde(num, den)
    }

    /// Coefficients of a W₀-invariant element in the basis {P_ν}.
    pub fn expand_in_p_basis(&self, f: &GroupAlgebraElement) -> Result<BTreeMap<Coweight, Frac>, SphericalError> {
        let one = LaurentPoly::one(&self.vars);
        let e = self.expand_in_ptilde_basis(f, &one)?;
        Ok(e
            .into_iter()
            .map(|(nu, c)| {
                let s = LaurentPoly::monomial(&self.vars, self.q_half(&nu), Rational::one());
                (nu, c.scale_poly(&(&s * &self.w0_poly)))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests;
