//! The extended affine Hecke algebra in a basis indexed by W̃.
//!
//! Two normalizations share one engine. In the `T` basis
//! `T_w T_s = T_{ws}` if `ℓ(ws) > ℓ(w)` and `T_w T_s = q_s⁻¹ T_{ws} + (1 − q_s⁻¹) T_w`
//! otherwise. The `T′` basis is `T′_w = q_w T_w`, whose structure constants
//! are polynomials in the `q_s`.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::affweyl::{AffError, AffineElement, AffineWeyl, ClassMode};
use crate::coeff::{CoeffError, LaurentPoly, Mono, Rational, ShiftedPoly, Vars};
use crate::rootdata::{Coweight, RootError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error(transparent)]
    Aff(#[from] AffError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("element {0} has a nontrivial length-zero part, which W-mode parameters do not support")]
    LengthZeroInWMode(String),
}

impl From<RootError> for HeckeError {
    fn from(e: RootError) -> Self {
        HeckeError::Aff(AffError::Root(e))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// a_s = q_s⁻¹, b_s = 1 − q_s⁻¹.
    T,
    /// a_s = q_s, b_s = q_s − 1.
    TPrime,
}

/// Finite sum of basis elements with Laurent polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: FxHashMap<AffineElement, LaurentPoly>,
}

fn add_into(map: &mut FxHashMap<AffineElement, LaurentPoly>, k: AffineElement, c: &LaurentPoly) {
    match map.get_mut(&k) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(k, c.clone());
            }
        }
    }
}

impl HeckeElement {
    pub fn zero() -> HeckeElement {
        HeckeElement::default()
    }

    pub fn term(w: AffineElement, c: LaurentPoly) -> HeckeElement {
        let mut h = HeckeElement::zero();
        add_into(&mut h.terms, w, &c);
        h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &AffineElement) -> Option<&LaurentPoly> {
        self.terms.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineElement, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order.
    pub fn sorted(&self) -> Vec<(AffineElement, LaurentPoly)> {
        let b: BTreeMap<AffineElement, LaurentPoly> = self.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        b.into_iter().collect()
    }

    pub fn support(&self) -> Vec<AffineElement> {
        let mut v: Vec<AffineElement> = self.terms.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn add_term(&mut self, w: AffineElement, c: &LaurentPoly) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            add_into(&mut r.terms, *k, v);
        }
        r
    }

    pub fn sub(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            add_into(&mut r.terms, *k, &-v);
        }
        r
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut r = HeckeElement::zero();
        for (k, v) in &self.terms {
            add_into(&mut r.terms, *k, &(v * c));
        }
        r
    }
}

/// `num / den` with a scalar denominator, used for the idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledElement {
    pub num: HeckeElement,
    pub den: LaurentPoly,
}

pub struct HeckeAlgebra {
    aw: Arc<AffineWeyl>,
    mode: ClassMode,
    norm: Normalization,
    vars: Vars,
    q: Vec<LaurentPoly>,
    a: Vec<LaurentPoly>,
    b: Vec<LaurentPoly>,
    decomp: RwLock<FxHashMap<AffineElement, (Vec<u8>, AffineElement)>>,
    xcache: RwLock<FxHashMap<Coweight, HeckeElement>>,
}

impl HeckeAlgebra {
    pub fn new(aw: Arc<AffineWeyl>, mode: ClassMode, norm: Normalization) -> HeckeAlgebra {
        let vars = aw.vars(mode).clone();
        let n = aw.rank();
        let q: Vec<LaurentPoly> = (0..=n).map(|i| LaurentPoly::q(&vars, aw.var_index(i, mode), 1)).collect();
        let one = LaurentPoly::one(&vars);
        let (a, b) = match norm {
            Normalization::T => {
                let a: Vec<LaurentPoly> = (0..=n).map(|i| LaurentPoly::q(&vars, aw.var_index(i, mode), -1)).collect();
                let b = a.iter().map(|x| &one - x).collect();
                (a, b)
            }
            Normalization::TPrime => (q.clone(), q.iter().map(|x| x - &one).collect()),
        };
        HeckeAlgebra {
            aw,
            mode,
            norm,
            vars,
            q,
            a,
            b,
            decomp: RwLock::new(FxHashMap::default()),
            xcache: RwLock::new(FxHashMap::default()),
        }
    }

    pub fn affine(&self) -> &AffineWeyl {
        &self.aw
    }

    pub fn affine_arc(&self) -> &Arc<AffineWeyl> {
        &self.aw
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn mode(&self) -> ClassMode {
        self.mode
    }

    pub fn normalization(&self) -> Normalization {
        self.norm
    }

    pub fn q_s(&self, i: usize) -> &LaurentPoly {
        &self.q[i]
    }

    pub fn one(&self) -> HeckeElement {
        self.basis(self.aw.identity())
    }

    pub fn basis(&self, w: AffineElement) -> HeckeElement {
        HeckeElement::term(w, LaurentPoly::one(&self.vars))
    }

    pub fn scalar(&self, c: LaurentPoly) -> HeckeElement {
        HeckeElement::term(self.aw.identity(), c)
    }

    fn decompose(&self, w: &AffineElement) -> (Vec<u8>, AffineElement) {
        if let Some(d) = self.decomp.read().unwrap().get(w) {
            return d.clone();
        }
        let d = self.aw.decompose(w);
        self.decomp.write().unwrap().insert(*w, d.clone());
        d
    }

    fn check_g(&self, g: &AffineElement) -> Result<(), HeckeError> {
        if self.mode == ClassMode::W && *g != self.aw.identity() {
            return Err(HeckeError::LengthZeroInWMode(self.aw.format(g)));
        }
        Ok(())
    }

    /// X · T_{s_i}.
    pub fn right_mul_gen(&self, x: &HeckeElement, i: usize) -> HeckeElement {
        let s = self.aw.generator(i);
        let mut out: FxHashMap<AffineElement, LaurentPoly> = FxHashMap::default();
        for (w, c) in &x.terms {
            let ws = self.aw.compose(w, &s);
            if self.aw.is_right_descent(w, i) {
                add_into(&mut out, ws, &(c * &self.a[i]));
                add_into(&mut out, *w, &(c * &self.b[i]));
            } else {
                add_into(&mut out, ws, c);
            }
        }
        HeckeElement { terms: out }
    }

    /// X · T_{s_i}⁻¹ with T_s⁻¹ = (T_s − b_s)/a_s.
    pub fn right_mul_gen_inv(&self, x: &HeckeElement, i: usize) -> HeckeElement {
        let ainv = self.a[i].monomial_inverse().expect("a_s is a monomial");
        let xs = self.right_mul_gen(x, i);
        xs.sub(&x.scale(&self.b[i])).scale(&ainv)
    }

    /// X · T_g for ℓ(g) = 0.
    pub fn right_mul_length_zero(&self, x: &HeckeElement, g: &AffineElement) -> HeckeElement {
        let mut out = FxHashMap::default();
        for (w, c) in &x.terms {
            out.insert(self.aw.compose(w, g), c.clone());
        }
        HeckeElement { terms: out }
    }

    /// X · T_v.
    pub fn right_mul_basis(&self, x: &HeckeElement, v: &AffineElement) -> Result<HeckeElement, HeckeError> {
        let (word, g) = self.decompose(v);
        self.check_g(&g)?;
        let mut r = x.clone();
        for &i in &word {
            r = self.right_mul_gen(&r, i as usize);
        }
        if g != self.aw.identity() {
            r = self.right_mul_length_zero(&r, &g);
        }
        Ok(r)
    }

    /// X · T_v⁻¹.
    pub fn right_mul_basis_inv(&self, x: &HeckeElement, v: &AffineElement) -> Result<HeckeElement, HeckeError> {
        let (word, g) = self.decompose(v);
        self.check_g(&g)?;
        let mut r = x.clone();
        if g != self.aw.identity() {
            r = self.right_mul_length_zero(&r, &self.aw.inverse(&g));
        }
        for &i in word.iter().rev() {
            r = self.right_mul_gen_inv(&r, i as usize);
        }
        Ok(r)
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        let mut acc: FxHashMap<AffineElement, LaurentPoly> = FxHashMap::default();
        for (v, c) in y.sorted() {
            let part = self.right_mul_basis(x, &v)?;
            for (w, d) in part.terms {
                add_into(&mut acc, w, &(&d * &c));
            }
        }
        Ok(HeckeElement { terms: acc })
    }

    pub fn mul_basis(&self, w1: &AffineElement, w2: &AffineElement) -> Result<HeckeElement, HeckeError> {
        self.right_mul_basis(&self.basis(*w1), w2)
    }

    /// Coefficients of T_{w₁}T_{w₂} (the d-constants in the `T` basis, the
    /// d′-constants in the `T′` basis).
    pub fn structure_constants(
        &self,
        w1: &AffineElement,
        w2: &AffineElement,
    ) -> Result<Vec<(AffineElement, LaurentPoly)>, HeckeError> {
        Ok(self.mul_basis(w1, w2)?.sorted())
    }

    /// Σ_{w∈W_J} q_w T_w in the `T` basis, Σ T′_w in the `T′` basis.
    pub fn parabolic_sum(&self, j: &[usize]) -> Result<HeckeElement, HeckeError> {
        let set = self.aw.parabolic(j)?;
        let mut h = HeckeElement::zero();
        for w in set {
            let c = match self.norm {
                Normalization::T => self.aw.q_w(&w, self.mode),
                Normalization::TPrime => LaurentPoly::one(&self.vars),
            };
            h.add_term(w, &c);
        }
        Ok(h)
    }

    /// 𝟙_i = (Σ_{w∈W_i} q_w T_w) / W_i(q).
    pub fn idempotent(&self, i: usize) -> Result<ScaledElement, HeckeError> {
        let j = self.aw.cotype(i);
        let num = self.parabolic_sum(&j)?;
        let den = self.aw.poincare_polynomial(&self.aw.parabolic(&j)?, self.mode);
        Ok(ScaledElement { num, den })
    }

    /// Monomial q_{t_λ}^{1/2} for dominant λ.
    pub fn sqrt_q_translation(&self, lam: &Coweight) -> Mono {
        let t = self.aw.translation(lam);
        self.aw.q_mono(&t, self.mode).half().expect("q-monomials have even exponents")
    }

    /// x^λ for any λ ∈ P, via x^λ = x^μ (x^ν)⁻¹ with μ, ν dominant.
    pub fn x_lambda(&self, lam: &Coweight) -> Result<HeckeElement, HeckeError> {
        self.aw.root_system().check_rank(lam)?;
        if let Some(h) = self.xcache.read().unwrap().get(lam) {
            return Ok(h.clone());
        }
        let n = lam.rank();
        let mut mu = Coweight::zero(n);
        let mut nu = Coweight::zero(n);
        for i in 0..n {
            mu.set(i, lam.get(i).max(0));
            nu.set(i, (-lam.get(i)).max(0));
        }
        let h = self.x_split(&mu, &nu)?;
        self.xcache.write().unwrap().insert(*lam, h.clone());
        Ok(h)
    }

    /// x^μ (x^ν)⁻¹ for dominant μ, ν.
    pub fn x_split(&self, mu: &Coweight, nu: &Coweight) -> Result<HeckeElement, HeckeError> {
        if !mu.is_dominant() {
            return Err(RootError::NotDominant(mu.to_string()).into());
        }
        if !nu.is_dominant() {
            return Err(RootError::NotDominant(nu.to_string()).into());
        }
        let xm = self.x_dominant(mu)?;
        if nu.is_zero() {
            return Ok(xm);
        }
        let tn = self.aw.translation(nu);
        let c = self.x_coeff(nu).monomial_inverse().expect("monomial");
        Ok(self.right_mul_basis_inv(&xm, &tn)?.scale(&c))
    }

    fn x_coeff(&self, lam: &Coweight) -> LaurentPoly {
        let m = self.sqrt_q_translation(lam);
        let m = match self.norm {
            Normalization::T => m,
            Normalization::TPrime => m.neg(),
        };
        LaurentPoly::monomial(&self.vars, m, Rational::one())
    }

    fn x_dominant(&self, lam: &Coweight) -> Result<HeckeElement, HeckeError> {
        let t = self.aw.translation(lam);
        let (_, g) = self.decompose(&t);
        self.check_g(&g)?;
        Ok(HeckeElement::term(t, self.x_coeff(lam)))
    }

    /// Σ c_μ x^μ.
    pub fn from_group_algebra<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a Coweight, &'a LaurentPoly)>,
    ) -> Result<HeckeElement, HeckeError> {
        let mut acc = HeckeElement::zero();
        for (mu, c) in terms {
            let x = self.x_lambda(mu)?;
            acc = acc.add(&x.scale(c));
        }
        Ok(acc)
    }

    /// x^λ T_{s_i} − T_{s_i} x^{s_iλ} minus the right-hand side of the
    /// Bernstein relation, with the quotient expanded as a finite sum.
    pub fn bernstein_residual(&self, lam: &Coweight, i: usize) -> Result<HeckeElement, HeckeError> {
        let rs = self.aw.root_system();
        rs.check_rank(lam)?;
        assert!(i >= 1 && i <= rs.rank, "finite generator");
        let k = i - 1;
        let slam = rs.reflect_simple(lam, k);
        let x = self.x_lambda(lam)?;
        let lhs = self.right_mul_gen(&x, i).sub(&self.mul(&self.basis(self.aw.generator(i)), &self.x_lambda(&slam)?)?);

        let aidx = rs.simple_root_index(k);
        let coroot = *rs.coroot(aidx);
        let pairing = lam.get(k);
        // (x^λ − x^{s_iλ}) / (1 − x^{−α_i^∨}) as a finite sum.
        let mut geo: Vec<(Coweight, i32)> = Vec::new();
        if pairing > 0 {
            for j in 0..pairing {
                geo.push((lam.sub(&coroot.scale(j)), 1));
            }
        } else {
            for j in 1..=-pairing {
                geo.push((lam.add(&coroot.scale(j)), -1));
            }
        }
        let one = LaurentPoly::one(&self.vars);
        let qi = &self.q[i];
        let qinv = qi.monomial_inverse().expect("monomial");
        let base = &one - &qinv;
        let bc_case = rs.has_double(aidx);
        let mut rhs = HeckeElement::zero();
        for (mu, sign) in &geo {
            let s = LaurentPoly::from_int(&self.vars, *sign as i64);
            rhs = rhs.add(&self.x_lambda(mu)?.scale(&(&base * &s)));
            if bc_case {
                // Extra term u_n⁻¹(u₀ − u₀⁻¹) x^{−(2α_n)^∨}.
                let half = *rs.coroot(rs.root_index(&rs.root(aidx).map(|x| 2 * x)).unwrap());
                let un = LaurentPoly::u(&self.vars, self.aw.var_index(i, self.mode), -1);
                let v0 = self.aw.var_index(0, self.mode);
                let u0 = &LaurentPoly::u(&self.vars, v0, 1) - &LaurentPoly::u(&self.vars, v0, -1);
                let c = &(&un * &u0) * &s;
                rhs = rhs.add(&self.x_lambda(&mu.sub(&half))?.scale(&c));
            }
        }
        Ok(lhs.sub(&rhs))
    }

    /// E₀ T_{t_λ} E₀ with E₀ = Σ_{w∈W₀} q_w T_w, so 𝟙₀T_{t_λ}𝟙₀ = this / W₀(q)².
    pub fn satake_product(&self, lam: &Coweight) -> Result<ScaledElement, HeckeError> {
        self.aw.root_system().check_rank(lam)?;
        if !lam.is_dominant() {
            return Err(RootError::NotDominant(lam.to_string()).into());
        }
        let e0 = self.idempotent(0)?;
        let t = self.aw.translation(lam);
        let left = self.right_mul_basis(&e0.num, &t)?;
        let num = self.mul(&left, &e0.num)?;
        Ok(ScaledElement { num, den: &e0.den * &e0.den })
    }

    /// W_{0λ}(q) Σ_{w ∈ W₀t_λW₀} q_w T_w − q_{w_λ} E₀T_{t_λ}E₀.
    pub fn double_coset_identity_residual(&self, lam: &Coweight) -> Result<HeckeElement, HeckeError> {
        let aw = &self.aw;
        let fin: Vec<usize> = (1..=aw.rank()).collect();
        let (set, _) = aw.double_coset(&fin, &aw.translation(lam), &fin)?;
        let mut lhs = HeckeElement::zero();
        for w in &set {
            lhs.add_term(*w, &aw.q_w(w, self.mode));
        }
        let stab: Vec<AffineElement> =
            aw.root_system().stabilizer_subgroup(lam)?.0.into_iter().map(|x| aw.finite(x)).collect();
        let w0l = aw.poincare_polynomial(&stab, self.mode);
        let wl = aw.w_lambda(lam)?;
        let sat = self.satake_product(lam)?;
        Ok(lhs.scale(&w0l).sub(&sat.num.scale(&aw.q_w(&wl.w, self.mode))))
    }

    /// d′-constants as polynomials in t_c = q_c − 1; requires the `T′` basis.
    pub fn structure_d_prime(
        &self,
        w1: &AffineElement,
        w2: &AffineElement,
    ) -> Result<Vec<(AffineElement, ShiftedPoly)>, HeckeError> {
        assert_eq!(self.norm, Normalization::TPrime);
        let mut out = Vec::new();
        for (w, c) in self.structure_constants(w1, w2)? {
            out.push((w, ShiftedPoly::from_laurent(&c)?));
        }
        Ok(out)
    }

    /// The chamber-operator constants are the d-constants of the `T` basis.
    pub fn b_constants(
        &self,
        w1: &AffineElement,
        w2: &AffineElement,
    ) -> Result<Vec<(AffineElement, LaurentPoly)>, HeckeError> {
        assert_eq!(self.norm, Normalization::T);
        self.structure_constants(w1, w2)
    }

    pub fn format(&self, h: &HeckeElement) -> String {
        let mut terms = h.sorted();
        terms.sort_by_key(|(w, _)| (self.aw.length(w), *w));
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(w, c)| {
                let word = self.decompose(w);
                let mut label: Vec<String> = word.0.iter().map(|i| i.to_string()).collect();
                if word.1 != self.aw.identity() {
                    label.push(format!("g{}", self.aw.root_system().type_of(&word.1.trans)));
                }
                let basis = format!("T[{}]", label.join(","));
                if c.is_one() {
                    basis
                } else {
                    format!("({})*{}", c, basis)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{parse_descriptor, RootSystem};

    pub(crate) fn algebra(s: &str, mode: ClassMode, norm: Normalization) -> HeckeAlgebra {
        let (k, n) = parse_descriptor(s).unwrap();
        let aw = AffineWeyl::new(Arc::new(RootSystem::new(k, n).unwrap())).unwrap();
        HeckeAlgebra::new(Arc::new(aw), mode, norm)
    }

    #[test]
    fn quadratic_relation() {
        let h = algebra("BC1", ClassMode::Extended, Normalization::T);
        let s = h.affine().generator(1);
        let p = h.mul_basis(&s, &s).unwrap();
        assert_eq!(h.format(&p), "(q1^-1)*T[] + (1 - q1^-1)*T[1]");
    }

    #[test]
    fn length_additive_product() {
        let h = algebra("C2", ClassMode::Extended, Normalization::T);
        let a = h.affine();
        let w1 = a.from_word(&[0, 1]);
        let w2 = a.from_word(&[2, 1]);
        assert_eq!(a.length(&a.compose(&w1, &w2)), 4);
        assert_eq!(h.mul_basis(&w1, &w2).unwrap(), h.basis(a.compose(&w1, &w2)));
    }

    #[test]
    fn length_zero_inverse_pair() {
        let h = algebra("C2", ClassMode::Extended, Normalization::T);
        let a = h.affine();
        let g = a.g(2);
        let p = h.mul_basis(&g, &a.inverse(&g)).unwrap();
        assert_eq!(p, h.one());
    }

    #[test]
    fn idempotent_bc1() {
        let h = algebra("BC1", ClassMode::Extended, Normalization::T);
        let e = h.idempotent(0).unwrap();
        assert_eq!(h.format(&e.num), "T[] + (q1)*T[1]");
        assert_eq!(e.den.to_string(), "q1 + 1");
        let sq = h.mul(&e.num, &e.num).unwrap();
        assert_eq!(sq, e.num.scale(&e.den));
    }

    #[test]
    fn idempotent_absorbs_a2() {
        let h = algebra("A2", ClassMode::Extended, Normalization::T);
        let e = h.idempotent(0).unwrap();
        let sq = h.mul(&e.num, &e.num).unwrap();
        assert_eq!(sq, e.num.scale(&e.den));
        let s1 = h.basis(h.affine().generator(1));
        assert_eq!(h.mul(&e.num, &s1).unwrap(), e.num);
        assert_eq!(h.mul(&s1, &e.num).unwrap(), e.num);
    }

    #[test]
    fn x_lambda_bc1() {
        let h = algebra("BC1", ClassMode::Extended, Normalization::T);
        let x = h.x_lambda(&Coweight::new(&[1])).unwrap();
        assert_eq!(h.format(&x), "(u0*u1)*T[0,1]");
        let y = h.x_lambda(&Coweight::new(&[-1])).unwrap();
        assert_eq!(h.mul(&x, &y).unwrap(), h.one());
        assert_eq!(h.x_lambda(&Coweight::zero(1)).unwrap(), h.one());
    }

    #[test]
    fn bernstein_small_cases() {
        let h = algebra("A2", ClassMode::Extended, Normalization::T);
        assert!(h.bernstein_residual(&Coweight::new(&[1, 0]), 1).unwrap().is_zero());
        assert!(h.bernstein_residual(&Coweight::new(&[1, 0]), 2).unwrap().is_zero());
        let b = algebra("BC1", ClassMode::Extended, Normalization::T);
        for k in -2..=2 {
            assert!(b.bernstein_residual(&Coweight::new(&[k]), 1).unwrap().is_zero(), "{}", k);
        }
    }

    #[test]
    fn double_coset_identity_bc1() {
        let h = algebra("BC1", ClassMode::Extended, Normalization::T);
        assert!(h.double_coset_identity_residual(&Coweight::new(&[1])).unwrap().is_zero());
        let sat = h.satake_product(&Coweight::new(&[1])).unwrap();
        assert_eq!(sat.num.len(), 4);
    }

    #[test]
    fn d_prime_descent_case() {
        let h = algebra("BC1", ClassMode::W, Normalization::TPrime);
        let a = h.affine();
        let w = a.from_word(&[0, 1]);
        let s = a.generator(1);
        let d = h.structure_d_prime(&w, &s).unwrap();
        let strs: Vec<String> = d.iter().map(|(x, p)| format!("{}:{}", a.format(x), p)).collect();
        assert_eq!(strs.len(), 2);
        assert!(d.iter().all(|(_, p)| p.assert_nonneg_integer_coeffs()));
        let ws = a.compose(&w, &s);
        let find = |x: &AffineElement| d.iter().find(|(y, _)| y == x).unwrap().1.to_string();
        assert_eq!(find(&ws), "t1 + 1");
        assert_eq!(find(&w), "t1");
    }
}
