use std::collections::BTreeMap;
use std::sync::Arc;

use super::{GroupAlgebraElement, Spherical, SphericalError};
use crate::affweyl::{AffineElement, ClassMode};
use crate::coeff::{Frac, LaurentPoly, Rational, ShiftedPoly};
use crate::hecke::HeckeElement;
use crate::rootdata::Coweight;

/// A polynomial expression of P_λ in the P_{λ_i}.
#[derive(Clone, Debug)]
pub struct GenerationResult {
    /// Exponent vector κ ↦ coefficient of ∏ P_{λ_i}^{κ_i}.
    pub coefficients: BTreeMap<Coweight, Frac>,
    /// Σ coefficients · products − P_λ recomputed independently is zero.
    pub residual_zero: bool,
}

/// Comparison of a_{λ,μ}² N_ν with N_{ν−μ} c_{λ,ν−μ;ν}² for one μ and two ν.
#[derive(Clone, Debug)]
pub struct ARelationReport {
    pub mu: Coweight,
    pub nu: Coweight,
    pub holds: bool,
    pub holds_next: bool,
}

impl Spherical {
    fn mono_poly(&self, m: crate::coeff::Mono) -> LaurentPoly {
        LaurentPoly::monomial(&self.vars, m, Rational::one())
    }

    /// Triangular elimination of num/den against a family `basis(ν)` whose
    /// dominance-maximal term is x^ν.
    fn eliminate<F>(
        &self,
        num: &GroupAlgebraElement,
        den: &LaurentPoly,
        basis: F,
    ) -> Result<BTreeMap<Coweight, Frac>, SphericalError>
    where
        F: Fn(&Coweight) -> Result<Arc<GroupAlgebraElement>, SphericalError>,
    {
        if !num.is_invariant(&self.rs) {
            return Err(SphericalError::NotInvariant);
        }
        let mut num = num.clone();
        let mut den = den.clone();
        let mut out: BTreeMap<Coweight, Frac> = BTreeMap::new();
        let mut steps = 0usize;
        while !num.is_zero() {
            steps += 1;
            if steps > 100_000 {
                return Err(SphericalError::Internal("expansion does not terminate".into()));
            }
            let top = num
                .iter()
                .filter(|(k, _)| k.is_dominant())
                .map(|(k, _)| *k)
                .max_by(|a, b| self.height(a).cmp(&self.height(b)).then(a.cmp(b)))
                .ok_or(SphericalError::NotInvariant)?;
            let coef = num.coeff(&top).unwrap().clone();
            let p = basis(&top)?;
            let lead = p
                .coeff(&top)
                .ok_or_else(|| SphericalError::Internal(format!("basis element {} lacks its leading term", top)))?
                .clone();
            let e = Frac::new(coef.clone(), &den * &lead);
            let slot = out.entry(top).or_insert_with(|| Frac::zero(&self.vars));
            *slot = &*slot + &e;
            if let Some(k) = coef.div_exact(&lead) {
                num = num.sub(&p.scale(&k));
            } else {
                num = num.scale(&lead).sub(&p.scale(&coef));
                den = &den * &lead;
                let mut g = den.clone();
                for (_, c) in num.iter() {
                    if g.is_constant() {
                        break;
                    }
                    g = LaurentPoly::gcd(&g, c);
                }
                if !g.is_constant() {
                    let mut reduced = GroupAlgebraElement::zero();
                    for (k, c) in num.iter() {
                        reduced.add_term(*k, &c.div_exact(&g).unwrap());
                    }
                    num = reduced;
                    den = den.div_exact(&g).unwrap();
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub(super) fn eliminate_ptilde(
        &self,
        num: &GroupAlgebraElement,
        den: &LaurentPoly,
    ) -> Result<BTreeMap<Coweight, Frac>, SphericalError> {
        self.eliminate(num, den, |nu| self.ptilde(nu))
    }

    /// c_{λ,μ;ν} for all ν, from the expansion of P_λ P_μ.
    pub fn c_via_symmetric(&self, lam: &Coweight, mu: &Coweight) -> Result<BTreeMap<Coweight, Frac>, SphericalError> {
        let prod = self.ptilde(lam)?.mul(&*self.ptilde(mu)?);
        let e = self.eliminate_ptilde(&prod, &LaurentPoly::one(&self.vars))?;
        let top = lam.add(mu);
        let mut out = BTreeMap::new();
        for (nu, c) in e {
            if !self.rs.dominance_leq(&nu, &top) {
                return Err(SphericalError::Internal(format!("c_{{{},{};{}}} outside the dominance cone", lam, mu, nu)));
            }
            let m = self.q_half(&nu).sub(&self.q_half(lam)).sub(&self.q_half(mu));
            out.insert(nu, c.scale_poly(&self.mono_poly(m)).div_poly(&self.w0_poly));
        }
        Ok(out)
    }

    /// Σ_{w₁ ∈ W₀w_λW_l} T′_{w₁} · Σ_y T′_y, y over minimal left W_l-coset
    /// representatives of W_l σ_l(w_μ) W_n, with n = σ_l(τ(μ)).
    pub fn hecke_route_product(&self, lam: &Coweight, mu: &Coweight) -> Result<Arc<HeckeElement>, SphericalError> {
        self.check_dominant(lam)?;
        self.check_dominant(mu)?;
        if let Some(h) = self.hecke_route.read().unwrap().get(&(*lam, *mu)) {
            return Ok(h.clone());
        }
        let aw = &self.aw;
        let wl = aw.w_lambda(lam)?;
        let wm = aw.w_lambda(mu)?;
        let l = wl.l;
        let n_type = aw.sigma(l)[wm.l];
        let fin: Vec<usize> = (1..=aw.rank()).collect();
        let (a_set, _) = aw.double_coset(&fin, &wl.w, &aw.cotype(l))?;
        let sm = aw.sigma_apply(l, &wm.w);
        let (b_set, _) = aw.double_coset(&aw.cotype(l), &sm, &aw.cotype(n_type))?;
        let reps = aw.min_left_reps(&b_set, &aw.cotype(l));
        let one = LaurentPoly::one(&self.vars);
        let mut sa = HeckeElement::zero();
        for w in &a_set {
            sa.add_term(*w, &one);
        }
        let mut y = HeckeElement::zero();
        for w in &reps {
            y.add_term(*w, &one);
        }
        let prod = Arc::new(self.hprime.mul(&sa, &y)?);
        self.hecke_route.write().unwrap().insert((*lam, *mu), prod.clone());
        Ok(prod)
    }

    /// The literal double sum Σ_{w₁,w₂} q_{w₁}q_{w₂}d_{w₁,w₂;w_ν}, kept as an
    /// independent check of `hecke_route_product`.
    pub fn hecke_double_sum(&self, lam: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<LaurentPoly, SphericalError> {
        let aw = &self.aw;
        let wl = aw.w_lambda(lam)?;
        let wm = aw.w_lambda(mu)?;
        let wn = aw.w_lambda(nu)?;
        let l = wl.l;
        let n_type = aw.sigma(l)[wm.l];
        let zero = LaurentPoly::zero(&self.vars);
        if wn.l != n_type || !self.rs.in_coroot_lattice(&lam.add(mu).sub(nu)) {
            return Ok(zero);
        }
        let fin: Vec<usize> = (1..=aw.rank()).collect();
        let (a_set, _) = aw.double_coset(&fin, &wl.w, &aw.cotype(l))?;
        let (b_set, _) = aw.double_coset(&aw.cotype(l), &aw.sigma_apply(l, &wm.w), &aw.cotype(n_type))?;
        let mut acc = zero;
        for w1 in &a_set {
            let left = self.hecke.basis(*w1);
            for w2 in &b_set {
                let p = self.hecke.right_mul_basis(&left, w2)?;
                if let Some(d) = p.coeff(&wn.w) {
                    let qq = &aw.q_w(w1, ClassMode::Extended) * &aw.q_w(w2, ClassMode::Extended);
                    acc = &acc + &(&qq * d);
                }
            }
        }
        Ok(acc)
    }

    /// c′_{λ,μ;ν} from the Hecke route, as a Laurent polynomial.
    pub fn c_prime_raw(&self, lam: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<LaurentPoly, SphericalError> {
        self.check_dominant(nu)?;
        let zero = LaurentPoly::zero(&self.vars);
        if !self.rs.in_coroot_lattice(&lam.add(mu).sub(nu)) {
            return Ok(zero);
        }
        let prod = self.hecke_route_product(lam, mu)?;
        let wn: AffineElement = self.aw.w_lambda(nu)?.w;
        Ok(prod.coeff(&wn).cloned().unwrap_or(zero))
    }

    /// W_{0λ}W_{0μ}q_{w_ν} / (W_{0ν}W₀ q_{w_λ}q_{w_μ}), the factor with c = factor · c′.
    pub fn c_prime_factor(&self, lam: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<Frac, SphericalError> {
        let num = &(&self.stabilizer_poly(lam)? * &self.stabilizer_poly(mu)?) * &self.q_w_lambda(nu)?;
        let den = &(&(&self.stabilizer_poly(nu)? * &self.w0_poly) * &self.q_w_lambda(lam)?) * &self.q_w_lambda(mu)?;
        Ok(Frac::new(num, den))
    }

    pub fn c_via_hecke(&self, lam: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<Frac, SphericalError> {
        let cp = self.c_prime_raw(lam, mu, nu)?;
        Ok(self.c_prime_factor(lam, mu, nu)?.scale_poly(&cp))
    }

    /// c′ = c / factor.
    pub fn c_prime_from_c(&self, lam: &Coweight, mu: &Coweight, nu: &Coweight, c: &Frac) -> Result<Frac, SphericalError> {
        Ok(c / &self.c_prime_factor(lam, mu, nu)?)
    }

    /// c′_{λ,μ;ν} in the variables t_c = q_c − 1; errors unless every
    /// coefficient is a nonnegative integer.
    pub fn c_prime(&self, lam: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<ShiftedPoly, SphericalError> {
        let raw = self.c_prime_raw(lam, mu, nu)?;
        let s = ShiftedPoly::from_laurent(&raw)?;
        if !s.assert_nonneg_integer_coeffs() {
            return Err(SphericalError::Internal(format!("c′_{{{},{};{}}} = {} fails positivity", lam, mu, nu, s)));
        }
        Ok(s)
    }

    /// N_λ = W₀(q) q_{w_λ} / W_{0λ}(q).
    pub fn n_lambda(&self, lam: &Coweight) -> Result<LaurentPoly, SphericalError> {
        self.check_dominant(lam)?;
        let num = &self.w0_poly * &self.q_w_lambda(lam)?;
        num.div_exact(&self.stabilizer_poly(lam)?)
            .ok_or_else(|| SphericalError::Internal(format!("N_{} is not a polynomial", lam)))
    }

    /// a_{λ,μ} with P_λ = Σ_μ a_{λ,μ} m_μ.
    pub fn a_coeffs(&self, lam: &Coweight) -> Result<BTreeMap<Coweight, Frac>, SphericalError> {
        let (num, den) = self.macdonald_p(lam)?;
        let mut out = BTreeMap::new();
        for (mu, c) in num.sorted() {
            if mu.is_dominant() {
                out.insert(mu, Frac::new(c, den.clone()));
            }
        }
        Ok(out)
    }

    /// For each μ with a_{λ,μ} ≠ 0, test a_{λ,μ}² N_ν = N_{ν−μ} c_{λ,ν−μ;ν}² at
    /// ν = K·Σλ_i with K = 1 + ht(λ), and again at K + 1.
    pub fn a_relation_report(&self, lam: &Coweight) -> Result<Vec<ARelationReport>, SphericalError> {
        let a = self.a_coeffs(lam)?;
        let ht = self.rs.coroot_coords(lam).into_iter().fold(Rational::zero(), |x, y| x + y);
        let k = ht.to_f64().ceil() as i32 + 1;
        let n = self.rs.rank;
        let mut out = Vec::new();
        for (mu, amu) in &a {
            let check = |kk: i32| -> Result<(Coweight, bool), SphericalError> {
                let nu = Coweight::new(&vec![kk; n]);
                let base = nu.sub(mu);
                let c = self.c_via_symmetric(lam, &base)?.get(&nu).cloned().unwrap_or_else(|| Frac::zero(&self.vars));
                let lhs = (amu * amu).scale_poly(&self.n_lambda(&nu)?);
                let rhs = (&c * &c).scale_poly(&self.n_lambda(&base)?);
                Ok((nu, lhs == rhs))
            };
            let (nu, holds) = check(k)?;
            let (_, holds_next) = check(k + 1)?;
            out.push(ARelationReport { mu: *mu, nu, holds, holds_next });
        }
        Ok(out)
    }

    fn product_of_fundamentals(&self, kappa: &Coweight) -> Result<Arc<GroupAlgebraElement>, SphericalError> {
        let n = self.rs.rank;
        let mut acc = GroupAlgebraElement::monomial(Coweight::zero(n), LaurentPoly::one(&self.vars));
        for i in 0..n {
            let p = self.ptilde(&Coweight::fundamental(n, i + 1))?;
            for _ in 0..kappa.get(i) {
                acc = acc.mul(&p);
            }
        }
        Ok(Arc::new(acc))
    }

    /// P_λ as a polynomial in P_{λ_1}, …, P_{λ_n}, by triangular descent.
    pub fn generation(&self, lam: &Coweight) -> Result<GenerationResult, SphericalError> {
        let target = self.ptilde(lam)?;
        let one = LaurentPoly::one(&self.vars);
        let e = self.eliminate(&target, &one, |k| self.product_of_fundamentals(k))?;

        // Recompose with a common denominator and compare.
        let mut d = one.clone();
        for c in e.values() {
            let g = LaurentPoly::gcd(&d, c.den());
            d = &d * &c.den().div_exact(&g).unwrap();
        }
        let mut total = target.scale(&-&d);
        for (kappa, c) in &e {
            let scale = &c.num().clone() * &d.div_exact(c.den()).unwrap();
            total = total.add(&self.product_of_fundamentals(kappa)?.scale(&scale));
        }

        // Rescale from the P̃ to the P normalization.
        let n = self.rs.rank;
        let coefficients = e
            .into_iter()
            .map(|(kappa, c)| {
                let mut m = self.q_half(lam).neg();
                let mut w = LaurentPoly::one(&self.vars);
                for i in 0..n {
                    let fi = Coweight::fundamental(n, i + 1);
                    m = m.add(&self.q_half(&fi).scale(kappa.get(i)));
                    w = &w * &self.w0_poly.pow(kappa.get(i) as u32);
                }
                let c = c.scale_poly(&self.mono_poly(m)).scale_poly(&w).div_poly(&self.w0_poly);
                (kappa, c)
            })
            .collect();
        Ok(GenerationResult { coefficients, residual_zero: total.is_zero() })
    }
}
