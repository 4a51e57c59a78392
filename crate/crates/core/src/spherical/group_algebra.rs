use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::coeff::{LaurentPoly, Mono, Rational};
use crate::rootdata::{Coweight, RootSystem, WeylElement, WeylGroup};

/// Finite sum Σ c_μ x^μ over μ ∈ P.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    terms: FxHashMap<Coweight, LaurentPoly>,
}

fn add_into(map: &mut FxHashMap<Coweight, LaurentPoly>, k: Coweight, c: &LaurentPoly) {
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

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(mu: Coweight, c: LaurentPoly) -> Self {
        let mut g = Self::zero();
        add_into(&mut g.terms, mu, &c);
        g
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

    pub fn coeff(&self, mu: &Coweight) -> Option<&LaurentPoly> {
        self.terms.get(mu)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coweight, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn sorted(&self) -> Vec<(Coweight, LaurentPoly)> {
        let b: BTreeMap<Coweight, LaurentPoly> = self.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        b.into_iter().collect()
    }

    pub fn add_term(&mut self, mu: Coweight, c: &LaurentPoly) {
        add_into(&mut self.terms, mu, c);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            add_into(&mut r.terms, *k, v);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            add_into(&mut r.terms, *k, &-v);
        }
        r
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut r = Self::zero();
        if c.is_zero() {
            return r;
        }
        for (k, v) in &self.terms {
            add_into(&mut r.terms, *k, &(v * c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                add_into(&mut r.terms, a.add(b), &(x * y));
            }
        }
        r
    }

    /// Multiply by (c·x^β − 1), c a u-monomial.
    pub fn mul_binomial(&self, c: &Mono, beta: &Coweight) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            add_into(&mut r.terms, a.add(beta), &x.mul_term(c, &Rational::one()));
            add_into(&mut r.terms, *a, &-x);
        }
        r
    }

    /// w(x^μ) = x^{wμ}.
    pub fn act(&self, w: &WeylGroup, e: WeylElement) -> Self {
        let mut r = Self::zero();
        for (k, v) in &self.terms {
            add_into(&mut r.terms, w.act(e, k), v);
        }
        r
    }

    /// Invariance under every simple reflection.
    pub fn is_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank).all(|i| {
            self.terms.iter().all(|(k, v)| self.terms.get(&rs.reflect_simple(k, i)) == Some(v))
        })
    }

    /// Evaluate the coefficients at q-values.
    pub fn eval_q(&self, q: &[Rational]) -> Result<BTreeMap<Coweight, Rational>, crate::coeff::CoeffError> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.terms {
            let x = v.eval_q(q)?;
            if !x.is_zero() {
                out.insert(*k, x);
            }
        }
        Ok(out)
    }

    /// Exact quotient by (c·x^β − 1); `None` if the division leaves a remainder.
    pub fn div_binomial(&self, c: &Mono, beta: &Coweight, phi: &Phi) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let pb = phi.eval(beta);
        assert!(pb != 0, "functional vanishes on a divisor exponent");
        if pb < 0 {
            // c x^β − 1 = −c x^β (c⁻¹ x^{−β} − 1).
            let q = self.div_binomial(&c.neg(), &beta.neg(), phi)?;
            let mut r = Self::zero();
            let cinv = c.neg();
            for (k, v) in &q.terms {
                add_into(&mut r.terms, k.sub(beta), &-&v.mul_term(&cinv, &Rational::one()));
            }
            return Some(r);
        }
        let mut rem: BTreeMap<i128, (Coweight, LaurentPoly)> =
            self.terms.iter().map(|(k, v)| (phi.eval(k), (*k, v.clone()))).collect();
        let floor = *rem.keys().next().unwrap();
        let cinv = c.neg();
        let mut quot = Self::zero();
        while let Some((top, (gamma, coef))) = rem.pop_last() {
            if top - pb < floor {
                return None;
            }
            let e = gamma.sub(beta);
            let qc = coef.mul_term(&cinv, &Rational::one());
            // rem −= qc·x^e·(c x^β − 1): the top term cancels and qc·x^e is added.
            let pe = phi.eval(&e);
            match rem.get_mut(&pe) {
                Some((_, v)) => {
                    *v = &*v + &qc;
                    if v.is_zero() {
                        rem.remove(&pe);
                    }
                }
                None => {
                    rem.insert(pe, (e, qc.clone()));
                }
            }
            add_into(&mut quot.terms, e, &qc);
        }
        Some(quot)
    }
}

/// Linear functional on P, injective on the coweights that occur.
pub struct Phi {
    weights: Vec<i128>,
}

impl Phi {
    pub fn new(rank: usize) -> Phi {
        Phi { weights: (0..rank).map(|i| 1009i128.pow(i as u32)).collect() }
    }

    pub fn eval(&self, mu: &Coweight) -> i128 {
        self.weights.iter().enumerate().map(|(i, w)| w * mu.get(i) as i128).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Vars;

    #[test]
    fn binomial_division_round_trip() {
        let v = Vars::new(["0"]);
        let phi = Phi::new(2);
        let one = LaurentPoly::one(&v);
        let f = GroupAlgebraElement::monomial(Coweight::new(&[1, 0]), one.clone())
            .add(&GroupAlgebraElement::monomial(Coweight::new(&[-1, 2]), LaurentPoly::u(&v, 0, 3)));
        for (c, b) in [(Mono::unit(0, 1), [2, -1]), (Mono::unit(0, -2), [-1, 0]), (Mono::ONE, [0, 1])] {
            let beta = Coweight::new(&b);
            let prod = f.mul_binomial(&c, &beta);
            assert_eq!(prod.div_binomial(&c, &beta, &phi).unwrap(), f);
        }
        assert!(f.div_binomial(&Mono::ONE, &Coweight::new(&[1, 0]), &phi).is_none());
    }
}
