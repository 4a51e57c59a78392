use std::collections::BTreeMap;
use std::fmt;

use super::laurent::{LaurentPoly, Mono, Vars};
use super::rational::Rational;
use super::CoeffError;

/// Polynomial in the shifted variables `t_k = q_k - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct ShiftedPoly {
    vars: Vars,
    terms: Vec<(Mono, Rational)>,
}

fn binomial_row(n: i32) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 1..=n {
        let prev = row[(k - 1) as usize].clone();
        row.push(prev * Rational::from_int((n - k + 1) as i64) / Rational::from_int(k as i64));
    }
    row
}

impl ShiftedPoly {
    pub fn from_laurent(p: &LaurentPoly) -> Result<ShiftedPoly, CoeffError> {
        if !p.is_q_pure() {
            return Err(CoeffError::Domain(format!("not q-pure: {}", p.to_u_string())));
        }
        if !p.is_polynomial() {
            return Err(CoeffError::Domain(format!("negative exponent: {}", p)));
        }
        let n = p.nvars();
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m.half().expect("q-pure");
            // expand prod_k (t_k + 1)^{e_k}
            let mut partial: Vec<(Mono, Rational)> = vec![(Mono::ONE, c.clone())];
            for k in 0..n {
                let ek = e.0[k];
                if ek == 0 {
                    continue;
                }
                let row = binomial_row(ek);
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (pm, pc) in &partial {
                    for (j, b) in row.iter().enumerate() {
                        let mut m2 = *pm;
                        m2.0[k] += j as i32;
                        next.push((m2, pc * b));
                    }
                }
                partial = next;
            }
            for (m2, c2) in partial {
                let slot = acc.entry(m2).or_insert_with(Rational::zero);
                *slot = &*slot + &c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(ShiftedPoly { vars: p.vars().clone(), terms })
    }

    /// Substitute back `t_k = q_k - 1`.
    pub fn to_laurent(&self) -> LaurentPoly {
        let vars = &self.vars;
        let one = LaurentPoly::one(vars);
        let mut total = LaurentPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(vars, c.clone());
            for k in 0..vars.len() {
                if m.0[k] > 0 {
                    let tk = &LaurentPoly::q(vars, k, 1) - &one;
                    t = &t * &tk.pow(m.0[k] as u32);
                }
            }
            total = &total + &t;
        }
        total
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every coefficient is a nonnegative integer.
    pub fn assert_nonneg_integer_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer() && !c.is_negative())
    }

    pub fn eval_t(&self, t: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut x = c.clone();
            for (k, tk) in t.iter().enumerate() {
                if m.0[k] != 0 {
                    x = &x * &tk.pow(m.0[k]);
                }
            }
            total = &total + &x;
        }
        total
    }
}

impl fmt::Display for ShiftedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = super::parse::format_terms(self.terms.iter().rev().map(|(m, c)| (*m, c)), self.vars.labels(), "t", 1);
        write!(f, "{}", s)
    }
}

impl fmt::Debug for ShiftedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
