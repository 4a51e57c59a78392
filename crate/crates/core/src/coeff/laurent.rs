use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::rational::Rational;
use super::CoeffError;

pub const MAX_VARS: usize = 4;

/// Exponent vector; unused trailing slots stay zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Mono(pub [i32; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn unit(k: usize, e: i32) -> Mono {
        let mut m = [0; MAX_VARS];
        m[k] = e;
        Mono(m)
    }

    pub fn add(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Mono(m)
    }

    pub fn sub(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a -= b;
        }
        Mono(m)
    }

    pub fn neg(&self) -> Mono {
        Mono(self.0.map(|x| -x))
    }

    pub fn scale(&self, k: i32) -> Mono {
        Mono(self.0.map(|x| x * k))
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(m)
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|x| x % 2 == 0)
    }

    pub fn half(&self) -> Option<Mono> {
        if self.is_even() {
            Some(Mono(self.0.map(|x| x / 2)))
        } else {
            None
        }
    }

    /// Componentwise `self <= o`.
    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|x| *x >= 0)
    }
}

/// Ordered list of variable labels shared by a family of polynomials.
/// Variable `k` prints as `u{label}` (or `q{label}` for its square).
#[derive(Clone)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Vars {
        let v: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert!(v.len() <= MAX_VARS, "too many variables");
        Vars(Arc::new(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse multivariate Laurent polynomial with rational coefficients.
/// Terms are kept sorted by exponent vector (ascending lex), without zeros.
#[derive(Clone)]
pub struct LaurentPoly {
    vars: Vars,
    terms: Vec<(Mono, Rational)>,
}

fn normalize_terms(mut v: Vec<(Mono, Rational)>) -> Vec<(Mono, Rational)> {
    if v.len() > 1 {
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    }
    let mut out: Vec<(Mono, Rational)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> LaurentPoly {
        LaurentPoly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Vars) -> LaurentPoly {
        LaurentPoly::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> LaurentPoly {
        LaurentPoly::monomial(vars, Mono::ONE, c)
    }

    pub fn from_int(vars: &Vars, n: i64) -> LaurentPoly {
        LaurentPoly::constant(vars, Rational::from_int(n))
    }

    pub fn monomial(vars: &Vars, m: Mono, c: Rational) -> LaurentPoly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// `u_k^e`.
    pub fn u(vars: &Vars, k: usize, e: i32) -> LaurentPoly {
        assert!(k < vars.len(), "variable index out of range");
        LaurentPoly::monomial(vars, Mono::unit(k, e), Rational::one())
    }

    /// `q_k^e = u_k^{2e}`.
    pub fn q(vars: &Vars, k: usize, e: i32) -> LaurentPoly {
        LaurentPoly::u(vars, k, 2 * e)
    }

    pub fn from_terms(vars: &Vars, terms: Vec<(Mono, Rational)>) -> LaurentPoly {
        LaurentPoly { vars: vars.clone(), terms: normalize_terms(terms) }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Mono::ONE)
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Largest term in lex order.
    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.last()
    }

    /// All exponents even: expressible in the q variables alone.
    pub fn is_q_pure(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_even())
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonneg())
    }

    /// Componentwise minimum exponent (zero polynomial gives ONE).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn max_degree_in(&self, k: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.0[k]).max().unwrap_or(0)
    }

    pub fn check_vars(&self, other: &LaurentPoly) -> Result<(), CoeffError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(CoeffError::VariableMismatch(format!("{:?} vs {:?}", self.vars, other.vars)))
        }
    }

    pub fn try_add(&self, o: &LaurentPoly) -> Result<LaurentPoly, CoeffError> {
        self.check_vars(o)?;
        Ok(self.add_unchecked(o, false))
    }

    pub fn try_sub(&self, o: &LaurentPoly) -> Result<LaurentPoly, CoeffError> {
        self.check_vars(o)?;
        Ok(self.add_unchecked(o, true))
    }

    pub fn try_mul(&self, o: &LaurentPoly) -> Result<LaurentPoly, CoeffError> {
        self.check_vars(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn add_unchecked(&self, o: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LaurentPoly { vars: self.vars.clone(), terms: out }
    }

    fn mul_unchecked(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.terms.is_empty() || o.terms.is_empty() {
            return LaurentPoly::zero(&self.vars);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                v.push((ma.add(mb), ca * cb));
            }
        }
        LaurentPoly { vars: self.vars.clone(), terms: normalize_terms(v) }
    }

    /// Multiply by the single term `c * u^m`; order is preserved by shifting.
    pub fn mul_term(&self, m: &Mono, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.add(m), tc * c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn mul_mono(&self, m: &Mono) -> LaurentPoly {
        let terms = self.terms.iter().map(|(tm, tc)| (tm.add(m), tc.clone())).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        self.mul_term(&Mono::ONE, c)
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a monomial; `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = &self.terms[0];
        Some(LaurentPoly::monomial(&self.vars, m.neg(), c.recip()))
    }

    /// Square root of a monomial with even exponents and square coefficient.
    pub fn monomial_sqrt(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = &self.terms[0];
        Some(LaurentPoly::monomial(&self.vars, m.half()?, c.sqrt_exact()?))
    }

    /// Evaluate at values for the q variables (q_k = u_k^2).
    ///
    /// Odd exponents need a rational square root of the corresponding value;
    /// otherwise the result is `NeedsHalfPowers`.
    pub fn eval_q(&self, q: &[Rational]) -> Result<Rational, CoeffError> {
        if q.len() != self.nvars() {
            return Err(CoeffError::MissingVariable(format!(
                "expected {} values, got {}",
                self.nvars(),
                q.len()
            )));
        }
        for v in q {
            if !v.is_positive() {
                return Err(CoeffError::Domain(format!("parameter value {} is not positive", v)));
            }
        }
        let mut roots: Vec<Option<Rational>> = vec![None; q.len()];
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate().take(self.nvars()) {
                if e == 0 {
                    continue;
                }
                if e % 2 == 0 {
                    t = &t * &q[k].pow(e / 2);
                } else {
                    if roots[k].is_none() {
                        roots[k] = Some(q[k].sqrt_exact().ok_or_else(|| {
                            CoeffError::NeedsHalfPowers(format!(
                                "u{} needs sqrt({})",
                                self.vars.labels()[k],
                                q[k]
                            ))
                        })?);
                    }
                    t = &t * &roots[k].as_ref().unwrap().pow(e);
                }
            }
            total = &total + &t;
        }
        Ok(total)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent ring.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero(&self.vars));
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            return Some(self.mul_term(&m.neg(), &c.recip()));
        }
        let dm = d.min_mono();
        let fm = self.min_mono();
        let d0 = d.mul_mono(&dm.neg());
        let f0 = self.mul_mono(&fm.neg());
        let q0 = poly_div(&f0, &d0)?;
        Some(q0.mul_mono(&fm.sub(&dm)))
    }

    /// Multiply through so that coefficients are coprime integers with a
    /// positive leading coefficient; returns the scalar divided out.
    pub fn primitive(&self) -> (Rational, LaurentPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den = Rational::one();
        for (_, c) in &self.terms {
            den = Rational::int_lcm(&den, &Rational::from_bigint(c.denom()));
        }
        let mut num = Rational::zero();
        for (_, c) in &self.terms {
            let n = Rational::from_bigint(c.numer()) * &den / Rational::from_bigint(c.denom());
            num = Rational::int_gcd(&num, &n);
        }
        let mut unit = &num / &den;
        if self.terms.last().unwrap().1.is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        (unit, self.scale(&inv))
    }

    /// Split `self = unit * p` where `unit` is a rational times a monomial and
    /// `p` is a polynomial not divisible by any variable, with coprime integer
    /// coefficients and positive leading coefficient.
    pub fn unit_normal(&self) -> (Rational, Mono, LaurentPoly) {
        if self.is_zero() {
            return (Rational::one(), Mono::ONE, self.clone());
        }
        let m = self.min_mono();
        let shifted = self.mul_mono(&m.neg());
        let (c, p) = shifted.primitive();
        (c, m, p)
    }

    /// Greatest common divisor up to units (monomials and rationals),
    /// returned in unit-normal form.
    pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        if a.is_zero() {
            return b.unit_normal().2;
        }
        if b.is_zero() {
            return a.unit_normal().2;
        }
        let a0 = a.unit_normal().2;
        let b0 = b.unit_normal().2;
        if a0.is_one() || b0.is_one() {
            return LaurentPoly::one(&a.vars);
        }
        gcd_rec(&a0, &b0).unit_normal().2
    }

    /// Substitute `q_k = t_k + 1`. Requires a q-pure polynomial.
    pub fn to_shifted(&self) -> Result<super::shifted::ShiftedPoly, CoeffError> {
        super::shifted::ShiftedPoly::from_laurent(self)
    }

    /// Rename onto another variable list of the same arity.
    pub fn with_vars(&self, vars: &Vars) -> LaurentPoly {
        assert_eq!(vars.len(), self.vars.len());
        LaurentPoly { vars: vars.clone(), terms: self.terms.clone() }
    }
}

/// Polynomial long division in lex order; exact or `None`.
fn poly_div(f: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    let (ld, lc) = d.terms.last().cloned()?;
    let mut r: BTreeMap<Mono, Rational> = f.terms.iter().cloned().collect();
    let mut q = Vec::new();
    while let Some((m, c)) = r.iter().next_back().map(|(m, c)| (*m, c.clone())) {
        if !ld.divides(&m) {
            return None;
        }
        let qm = m.sub(&ld);
        let qc = &c / &lc;
        for (dm, dc) in &d.terms {
            let key = qm.add(dm);
            let delta = &qc * dc;
            let e = r.entry(key).or_insert_with(Rational::zero);
            *e = &*e - &delta;
            if e.is_zero() {
                r.remove(&key);
            }
        }
        q.push((qm, qc));
    }
    Some(LaurentPoly::from_terms(&f.vars, q))
}

fn main_var(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&k| a.max_degree_in(k) > 0 || b.max_degree_in(k) > 0)
}

/// Coefficients of `p` as a polynomial in `u_v`.
fn coeffs_in(p: &LaurentPoly, v: usize) -> Vec<LaurentPoly> {
    let deg = p.max_degree_in(v).max(0) as usize;
    let mut buckets: Vec<Vec<(Mono, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in &p.terms {
        let e = m.0[v] as usize;
        let mut m2 = *m;
        m2.0[v] = 0;
        buckets[e].push((m2, c.clone()));
    }
    buckets.into_iter().map(|t| LaurentPoly::from_terms(&p.vars, t)).collect()
}

fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g: Option<LaurentPoly> = None;
    for c in coeffs_in(p, v).into_iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.primitive().1,
            Some(g) => gcd_rec(&g, &c),
        });
        if g.as_ref().unwrap().is_constant() {
            break;
        }
    }
    g.unwrap_or_else(|| LaurentPoly::one(&p.vars))
}

fn lc_in(p: &LaurentPoly, v: usize) -> (i32, LaurentPoly) {
    let d = p.max_degree_in(v);
    let terms = p
        .terms
        .iter()
        .filter(|(m, _)| m.0[v] == d)
        .map(|(m, c)| {
            let mut m2 = *m;
            m2.0[v] = 0;
            (m2, c.clone())
        })
        .collect();
    (d, LaurentPoly::from_terms(&p.vars, terms))
}

fn prem(f: &LaurentPoly, g: &LaurentPoly, v: usize) -> LaurentPoly {
    let (dg, lcg) = lc_in(g, v);
    let mut r = f.clone();
    while !r.is_zero() && r.max_degree_in(v) >= dg {
        let (dr, lcr) = lc_in(&r, v);
        let shift = LaurentPoly::u(&r.vars, v, dr - dg);
        r = &(&lcg * &r) - &(&(&lcr * &shift) * g);
    }
    r
}

fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let v = match main_var(a, b) {
        None => return LaurentPoly::one(&a.vars),
        Some(v) => v,
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let (mut f, mut g) = if pa.max_degree_in(v) >= pb.max_degree_in(v) { (pa, pb) } else { (pb, pa) };
    let h = loop {
        if g.max_degree_in(v) == 0 {
            break LaurentPoly::one(&a.vars);
        }
        let r = prem(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        let cr = content_in(&r, v);
        let r = r.div_exact(&cr).expect("content divides").primitive().1;
        f = g;
        g = r;
    };
    let ch = content_in(&h, v);
    let h = h.div_exact(&ch).expect("content divides");
    (&c * &h).primitive().1
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl Hash for LaurentPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(o).expect("polynomial variable lists differ")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_sub(o).expect("polynomial variable lists differ")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_mul(o).expect("polynomial variable lists differ")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_u_string())
    }
}

impl fmt::Display for LaurentPoly {
    /// q-folded form when every exponent is even, u-form otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_q_pure() {
            write!(f, "{}", self.to_q_string())
        } else {
            write!(f, "{}", self.to_u_string())
        }
    }
}

impl LaurentPoly {
    pub fn to_u_string(&self) -> String {
        super::parse::format_terms(self.terms.iter().rev().map(|(m, c)| (*m, c)), self.vars.labels(), "u", 1)
    }

    /// Panics unless q-pure.
    pub fn to_q_string(&self) -> String {
        assert!(self.is_q_pure(), "not q-pure");
        super::parse::format_terms(self.terms.iter().rev().map(|(m, c)| (*m, c)), self.vars.labels(), "q", 2)
    }
}
