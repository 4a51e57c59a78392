use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::laurent::{LaurentPoly, Vars};
use super::rational::Rational;
use super::CoeffError;

/// Reduced quotient of Laurent polynomials.
///
/// The denominator is kept in unit-normal form (a polynomial not divisible
/// by any variable, coprime integer coefficients, positive leading
/// coefficient) and shares no factor with the numerator, so structural
/// equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Frac {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        num.check_vars(&den).expect("fraction variables differ");
        if num.is_zero() {
            let one = LaurentPoly::one(num.vars());
            return Frac { num, den: one };
        }
        let g = LaurentPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let (c, m, den) = den.unit_normal();
        let num = num.mul_term(&m.neg(), &c.recip());
        Frac { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Frac {
        let one = LaurentPoly::one(p.vars());
        Frac { num: p, den: one }
    }

    pub fn zero(vars: &Vars) -> Frac {
        Frac::from_poly(LaurentPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Frac {
        Frac::from_poly(LaurentPoly::one(vars))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn recip(&self) -> Frac {
        assert!(!self.is_zero(), "reciprocal of zero");
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Frac {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let e = e.unsigned_abs();
        Frac { num: base.num.pow(e), den: base.den.pow(e) }.renormalize()
    }

    fn renormalize(self) -> Frac {
        if self.den.is_one() {
            self
        } else {
            Frac::new(self.num, self.den)
        }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Frac {
        Frac::new(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &LaurentPoly) -> Frac {
        Frac::new(self.num.clone(), &self.den * p)
    }

    pub fn eval_q(&self, q: &[Rational]) -> Result<Rational, CoeffError> {
        let d = self.den.eval_q(q)?;
        if d.is_zero() {
            return Err(CoeffError::Domain("denominator vanishes".into()));
        }
        Ok(self.num.eval_q(q)? / d)
    }

    pub fn is_q_pure(&self) -> bool {
        self.num.is_q_pure() && self.den.is_q_pure()
    }
}

impl<'a> Add<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn add(self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac { num: &self.num + &o.num, den: self.den.clone() }.renormalize();
        }
        let g = LaurentPoly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        Frac::new(&(&self.num * &b) + &(&o.num * &a), &self.den * &b)
    }
}

impl<'a> Sub<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn sub(self, o: &Frac) -> Frac {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn mul(self, o: &Frac) -> Frac {
        if self.den.is_one() && o.den.is_one() {
            return Frac::from_poly(&self.num * &o.num);
        }
        let g1 = LaurentPoly::gcd(&self.num, &o.den);
        let g2 = LaurentPoly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let (c, m, den) = (&d1 * &d2).unit_normal();
        Frac { num: (&n1 * &n2).mul_term(&m.neg(), &c.recip()), den }
    }
}

impl<'a> Div<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn div(self, o: &Frac) -> Frac {
        self * &o.recip()
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.is_q_pure() {
            write!(f, "({})/({})", self.num.to_q_string(), self.den.to_q_string())
        } else {
            write!(f, "({})/({})", self.num.to_u_string(), self.den.to_u_string())
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse::parse_frac;

    #[test]
    fn canonical_reduction() {
        let v = Vars::new(["0"]);
        let a = parse_frac("(q0^2 - 1)/(2*q0^2 + 2*q0)", &v).unwrap();
        let b = parse_frac("(q0 - 1)/(2*q0)", &v).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2 - 1/2*q0^-1");
    }

    #[test]
    fn one_over_q_plus_one() {
        let v = Vars::new(["0"]);
        let a = parse_frac("1/(q0+1)", &v).unwrap();
        let b = parse_frac("q0/(q0+1)", &v).unwrap();
        assert!((&a + &b).to_poly().unwrap().is_one());
        assert_eq!(a.eval_q(&[2.into()]).unwrap(), Rational::new(1, 3));
        assert_eq!(a.to_string(), "(1)/(q0 + 1)");
    }
}
