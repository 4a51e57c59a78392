//! Text form of polynomials.
//!
//! ```text
//! expr    = [sign] term { ("+" | "-") term } ;
//! term    = factor { ("*" | "/") factor } ;
//! factor  = primary [ "^" [ "-" ] digits ] ;
//! primary = number | var | "(" expr ")" ;
//! number  = digits ;
//! var     = ("u" | "q" | "t") label ;
//! ```
//!
//! `q<l>` stands for `u<l>^2` and `t<l>` for `q<l> - 1`.

use super::frac::Frac;
use super::laurent::{LaurentPoly, Mono, Vars};
use super::rational::Rational;
use super::CoeffError;

pub(crate) fn format_terms<'a>(
    terms: impl Iterator<Item = (Mono, &'a Rational)>,
    labels: &[String],
    prefix: &str,
    divisor: i32,
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let mut factors = Vec::new();
        for (k, label) in labels.iter().enumerate() {
            let e = m.0[k] / divisor;
            match e {
                0 => {}
                1 => factors.push(format!("{}{}", prefix, label)),
                _ => factors.push(format!("{}{}^{}", prefix, label, e)),
            }
        }
        let body = if factors.is_empty() {
            c.abs().to_string()
        } else if c.abs().is_one() {
            factors.join("*")
        } else {
            format!("{}*{}", c.abs(), factors.join("*"))
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(char, String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CoeffError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c == 'u' || c == 'q' || c == 't' {
            i += 1;
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if start == i {
                return Err(CoeffError::Parse(format!("variable '{}' without label", c)));
            }
            out.push(Tok::Var(c, chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CoeffError::Parse(format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(Rational),
    Var(char, String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, CoeffError> {
        let mut lhs = if self.eat('-') {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, CoeffError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, CoeffError> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(d)) => {
                    self.pos += 1;
                    let e: i32 = d.parse().map_err(|_| CoeffError::Parse(format!("bad exponent {}", d)))?;
                    Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(CoeffError::Parse("exponent expected".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Ast, CoeffError> {
        match self.peek().cloned() {
            Some(Tok::Num(d)) => {
                self.pos += 1;
                Ok(Ast::Num(d.parse().map_err(CoeffError::Parse)?))
            }
            Some(Tok::Var(c, l)) => {
                self.pos += 1;
                Ok(Ast::Var(c, l))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(CoeffError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(CoeffError::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast, CoeffError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CoeffError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

fn var_poly(vars: &Vars, c: char, label: &str) -> Result<LaurentPoly, CoeffError> {
    let k = vars
        .index_of(label)
        .ok_or_else(|| CoeffError::MissingVariable(format!("{}{} not among {:?}", c, label, vars)))?;
    Ok(match c {
        'u' => LaurentPoly::u(vars, k, 1),
        'q' => LaurentPoly::q(vars, k, 1),
        _ => &LaurentPoly::q(vars, k, 1) - &LaurentPoly::one(vars),
    })
}

fn eval_frac(a: &Ast, vars: &Vars) -> Result<Frac, CoeffError> {
    Ok(match a {
        Ast::Num(r) => Frac::from_poly(LaurentPoly::constant(vars, r.clone())),
        Ast::Var(c, l) => Frac::from_poly(var_poly(vars, *c, l)?),
        Ast::Add(x, y) => &eval_frac(x, vars)? + &eval_frac(y, vars)?,
        Ast::Sub(x, y) => &eval_frac(x, vars)? - &eval_frac(y, vars)?,
        Ast::Mul(x, y) => &eval_frac(x, vars)? * &eval_frac(y, vars)?,
        Ast::Div(x, y) => {
            let d = eval_frac(y, vars)?;
            if d.is_zero() {
                return Err(CoeffError::Domain("division by zero".into()));
            }
            &eval_frac(x, vars)? / &d
        }
        Ast::Neg(x) => -&eval_frac(x, vars)?,
        Ast::Pow(x, e) => {
            let b = eval_frac(x, vars)?;
            if *e < 0 && b.is_zero() {
                return Err(CoeffError::Domain("zero to a negative power".into()));
            }
            b.pow(*e)
        }
    })
}

/// Parse a polynomial; division must be exact.
pub fn parse_laurent(s: &str, vars: &Vars) -> Result<LaurentPoly, CoeffError> {
    let f = eval_frac(&parse_ast(s)?, vars)?;
    f.to_poly().ok_or_else(|| CoeffError::Parse(format!("'{}' is not a Laurent polynomial", s)))
}

/// Parse a rational function.
pub fn parse_frac(s: &str, vars: &Vars) -> Result<Frac, CoeffError> {
    eval_frac(&parse_ast(s)?, vars)
}
