//! Expression syntax shared by polynomial literals and algebra element expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*' | '/') power)*        '/' only by numeric constants
//! power  := atom ['^' ['-'] integer]
//! atom   := integer | identifier | '(' expr ')' | '-' power
//! ```
//! Products are kept in order, so the same syntax evaluates in noncommutative algebras.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use super::poly::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Sym(String),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.')
            {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse(None, format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
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

    fn err(&self, msg: &str) -> Error {
        Error::parse(None, format!("{msg} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.power()?];
        loop {
            if self.eat('*') {
                factors.push(self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let value = constant_value(&d).ok_or_else(|| self.err("division by a non-constant"))?;
                if value.is_zero() {
                    return Err(self.err("division by zero"));
                }
                factors.push(Expr::Num(value.recip()));
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }
}

fn constant_value(e: &Expr) -> Option<BigRational> {
    match e {
        Expr::Num(n) => Some(n.clone()),
        Expr::Neg(inner) => constant_value(inner).map(|v| -v),
        Expr::Sum(ts) => ts.iter().try_fold(BigRational::zero(), |acc, t| Some(acc + constant_value(t)?)),
        Expr::Product(fs) => fs.iter().try_fold(BigRational::one(), |acc, f| Some(acc * constant_value(f)?)),
        Expr::Pow(b, k) => {
            let v = constant_value(b)?;
            if *k >= 0 {
                Some(num_traits::pow(v, *k as usize))
            } else if v.is_zero() {
                None
            } else {
                Some(num_traits::pow(v.recip(), (-*k) as usize))
            }
        }
        Expr::Sym(_) => None,
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::parse(None, "empty expression"));
        }
        let mut p = Parser { toks, pos: 0, src: s };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Evaluates in any ring supplying the [`EvalTarget`] operations.
    pub fn eval<T: EvalTarget>(&self, target: &T) -> Result<T::Value> {
        match self {
            Expr::Num(n) => target.number(n),
            Expr::Sym(s) => target.symbol(s),
            Expr::Sum(ts) => {
                let mut acc = target.number(&BigRational::zero())?;
                for t in ts {
                    acc = target.add(&acc, &t.eval(target)?);
                }
                Ok(acc)
            }
            Expr::Neg(e) => Ok(target.neg(&e.eval(target)?)),
            Expr::Product(fs) => {
                let mut acc = target.number(&BigRational::one())?;
                for f in fs {
                    acc = target.mul(&acc, &f.eval(target)?);
                }
                Ok(acc)
            }
            Expr::Pow(b, k) => {
                let base = b.eval(target)?;
                if *k >= 0 {
                    let mut acc = target.number(&BigRational::one())?;
                    for _ in 0..*k {
                        acc = target.mul(&acc, &base);
                    }
                    Ok(acc)
                } else {
                    let inv = target.invert(&base)?;
                    let mut acc = target.number(&BigRational::one())?;
                    for _ in 0..-*k {
                        acc = target.mul(&acc, &inv);
                    }
                    Ok(acc)
                }
            }
        }
    }
}

/// A ring in which parsed expressions can be evaluated.
pub trait EvalTarget {
    type Value;
    fn number(&self, n: &BigRational) -> Result<Self::Value>;
    fn symbol(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    /// Inverse for negative exponents; most targets only invert Laurent monomials.
    fn invert(&self, a: &Self::Value) -> Result<Self::Value>;
}

struct PolyTarget<'a>(&'a Arc<PolyRing>);

impl EvalTarget for PolyTarget<'_> {
    type Value = Poly;

    fn number(&self, n: &BigRational) -> Result<Poly> {
        Ok(Poly::constant(self.0, self.0.field().from_rational(n)?))
    }

    fn symbol(&self, name: &str) -> Result<Poly> {
        Poly::var_named(self.0, name)
            .ok_or_else(|| Error::parse(None, format!("unknown variable `{name}` in {}", self.0.tag())))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }

    fn neg(&self, a: &Poly) -> Poly {
        -a
    }

    fn invert(&self, a: &Poly) -> Result<Poly> {
        invert_monomial(a)
    }
}

/// Inverse of `c * m` when every variable in `m` is Laurent.
pub fn invert_monomial(a: &Poly) -> Result<Poly> {
    if a.num_terms() != 1 {
        return Err(Error::parse(None, format!("`{a}` is not invertible")));
    }
    let (m, c) = a.terms().next().unwrap();
    let inv = Monomial(m.0.iter().map(|e| -e).collect());
    Poly::from_terms(a.ring(), [(inv, c.inv().expect("nonzero term"))])
}

impl Poly {
    /// Parses a polynomial literal such as `3*x^2*y - 1/2` or `x^-1`.
    pub fn parse(s: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
        Expr::parse(s)?.eval(&PolyTarget(ring))
    }
}

/// Parses a ring tag such as `QQ[x]`, `QQ[x,x^-1]`, `GF(5)[x]` or `QQ[x,t1,t2]`.
pub fn parse_ring_tag(tag: &str) -> Result<Arc<PolyRing>> {
    let tag = tag.trim();
    let open = tag
        .find('[')
        .ok_or_else(|| Error::parse(None, format!("ring tag `{tag}` lacks `[...]`")))?;
    if !tag.ends_with(']') {
        return Err(Error::parse(None, format!("ring tag `{tag}` lacks closing `]`")));
    }
    let field = Field::parse_tag(&tag[..open])?;
    let inner = &tag[open + 1..tag.len() - 1];
    let mut vars: Vec<(String, bool)> = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some(base) = part.strip_suffix("^-1") {
            match vars.iter_mut().find(|(v, _)| v == base) {
                Some(entry) => entry.1 = true,
                None => vars.push((base.to_string(), true)),
            }
        } else if !vars.iter().any(|(v, _)| v == part) {
            vars.push((part.to_string(), false));
        }
    }
    Ok(PolyRing::with_laurent(field, &vars))
}

/// Parses a standalone field element (integer or fraction).
pub fn parse_scalar(s: &str, field: Field) -> Result<Scalar> {
    let e = Expr::parse(s)?;
    let v = constant_value(&e).ok_or_else(|| Error::parse(None, format!("`{s}` is not a constant")))?;
    field.from_rational(&v)
}
