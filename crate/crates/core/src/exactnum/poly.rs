//! Sparse multivariate (Laurent) polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Scalar};
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Variables, base field and Laurent flags of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    laurent: Vec<bool>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Arc<PolyRing> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let laurent = vec![false; vars.len()];
        Arc::new(PolyRing {
            field,
            vars,
            laurent,
        })
    }

    /// Ring with per-variable Laurent flags.
    pub fn with_laurent<S: AsRef<str>>(field: Field, vars: &[(S, bool)]) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|(v, _)| v.as_ref().to_string()).collect(),
            laurent: vars.iter().map(|(_, l)| *l).collect(),
        })
    }

    /// The field itself, as a ring with no variables.
    pub fn scalars(field: Field) -> Arc<PolyRing> {
        PolyRing::new::<&str>(field, &[])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_laurent(&self, var: usize) -> bool {
        self.laurent[var]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Ring over the same field with `extra` variables appended (names already present are kept once).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Arc<PolyRing> {
        let mut vars = self.vars.clone();
        let mut laurent = self.laurent.clone();
        for v in extra {
            if !vars.iter().any(|x| x == v.as_ref()) {
                vars.push(v.as_ref().to_string());
                laurent.push(false);
            }
        }
        Arc::new(PolyRing {
            field: self.field,
            vars,
            laurent,
        })
    }

    /// Textual tag in the order-file style, e.g. `QQ[x]`, `QQ[x,x^-1]`.
    pub fn tag(&self) -> String {
        let mut parts = Vec::new();
        for (v, l) in self.vars.iter().zip(&self.laurent) {
            parts.push(v.clone());
            if *l {
                parts.push(format!("{v}^-1"));
            }
        }
        format!("{}[{}]", self.field.tag(), parts.join(","))
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Poly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Poly {
        let mut p = Poly::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), c);
        p
    }

    pub fn from_i64(ring: &Arc<PolyRing>, c: i64) -> Poly {
        Poly::constant(ring, ring.field.from_i64(c))
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Poly {
        let mut e = vec![0; ring.nvars()];
        e[index] = 1;
        Poly::monomial(ring, Monomial(e), ring.field.one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Option<Poly> {
        ring.var_index(name).map(|i| Poly::var(ring, i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero(ring);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from terms, validating exponent signs.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Poly> {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            if m.0.len() != ring.nvars() {
                return Err(Error::RingMismatch("exponent vector length".into()));
            }
            for (i, e) in m.0.iter().enumerate() {
                if *e < 0 && !ring.laurent[i] {
                    return Err(Error::NegativeExponent(ring.vars[i].clone()));
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.0.iter().all(|e| *e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Highest exponent of `var` (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Total degree; -1 for zero.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(-1)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero(&self.ring);
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn check_ring(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomial ring mismatch: {} vs {}",
            self.ring.tag(),
            other.ring.tag()
        );
    }

    /// Substitutes field values for some variables. Variables not assigned stay symbolic
    /// and the result lives in the same ring.
    pub fn eval_at(&self, assignment: &[(usize, Scalar)]) -> Result<Poly> {
        for (v, a) in assignment {
            if a.is_zero() && self.ring.laurent[*v] {
                return Err(Error::LaurentPole(self.ring.vars[*v].clone()));
            }
        }
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (v, a) in assignment {
                let e = exps[*v];
                let factor = if e >= 0 {
                    a.pow(e as u64)
                } else {
                    a.inv().expect("nonzero checked above").pow((-e) as u64)
                };
                coeff *= &factor;
                exps[*v] = 0;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// Substitution by variable name.
    pub fn eval_named(&self, assignment: &[(&str, Scalar)]) -> Result<Poly> {
        let mut idx = Vec::with_capacity(assignment.len());
        for (name, a) in assignment {
            let i = self
                .ring
                .var_index(name)
                .ok_or_else(|| Error::RingMismatch(format!("no variable `{name}`")))?;
            idx.push((i, a.clone()));
        }
        self.eval_at(&idx)
    }

    /// Full evaluation to a field element.
    pub fn eval_all(&self, values: &[Scalar]) -> Result<Scalar> {
        let assignment: Vec<_> = values.iter().cloned().enumerate().collect();
        Ok(self
            .eval_at(&assignment)?
            .constant_value()
            .expect("all variables assigned"))
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly> {
        if target.field != self.ring.field {
            return Err(Error::RingMismatch("different base fields".into()));
        }
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::RingMismatch(format!("`{v}` missing in {}", target.tag())))
            })
            .collect::<Result<_>>()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, x) in m.0.iter().enumerate() {
                e[map[i]] = *x;
            }
            terms.push((Monomial(e), c.clone()));
        }
        Poly::from_terms(target, terms)
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        let f = self.ring.field;
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * &f.from_i64(e));
        }
        out
    }

    /// Dense univariate view; requires one variable and no negative exponents.
    pub fn to_univariate(&self) -> Result<UniPoly> {
        if self.ring.nvars() != 1 {
            return Err(Error::NotUnivariate);
        }
        let deg = self.degree_in(0).max(0) as usize;
        let f = self.ring.field;
        let mut coeffs = vec![f.zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            if m.0[0] < 0 {
                return Err(Error::NegativeExponent(self.ring.vars[0].clone()));
            }
            coeffs[m.0[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(f, coeffs))
    }

    /// Inverse of [`Poly::to_univariate`] in a one-variable ring.
    pub fn from_univariate(ring: &Arc<PolyRing>, u: &UniPoly) -> Poly {
        assert_eq!(ring.nvars(), 1);
        let mut p = Poly::zero(ring);
        for (i, c) in u.coeffs().iter().enumerate() {
            p.add_term(Monomial(vec![i as i64]), c.clone());
        }
        p
    }

    /// Divides out the monomial `var^k` for the smallest exponent `k` occurring
    /// (useful for Laurent normalization). Returns the shift applied.
    pub fn shift_to_nonnegative(&self, var: usize) -> (Poly, i64) {
        let k = self.min_degree_in(var);
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[var] -= k;
            out.add_term(Monomial(e), c.clone());
        }
        (out, k)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, e) in vars.iter().zip(&m.0) {
        if *e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if *e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Leading term first, e.g. `3*x^2*y - 1/2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_rational();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_unit_monomial = m.0.iter().all(|e| *e == 0);
            if is_unit_monomial {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, &self.ring.vars, m)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, &self.ring.vars, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qx() -> Arc<PolyRing> {
        PolyRing::new(Field::Rationals, &["x", "t"])
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let r = qx();
        let x = Poly::var(&r, 0);
        let t = Poly::var(&r, 1);
        let p = &(&x * &x).scale(&Field::Rationals.from_i64(3)) - &Poly::from_i64(&r, 1);
        let p = &p + &(&x * &t);
        assert_eq!(p.to_string(), "3*x^2 + x*t - 1");
        assert_eq!(Poly::zero(&r).to_string(), "0");
    }

    #[test]
    fn partial_substitution() {
        let r = qx();
        let x = Poly::var(&r, 0);
        let t = Poly::var(&r, 1);
        let f = &(&x * &t) + &Poly::one(&r);
        let g = f.eval_at(&[(0, Field::Rationals.from_i64(3))]).unwrap();
        let expect = &t.scale(&Field::Rationals.from_i64(3)) + &Poly::one(&r);
        assert_eq!(g, expect);
    }

    #[test]
    fn laurent_pole_is_rejected() {
        let r = PolyRing::with_laurent(Field::Rationals, &[("x", true)]);
        let inv = Poly::from_terms(&r, [(Monomial(vec![-1]), Field::Rationals.one())]).unwrap();
        assert_eq!(
            inv.eval_at(&[(0, Field::Rationals.zero())]),
            Err(Error::LaurentPole("x".into()))
        );
        let half = inv.eval_at(&[(0, Field::Rationals.from_i64(2))]).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let nonlaurent = PolyRing::new(Field::Rationals, &["x"]);
        assert!(Poly::from_terms(&nonlaurent, [(Monomial(vec![-1]), Field::Rationals.one())]).is_err());
    }

    #[test]
    fn embed_by_name() {
        let small = PolyRing::new(Field::Rationals, &["x"]);
        let big = small.extended(&["t1", "t2"]);
        let x = Poly::var(&small, 0);
        let e = x.embed(&big).unwrap();
        assert_eq!(e, Poly::var(&big, 0));
        assert!(Poly::var(&big, 1).embed(&small).is_err());
    }
}
