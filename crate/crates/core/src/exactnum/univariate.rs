//! Dense univariate polynomials over a field: division, gcds, square-free parts.

use std::fmt;

use num_bigint::BigUint;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Coefficients little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|c| field.from_i64(*c)).collect())
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::new(c.field(), vec![c])
    }

    pub fn x(field: Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(a: &Scalar) -> UniPoly {
        let f = a.field();
        UniPoly::new(f, vec![-a, f.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut r = UniPoly::one(self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[i - dd + j] -= &t;
            }
            q[i - dd] = c;
        }
        (UniPoly::new(self.field, q), UniPoly::new(self.field, r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`, `None` otherwise.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let mut result = UniPoly::one(self.field).rem(m);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        result
    }

    /// For `F_p` polynomials in `x^p`: the polynomial `g` with `g(x)^p = self`.
    fn pth_root(&self) -> Option<UniPoly> {
        let p = self.field.characteristic() as usize;
        if p == 0 {
            return None;
        }
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        // Frobenius is the identity on the prime field.
        Some(UniPoly::new(self.field, out))
    }

    /// Square-free decomposition: monic `(g_i, i)` with `self = lc * prod g_i^i`,
    /// the `g_i` pairwise coprime and square-free. Handles the inseparable case in
    /// characteristic p by recursing on p-th roots.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        squarefree_rec(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        // merge equal multiplicities from different recursion levels
        let mut merged: Vec<(UniPoly, u32)> = Vec::new();
        for (g, m) in out {
            match merged.iter_mut().find(|(_, mm)| *mm == m) {
                Some((h, _)) => *h = h.mul(&g),
                None => merged.push((g, m)),
            }
        }
        Ok(merged)
    }

    /// Monic generator of the radical of `(self)`.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        let mut out = UniPoly::one(self.field);
        for (g, _) in self.squarefree_decomposition()? {
            out = out.mul(&g);
        }
        Ok(out)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).is_one(),
        }
    }
}

fn squarefree_rec(f: &UniPoly, mult: u32, out: &mut Vec<(UniPoly, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let fp = f.derivative();
    let mut c = f.gcd(&fp);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * mult));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c
            .pth_root()
            .expect("remaining cofactor is a p-th power in characteristic p");
        let p = f.field.characteristic() as u32;
        squarefree_rec(&root.monic(), mult * p, out);
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = super::poly::PolyRing::new(self.field, &["x"]);
        write!(f, "{}", super::poly::Poly::from_univariate(&ring, self))
    }
}
