//! Elements of `A[t1..tn]` with polynomial coordinates.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactnum::{parse::invert_monomial, EvalTarget, Expr, Monomial, Poly, PolyRing, Scalar};

use super::structure::StructAlgebra;

/// The polynomial extension `A[t1..tn]`; the `t_i` are central by construction.
#[derive(Clone, Debug)]
pub struct Extension {
    algebra: Arc<StructAlgebra>,
    ring: Arc<PolyRing>,
}

/// `A[t1..tn]` for the given variable names; `vars` empty gives `A` itself.
pub fn poly_extension<S: AsRef<str>>(algebra: &Arc<StructAlgebra>, vars: &[S]) -> Result<Extension> {
    let ring = PolyRing::new(algebra.field(), vars);
    Extension::new(algebra.clone(), ring)
}

impl Extension {
    pub fn new(algebra: Arc<StructAlgebra>, ring: Arc<PolyRing>) -> Result<Extension> {
        if ring.field() != algebra.field() {
            return Err(Error::RingMismatch(format!(
                "coefficient ring {} over a different field than the algebra",
                ring.tag()
            )));
        }
        if let Some(v) = ring.vars().iter().find(|v| algebra.label_index(v).is_some()) {
            return Err(Error::Malformed(format!("variable `{v}` is also a basis label")));
        }
        Ok(Extension { algebra, ring })
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn element(&self, coords: Vec<Poly>) -> Result<AlgElement> {
        if coords.len() != self.algebra.dim() {
            return Err(Error::Malformed(format!(
                "expected {} coordinates, got {}",
                self.algebra.dim(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .map(|c| c.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgElement {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            coords,
        })
    }

    pub fn from_vector(&self, v: &[Scalar]) -> AlgElement {
        AlgElement::from_vector(&self.algebra, &self.ring, v)
    }

    pub fn zero(&self) -> AlgElement {
        self.from_vector(&self.algebra.zero())
    }

    pub fn one(&self) -> AlgElement {
        self.from_vector(self.algebra.identity())
    }

    pub fn basis_element(&self, i: usize) -> AlgElement {
        self.from_vector(&self.algebra.basis_vector(i))
    }

    /// `t_i * 1`.
    pub fn var(&self, i: usize) -> AlgElement {
        self.one().scale_poly(&Poly::var(&self.ring, i))
    }

    pub fn scalar(&self, c: &Poly) -> AlgElement {
        self.one().scale_poly(c)
    }

    /// Parses an expression in basis labels, variables and numbers.
    pub fn parse(&self, s: &str) -> Result<AlgElement> {
        Expr::parse(s)?.eval(self)
    }

    /// Reads `{label: polynomial}` coordinate maps.
    pub fn from_coordinate_map<'a>(
        &self,
        entries: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<AlgElement> {
        let mut coords = vec![Poly::zero(&self.ring); self.algebra.dim()];
        for (label, value) in entries {
            let i = self
                .algebra
                .label_index(label)
                .ok_or_else(|| Error::parse(None, format!("unknown basis label `{label}`")))?;
            coords[i] = &coords[i] + &Poly::parse(value, &self.ring)?;
        }
        self.element(coords)
    }
}

impl EvalTarget for Extension {
    type Value = AlgElement;

    fn number(&self, n: &BigRational) -> Result<AlgElement> {
        let c = self.algebra.field().from_rational(n)?;
        Ok(self.scalar(&Poly::constant(&self.ring, c)))
    }

    fn symbol(&self, name: &str) -> Result<AlgElement> {
        if let Some(i) = self.algebra.label_index(name) {
            return Ok(self.basis_element(i));
        }
        if let Some(i) = self.ring.var_index(name) {
            return Ok(self.var(i));
        }
        Err(Error::parse(None, format!("unknown symbol `{name}`")))
    }

    fn add(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        a.add(b)
    }

    fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        a.mul(b)
    }

    fn neg(&self, a: &AlgElement) -> AlgElement {
        a.neg()
    }

    fn invert(&self, a: &AlgElement) -> Result<AlgElement> {
        let c = a
            .as_scalar()
            .ok_or_else(|| Error::parse(None, "only scalar multiples of 1 can be inverted"))?;
        Ok(self.scalar(&invert_monomial(&c)?))
    }
}

/// Element of `A[t1..tn]`: one polynomial coordinate per basis element of `A`.
#[derive(Clone, Debug)]
pub struct AlgElement {
    algebra: Arc<StructAlgebra>,
    ring: Arc<PolyRing>,
    coords: Vec<Poly>,
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
            && self.coords == other.coords
    }
}

impl Eq for AlgElement {}

impl AlgElement {
    pub fn from_vector(algebra: &Arc<StructAlgebra>, ring: &Arc<PolyRing>, v: &[Scalar]) -> AlgElement {
        AlgElement {
            algebra: algebra.clone(),
            ring: ring.clone(),
            coords: v.iter().map(|c| Poly::constant(ring, c.clone())).collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn extension(&self) -> Extension {
        Extension {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
        }
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Poly {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn same_algebra(&self, other: &AlgElement) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    /// Re-expresses the coordinates over `ring`, which must contain every variable in use.
    pub fn embed(&self, ring: &Arc<PolyRing>) -> Result<AlgElement> {
        Ok(AlgElement {
            algebra: self.algebra.clone(),
            ring: ring.clone(),
            coords: self.coords.iter().map(|c| c.embed(ring)).collect::<Result<_>>()?,
        })
    }

    /// Brings two elements to a common coefficient ring (the union of their variables).
    pub fn unify(&self, other: &AlgElement) -> Result<(AlgElement, AlgElement)> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            return Ok((self.clone(), other.clone()));
        }
        if self.ring.field() != other.ring.field() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring.tag(), other.ring.tag())));
        }
        let union = self.ring.extended(other.ring.vars());
        Ok((self.embed(&union)?, other.embed(&union)?))
    }

    fn zip_with(&self, other: &AlgElement, f: impl Fn(&Poly, &Poly) -> Poly) -> AlgElement {
        let (a, b) = self.unify(other).expect("compatible elements");
        AlgElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| f(x, y)).collect(),
            ..a
        }
    }

    /// Panics on elements of different algebras.
    pub fn add(&self, other: &AlgElement) -> AlgElement {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn neg(&self) -> AlgElement {
        AlgElement {
            coords: self.coords.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgElement {
        AlgElement {
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn scale_poly(&self, c: &Poly) -> AlgElement {
        let c = c.embed(&self.ring).unwrap_or_else(|_| c.clone());
        let (me, c) = if Arc::ptr_eq(c.ring(), &self.ring) || **c.ring() == *self.ring {
            (self.clone(), c)
        } else {
            let union = self.ring.extended(c.ring().vars());
            (self.embed(&union).expect("superset ring"), c.embed(&union).expect("superset ring"))
        };
        AlgElement {
            coords: me.coords.iter().map(|p| p * &c).collect(),
            ..me
        }
    }

    /// Structure-constant product with polynomial coefficients.
    pub fn try_mul(&self, other: &AlgElement) -> Result<AlgElement> {
        let (a, b) = self.unify(other)?;
        let alg = &a.algebra;
        let mut out = vec![Poly::zero(&a.ring); alg.dim()];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in alg.product_of_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &xy.scale(c);
                    }
                }
            }
        }
        Ok(AlgElement { coords: out, ..a })
    }

    pub fn mul(&self, other: &AlgElement) -> AlgElement {
        self.try_mul(other).expect("elements of the same algebra")
    }

    pub fn pow(&self, e: u32) -> AlgElement {
        let mut r = self.extension().one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn commutator(&self, other: &AlgElement) -> AlgElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Commutes with every basis element of `A` (and hence with all of `A[t..]`).
    pub fn is_central(&self) -> bool {
        let ext = self.extension();
        (0..self.algebra.dim()).all(|i| self.commutator(&ext.basis_element(i)).is_zero())
    }

    /// Largest total degree in the extension variables over all coordinates, `-1` for zero.
    pub fn t_degree(&self) -> i64 {
        self.coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(Poly::total_degree)
            .max()
            .unwrap_or(-1)
    }

    /// Coordinates when every coordinate is constant.
    pub fn constant_vector(&self) -> Option<Vec<Scalar>> {
        self.coords.iter().map(Poly::constant_value).collect()
    }

    /// `c` when this element is `c * 1` for a polynomial `c`.
    pub fn as_scalar(&self) -> Option<Poly> {
        let id = self.algebra.identity();
        let k = id.iter().position(|c| !c.is_zero())?;
        let c = self.coords[k].scale(&id[k].inv().unwrap());
        let candidate = self.extension().scalar(&c);
        (candidate == *self).then_some(c)
    }

    /// Coefficient of the monomial `m` in every coordinate.
    pub fn coefficient_vector(&self, m: &Monomial) -> Vec<Scalar> {
        self.coords.iter().map(|c| c.coeff(m)).collect()
    }

    /// All monomials that occur in some coordinate, ascending.
    pub fn support(&self) -> Vec<Monomial> {
        let mut ms: Vec<Monomial> = self
            .coords
            .iter()
            .flat_map(|c| c.terms().map(|(m, _)| m.clone()))
            .collect();
        ms.sort();
        ms.dedup();
        ms
    }

    /// Substitutes values for extension variables.
    pub fn eval_at(&self, assignment: &[(usize, Scalar)]) -> Result<AlgElement> {
        Ok(AlgElement {
            coords: self
                .coords
                .iter()
                .map(|c| c.eval_at(assignment))
                .collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    /// `{label: coefficient}` for the nonzero coordinates, in basis order.
    pub fn coordinate_map(&self) -> Vec<(String, String)> {
        self.algebra
            .labels()
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), c.to_string()))
            .collect()
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, c) in self.algebra.labels().iter().zip(&self.coords) {
            if c.is_zero() {
                continue;
            }
            let neg = c.num_terms() == 1 && c.leading().is_some_and(|(_, s)| s.is_negative_rational());
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if abs.is_one() {
                write!(f, "{l}")?;
            } else if l == "1" && !needs_parens(&abs) {
                write!(f, "{abs}")?;
            } else if needs_parens(&abs) {
                write!(f, "({abs})*{l}")?;
            } else {
                write!(f, "{abs}*{l}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
