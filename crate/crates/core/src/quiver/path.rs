//! Paths and elements of the path algebra `kQ`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

use super::graph::{Quiver, Shape};

/// A path read left to right: `a_1 a_2 ...` with `target(a_i) = source(a_{i+1})`.
/// A trivial path is the idempotent `e_v` of its start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows()[a].target)
    }

    pub fn is_closed(&self, q: &Quiver) -> bool {
        self.end(q) == self.start
    }

    /// Concatenation, `None` when the endpoints do not match.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.end(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            arrows,
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices()[self.start])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows()[a].label.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Shorter paths first, then by start vertex and arrow sequence.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.start.cmp(&other.start))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All paths of length exactly `d`, in canonical order.
pub fn paths_of_length(q: &Quiver, d: usize) -> Vec<Path> {
    let mut current: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &current {
            let end = p.end(q);
            for (i, a) in q.arrows().iter().enumerate() {
                if a.source == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    next.push(Path {
                        start: p.start,
                        arrows,
                    });
                }
            }
        }
        current = next;
    }
    current.sort();
    current
}

/// Finite linear combination of paths.
#[derive(Clone, Debug)]
pub struct PathElement {
    quiver: Arc<Quiver>,
    field: Field,
    terms: BTreeMap<Path, Scalar>,
}

impl PartialEq for PathElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            && self.field == other.field
            && self.terms == other.terms
    }
}

impl Eq for PathElement {}

impl PathElement {
    pub fn zero(quiver: &Arc<Quiver>, field: Field) -> PathElement {
        PathElement {
            quiver: quiver.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(quiver: &Arc<Quiver>, field: Field, p: Path) -> PathElement {
        let mut e = PathElement::zero(quiver, field);
        e.terms.insert(p, field.one());
        e
    }

    pub fn vertex(quiver: &Arc<Quiver>, field: Field, v: usize) -> PathElement {
        PathElement::from_path(quiver, field, Path::trivial(v))
    }

    pub fn arrow(quiver: &Arc<Quiver>, field: Field, a: usize) -> PathElement {
        let start = quiver.arrows()[a].source;
        PathElement::from_path(quiver, field, Path { start, arrows: vec![a] })
    }

    /// `sum_i e_i`.
    pub fn one(quiver: &Arc<Quiver>, field: Field) -> PathElement {
        let mut e = PathElement::zero(quiver, field);
        for v in 0..quiver.num_vertices() {
            e.terms.insert(Path::trivial(v), field.one());
        }
        e
    }

    pub fn from_terms(quiver: &Arc<Quiver>, field: Field, terms: impl IntoIterator<Item = (Path, Scalar)>) -> PathElement {
        let mut e = PathElement::zero(quiver, field);
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(|| self.field.zero());
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Path, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest path length present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Path::len);
        match lens.next() {
            None => true,
            Some(d) => lens.all(|l| l == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> PathElement {
        PathElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() == d)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    fn check(&self, other: &PathElement) -> Result<()> {
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            || self.field != other.field
        {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PathElement) -> Result<PathElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        self.try_add(other).expect("same quiver")
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        let mut out = PathElement::zero(&self.quiver, self.field);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), c * x);
        }
        out
    }

    pub fn sub(&self, other: &PathElement) -> PathElement {
        self.add(&other.scale(&-self.field.one()))
    }

    /// Bilinear extension of concatenation.
    pub fn path_multiply(&self, other: &PathElement) -> Result<PathElement> {
        self.check(other)?;
        let mut out = PathElement::zero(&self.quiver, self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q, &self.quiver) {
                    out.add_term(pq, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PathElement) -> PathElement {
        self.path_multiply(other).expect("same quiver")
    }

    pub fn pow(&self, e: u32) -> PathElement {
        let mut r = PathElement::one(&self.quiver, self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn commutator(&self, other: &PathElement) -> PathElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Commutes with every vertex idempotent and every arrow, hence with all of `kQ`.
    pub fn is_central(&self) -> bool {
        let q = &self.quiver;
        (0..q.num_vertices()).all(|v| self.commutator(&PathElement::vertex(q, self.field, v)).is_zero())
            && (0..q.arrows().len()).all(|a| self.commutator(&PathElement::arrow(q, self.field, a)).is_zero())
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            let neg = c.is_negative_rational();
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
                write!(f, "{}", p.display(&self.quiver))?;
            } else {
                write!(f, "{abs}*{}", p.display(&self.quiver))?;
            }
        }
        Ok(())
    }
}

/// `w = sum_i` (the length-`n` cycle based at vertex `i`), checked central before returning.
pub fn central_cycle(quiver: &Arc<Quiver>, field: Field) -> Result<PathElement> {
    let report = quiver.detect_shape();
    let n = match report.components.as_slice() {
        [(_, Shape::Cycle(n))] => *n,
        _ => return Err(Error::NotACycle),
    };
    let mut w = PathElement::zero(quiver, field);
    for v in 0..n {
        let mut arrows = Vec::with_capacity(n);
        let mut at = v;
        for _ in 0..n {
            let a = quiver.arrows().iter().position(|a| a.source == at).unwrap();
            arrows.push(a);
            at = quiver.arrows()[a].target;
        }
        w.add_term(Path { start: v, arrows }, field.one());
    }
    if !w.is_central() {
        return Err(Error::Decomposition("cycle sum failed the centrality check".into()));
    }
    Ok(w)
}
