//! The graded center of `kQ`: a degreewise linear solve and the closed form by component shape.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::exactnum::Field;

use super::graph::{Quiver, Shape};
use super::path::{Path, PathElement};

/// Closed paths of length exactly `d`, in canonical order.
pub fn closed_paths(q: &Quiver, d: usize) -> Vec<Path> {
    fn extend(q: &Quiver, p: &mut Path, left: usize, out: &mut Vec<Path>) {
        if left == 0 {
            if p.is_closed(q) {
                out.push(p.clone());
            }
            return;
        }
        let end = p.end(q);
        for (i, a) in q.arrows().iter().enumerate() {
            if a.source == end {
                p.arrows.push(i);
                extend(q, p, left - 1, out);
                p.arrows.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        extend(q, &mut Path::trivial(v), d, &mut out);
    }
    out.sort();
    out
}

/// Basis of the degree-`d` part of `Z(kQ)`, one entry per degree `0..=D`.
#[derive(Clone, Debug)]
pub struct GradedCenter {
    pub degrees: Vec<Vec<PathElement>>,
}

impl GradedCenter {
    pub fn dimensions(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn basis(&self) -> impl Iterator<Item = &PathElement> {
        self.degrees.iter().flatten()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    zero: Vec<bool>,
}

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.zero[ra] |= self.zero[rb];
        }
    }

    fn kill(&mut self, a: usize) {
        let r = self.find(a);
        self.zero[r] = true;
    }
}

/// Degree-`d` central elements. A central element commutes with every `e_i`, so it is
/// supported on closed paths. For a closed `p` and an arrow `a`, the path `p*a` occurs in
/// `z*a` with coefficient `c_p` and in `a*z` with coefficient `c_q` when `p*a = a*q`, so each
/// equation of `[z, a] = 0` has at most two terms.
fn center_in_degree(q: &Arc<Quiver>, field: Field, d: usize) -> Vec<PathElement> {
    let paths = closed_paths(q, d);
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind {
        parent: (0..paths.len()).collect(),
        zero: vec![false; paths.len()],
    };
    let n_arrows = q.arrows().len();
    for (i, p) in paths.iter().enumerate() {
        for a in 0..n_arrows {
            let arrow = &q.arrows()[a];
            // p * a
            if arrow.source == p.start {
                let mut r = p.arrows.clone();
                r.push(a);
                let partner = (r[0] == a).then(|| Path {
                    start: arrow.target,
                    arrows: r[1..].to_vec(),
                });
                match partner.as_ref().and_then(|s| index.get(s)) {
                    Some(&j) => uf.union(i, j),
                    None => uf.kill(i),
                }
            }
            // a * p
            if arrow.target == p.start {
                let mut r = vec![a];
                r.extend_from_slice(&p.arrows);
                let partner = (r[r.len() - 1] == a).then(|| Path {
                    start: arrow.source,
                    arrows: r[..r.len() - 1].to_vec(),
                });
                match partner.as_ref().and_then(|s| index.get(s)) {
                    Some(&j) => uf.union(i, j),
                    None => uf.kill(i),
                }
            }
        }
    }
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..paths.len() {
        let r = uf.find(i);
        if uf.zero[r] {
            continue;
        }
        let k = *slot.entry(r).or_insert_with(|| {
            classes.push((r, Vec::new()));
            classes.len() - 1
        });
        classes[k].1.push(i);
    }
    classes
        .into_iter()
        .map(|(_, members)| {
            PathElement::from_terms(q, field, members.into_iter().map(|i| (paths[i].clone(), field.one())))
        })
        .collect()
}

/// Solves `[z, e_i] = 0` and `[z, a] = 0` degree by degree up to `bound`.
pub fn center_bruteforce(q: &Arc<Quiver>, bound: usize, field: Field) -> GradedCenter {
    GradedCenter {
        degrees: (0..=bound).map(|d| center_in_degree(q, field, d)).collect(),
    }
}

/// One factor of the closed-form center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterFactor {
    /// `k`
    Scalars,
    /// `k[x]` for a single loop
    LoopPolynomials,
    /// `k[w]` with `w` the sum of the length-`n` cycles
    CyclePolynomials(usize),
}

impl CenterFactor {
    pub fn dimension_in_degree(&self, d: usize) -> usize {
        match *self {
            CenterFactor::Scalars => (d == 0) as usize,
            CenterFactor::LoopPolynomials => 1,
            CenterFactor::CyclePolynomials(n) => (d % n == 0) as usize,
        }
    }
}

impl fmt::Display for CenterFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterFactor::Scalars => f.write_str("k"),
            CenterFactor::LoopPolynomials => f.write_str("k[x]"),
            CenterFactor::CyclePolynomials(_) => f.write_str("k[w]"),
        }
    }
}

/// Product over connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCenter {
    pub factors: Vec<CenterFactor>,
}

impl ClosedFormCenter {
    pub fn dimension_in_degree(&self, d: usize) -> usize {
        self.factors.iter().map(|f| f.dimension_in_degree(d)).sum()
    }

    pub fn dimensions(&self, bound: usize) -> Vec<usize> {
        (0..=bound).map(|d| self.dimension_in_degree(d)).collect()
    }
}

impl fmt::Display for ClosedFormCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

pub fn center_closed_form(q: &Quiver) -> ClosedFormCenter {
    ClosedFormCenter {
        factors: q
            .detect_shape()
            .components
            .iter()
            .map(|(_, s)| match s {
                Shape::NoArrow | Shape::Other => CenterFactor::Scalars,
                Shape::Loop => CenterFactor::LoopPolynomials,
                Shape::Cycle(n) => CenterFactor::CyclePolynomials(*n),
            })
            .collect(),
    }
}
