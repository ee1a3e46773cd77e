//! Finite quivers, their text format, shapes and growth.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Vertices and arrows; loops and parallel arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// Shape of one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    NoArrow,
    Loop,
    Cycle(usize),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// Vertex indices of each component, with its shape.
    pub components: Vec<(Vec<usize>, Shape)>,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    FiniteDimensional,
    /// Cumulative path counts grow like `d^degree`; `empirical` marks a fitted degree.
    Polynomial { degree: usize, empirical: bool },
    Exponential,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.vertex_index(label).is_some() {
            return Err(Error::Malformed(format!("duplicate vertex `{label}`")));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, label: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrow_index(label).is_some() {
            return Err(Error::Malformed(format!("duplicate arrow `{label}`")));
        }
        let s = self
            .vertex_index(source)
            .ok_or_else(|| Error::Malformed(format!("unknown vertex `{source}`")))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| Error::Malformed(format!("unknown vertex `{target}`")))?;
        self.arrows.push(Arrow {
            label: label.to_string(),
            source: s,
            target: t,
        });
        Ok(self.arrows.len() - 1)
    }

    /// `C_n`: vertices `v0..`, arrows `a_i: v_i -> v_{i+1 mod n}`.
    pub fn cycle(n: usize) -> Quiver {
        let mut q = Quiver::new();
        for i in 0..n {
            q.add_vertex(&format!("v{i}")).unwrap();
        }
        for i in 0..n {
            q.add_arrow(&format!("a{i}"), &format!("v{i}"), &format!("v{}", (i + 1) % n))
                .unwrap();
        }
        q
    }

    /// Two vertices with two parallel arrows.
    pub fn kronecker() -> Quiver {
        let mut q = Quiver::new();
        q.add_vertex("v1").unwrap();
        q.add_vertex("v2").unwrap();
        q.add_arrow("a", "v1", "v2").unwrap();
        q.add_arrow("b", "v1", "v2").unwrap();
        q
    }

    /// One vertex with `k` loops.
    pub fn loops(k: usize) -> Quiver {
        let mut q = Quiver::new();
        q.add_vertex("v").unwrap();
        for i in 0..k {
            q.add_arrow(&format!("x{}", i + 1), "v", "v").unwrap();
        }
        q
    }

    /// The linearly oriented `A_n`: `v1 -> v2 -> ... -> vn`.
    pub fn linear(n: usize) -> Quiver {
        let mut q = Quiver::new();
        for i in 1..=n {
            q.add_vertex(&format!("v{i}")).unwrap();
        }
        for i in 1..n {
            q.add_arrow(&format!("a{i}"), &format!("v{i}"), &format!("v{}", i + 1))
                .unwrap();
        }
        q
    }

    /// Disjoint union; labels of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &Quiver, suffix: &str) -> Quiver {
        let mut q = self.clone();
        let off = q.vertices.len();
        q.vertices
            .extend(other.vertices.iter().map(|v| format!("{v}{suffix}")));
        q.arrows.extend(other.arrows.iter().map(|a| Arrow {
            label: format!("{}{suffix}", a.label),
            source: a.source + off,
            target: a.target + off,
        }));
        q
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Parses `vertex v` / `arrow a: v1 -> v2` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Quiver> {
        let mut q = Quiver::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::parse(Some(line_no), m);
            let relabel = |e: Error| match e {
                Error::Malformed(m) => err(m),
                other => err(other.to_string()),
            };
            if let Some(rest) = line.strip_prefix("vertex") {
                let name = rest.trim();
                if name.is_empty() || name.contains(char::is_whitespace) || !rest.starts_with(char::is_whitespace) {
                    return Err(err(format!("malformed vertex declaration `{line}`")));
                }
                q.add_vertex(name).map_err(relabel)?;
            } else if let Some(rest) = line.strip_prefix("arrow") {
                let parsed = rest.split_once(':').and_then(|(label, ends)| {
                    let (s, t) = ends.split_once("->")?;
                    Some((label.trim(), s.trim(), t.trim()))
                });
                match parsed {
                    Some((label, s, t))
                        if rest.starts_with(char::is_whitespace)
                            && ![label, s, t]
                                .iter()
                                .any(|x| x.is_empty() || x.contains(char::is_whitespace)) =>
                    {
                        q.add_arrow(label, s, t).map_err(relabel)?;
                    }
                    _ => return Err(err(format!("malformed arrow declaration `{line}`"))),
                }
            } else {
                return Err(err(format!("expected `vertex` or `arrow`, found `{line}`")));
            }
        }
        Ok(q)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.label, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        out
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            match root_of[r] {
                Some(c) => comps[c].push(v),
                None => {
                    root_of[r] = Some(comps.len());
                    comps.push(vec![v]);
                }
            }
        }
        comps
    }

    fn arrows_within(&self, comp: &[usize]) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| comp.contains(&self.arrows[i].source))
            .collect()
    }

    fn component_shape(&self, comp: &[usize]) -> Shape {
        let arrows = self.arrows_within(comp);
        if arrows.is_empty() {
            return Shape::NoArrow;
        }
        if comp.len() == 1 && arrows.len() == 1 {
            return Shape::Loop;
        }
        let n = comp.len();
        let regular = arrows.len() == n
            && comp.iter().all(|&v| {
                arrows.iter().filter(|&&a| self.arrows[a].source == v).count() == 1
                    && arrows.iter().filter(|&&a| self.arrows[a].target == v).count() == 1
            });
        // in- and out-degree one on a connected component is a single oriented cycle
        if regular && n >= 2 {
            Shape::Cycle(n)
        } else {
            Shape::Other
        }
    }

    pub fn detect_shape(&self) -> ShapeReport {
        let components: Vec<(Vec<usize>, Shape)> = self
            .components()
            .into_iter()
            .map(|c| {
                let s = self.component_shape(&c);
                (c, s)
            })
            .collect();
        ShapeReport {
            connected: components.len() <= 1,
            components,
        }
    }

    /// The subquiver on the given vertices with all arrows between them.
    pub fn restrict(&self, vertices: &[usize]) -> Quiver {
        let mut q = Quiver::new();
        for &v in vertices {
            q.vertices.push(self.vertices[v].clone());
        }
        for a in &self.arrows {
            if let (Some(s), Some(t)) = (
                vertices.iter().position(|&v| v == a.source),
                vertices.iter().position(|&v| v == a.target),
            ) {
                q.arrows.push(Arrow {
                    label: a.label.clone(),
                    source: s,
                    target: t,
                });
            }
        }
        q
    }

    /// Number of paths of length exactly `d` (trivial paths count for `d = 0`).
    pub fn path_count(&self, d: usize) -> BigUint {
        let mut counts = vec![BigUint::one(); self.vertices.len()];
        for _ in 0..d {
            let mut next = vec![BigUint::zero(); self.vertices.len()];
            for a in &self.arrows {
                next[a.target] += &counts[a.source];
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    /// Number of closed paths of length exactly `d`, the trace of the `d`-th adjacency power.
    pub fn closed_path_count(&self, d: usize) -> BigUint {
        let n = self.vertices.len();
        let mut total = BigUint::zero();
        for v in 0..n {
            let mut counts = vec![BigUint::zero(); n];
            counts[v] = BigUint::one();
            for _ in 0..d {
                let mut next = vec![BigUint::zero(); n];
                for a in &self.arrows {
                    next[a.target] += &counts[a.source];
                }
                counts = next;
            }
            total += &counts[v];
        }
        total
    }

    /// Strongly connected components (Tarjan), in reverse topological order.
    fn sccs(&self) -> Vec<Vec<usize>> {
        struct State<'a> {
            q: &'a Quiver,
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next: usize,
            out: Vec<Vec<usize>>,
        }
        fn visit(s: &mut State, v: usize) {
            s.index[v] = Some(s.next);
            s.low[v] = s.next;
            s.next += 1;
            s.stack.push(v);
            s.on_stack[v] = true;
            let succ: Vec<usize> = s.q.arrows.iter().filter(|a| a.source == v).map(|a| a.target).collect();
            for w in succ {
                match s.index[w] {
                    None => {
                        visit(s, w);
                        s.low[v] = s.low[v].min(s.low[w]);
                    }
                    Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                    _ => {}
                }
            }
            if Some(s.low[v]) == s.index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = s.stack.pop().unwrap();
                    s.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort();
                s.out.push(comp);
            }
        }
        let n = self.vertices.len();
        let mut s = State {
            q: self,
            index: vec![None; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            next: 0,
            out: Vec::new(),
        };
        for v in 0..n {
            if s.index[v].is_none() {
                visit(&mut s, v);
            }
        }
        s.out
    }

    fn internal_arrows(&self, comp: &[usize]) -> usize {
        self.arrows
            .iter()
            .filter(|a| comp.contains(&a.source) && comp.contains(&a.target))
            .count()
    }

    pub fn is_acyclic(&self) -> bool {
        self.sccs().iter().all(|c| self.internal_arrows(c) == 0)
    }

    /// Largest number of cyclic strongly connected components met by a single path.
    pub fn cycle_chain_length(&self) -> usize {
        let sccs = self.sccs();
        let comp_of = |v: usize| sccs.iter().position(|c| c.contains(&v)).unwrap();
        let cyclic: Vec<bool> = sccs.iter().map(|c| self.internal_arrows(c) > 0).collect();
        // sccs come out in reverse topological order, so successors have smaller indices
        let mut best = vec![0usize; sccs.len()];
        for i in 0..sccs.len() {
            let mut succ_best = 0;
            for a in &self.arrows {
                let (s, t) = (comp_of(a.source), comp_of(a.target));
                if s == i && t != i {
                    succ_best = succ_best.max(best[t]);
                }
            }
            best[i] = succ_best + cyclic[i] as usize;
        }
        best.into_iter().max().unwrap_or(0)
    }

    fn cycle_period(&self) -> usize {
        self.sccs()
            .iter()
            .filter(|c| self.internal_arrows(c) > 0)
            .map(|c| c.len())
            .fold(1, num_integer::lcm)
    }

    /// Growth of `kQ`: exact for the finite-dimensional and exponential cases,
    /// fitted from exact path counts otherwise.
    pub fn growth_class(&self, probe_depth: usize) -> Growth {
        let sccs = self.sccs();
        if sccs.iter().all(|c| self.internal_arrows(c) == 0) {
            return Growth::FiniteDimensional;
        }
        if sccs.iter().any(|c| self.internal_arrows(c) > c.len()) {
            return Growth::Exponential;
        }
        let period = self.cycle_period();
        let n = self.vertices.len();
        let samples = n + 3;
        let start = n.max(probe_depth.saturating_sub(period * samples));
        let mut cumulative = Vec::new();
        let mut total = BigUint::zero();
        let last = start + period * (samples - 1);
        for d in 0..=last {
            total += self.path_count(d);
            if d >= start && (d - start) % period == 0 {
                cumulative.push(num_bigint::BigInt::from(total.clone()));
            }
        }
        Growth::Polynomial {
            degree: fitted_degree(cumulative),
            empirical: true,
        }
    }
}

impl Default for Quiver {
    fn default() -> Self {
        Quiver::new()
    }
}

/// Degree of the polynomial through equally spaced samples, by successive differences.
fn fitted_degree(mut seq: Vec<num_bigint::BigInt>) -> usize {
    let mut degree = 0;
    loop {
        if seq.len() < 2 || seq.iter().all(|x| *x == seq[0]) {
            return degree;
        }
        seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
        degree += 1;
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::NoArrow => f.write_str("no arrow"),
            Shape::Loop => f.write_str("C_1"),
            Shape::Cycle(n) => write!(f, "C_{n}"),
            Shape::Other => f.write_str("other"),
        }
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::FiniteDimensional => f.write_str("finite-dimensional"),
            Growth::Polynomial { degree, empirical } => {
                write!(f, "polynomial of degree {degree}")?;
                if *empirical {
                    f.write_str(" (fitted)")?;
                }
                Ok(())
            }
            Growth::Exponential => f.write_str("exponential"),
        }
    }
}
