//! Standard algebras: matrices, direct sums, monomial quotients and friends.

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Scalar, Subspace};

use super::structure::StructAlgebra;

fn matrix_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

/// `M_n(field)` with basis `e11, e12, ...` in row-major order.
pub fn matrix_algebra(field: Field, n: usize) -> StructAlgebra {
    let idx = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(matrix_label(n, i, j));
        }
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                entries.push((idx(i, j), idx(j, k), idx(i, k), field.one()));
            }
        }
    }
    let mut identity = vec![field.zero(); n * n];
    for i in 0..n {
        identity[idx(i, i)] = field.one();
    }
    StructAlgebra::from_sparse(field, labels, &entries, identity).expect("matrix units")
}

/// Upper triangular `n x n` matrices, basis `e_ij` with `i <= j`.
pub fn upper_triangular(field: Field, n: usize) -> StructAlgebra {
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i..n {
            pos.push((i, j));
        }
    }
    let index = |i: usize, j: usize| pos.iter().position(|&p| p == (i, j)).unwrap();
    let labels = pos.iter().map(|&(i, j)| matrix_label(n, i, j)).collect();
    let mut entries = Vec::new();
    for (a, &(i, j)) in pos.iter().enumerate() {
        for (b, &(j2, k)) in pos.iter().enumerate() {
            if j == j2 {
                entries.push((a, b, index(i, k), field.one()));
            }
        }
    }
    let mut identity = vec![field.zero(); pos.len()];
    for i in 0..n {
        identity[index(i, i)] = field.one();
    }
    StructAlgebra::from_sparse(field, labels, &entries, identity).expect("triangular units")
}

/// The base field as a one-dimensional algebra with basis `1`.
pub fn field_algebra(field: Field) -> StructAlgebra {
    StructAlgebra::from_sparse(
        field,
        vec!["1".to_string()],
        &[(0, 0, 0, field.one())],
        vec![field.one()],
    )
    .expect("field")
}

/// Quaternion algebra `(a, b)`: `i^2 = a`, `j^2 = b`, `ij = -ji = k`.
pub fn quaternion_algebra(field: Field, a: &Scalar, b: &Scalar) -> StructAlgebra {
    let labels = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
    let one = field.one();
    let ab = a * b;
    let entries = vec![
        (0, 0, 0, one.clone()),
        (0, 1, 1, one.clone()),
        (0, 2, 2, one.clone()),
        (0, 3, 3, one.clone()),
        (1, 0, 1, one.clone()),
        (2, 0, 2, one.clone()),
        (3, 0, 3, one.clone()),
        (1, 1, 0, a.clone()),
        (2, 2, 0, b.clone()),
        (3, 3, 0, -&ab),
        (1, 2, 3, one.clone()),
        (2, 1, 3, -&one),
        (1, 3, 2, a.clone()),
        (3, 1, 2, -a),
        (3, 2, 1, b.clone()),
        (2, 3, 1, -b),
    ];
    let mut identity = vec![field.zero(); 4];
    identity[0] = one;
    StructAlgebra::from_sparse(field, labels, &entries, identity).expect("quaternion relations")
}

/// Direct product of algebras over a common field.
///
/// Labels are kept when they are distinct across summands and prefixed `s1.`, `s2.`, ... otherwise.
pub fn direct_sum(parts: &[&StructAlgebra]) -> Result<StructAlgebra> {
    let field = parts
        .first()
        .map(|a| a.field())
        .ok_or_else(|| Error::Malformed("direct sum of no algebras".into()))?;
    if parts.iter().any(|a| a.field() != field) {
        return Err(Error::AlgebraMismatch);
    }
    let all: Vec<&String> = parts.iter().flat_map(|a| a.labels()).collect();
    let clash = (0..all.len()).any(|i| all[..i].contains(&all[i]));
    let mut labels = Vec::new();
    let mut offsets = Vec::new();
    for (s, a) in parts.iter().enumerate() {
        offsets.push(labels.len());
        for l in a.labels() {
            labels.push(if clash { format!("s{}.{l}", s + 1) } else { l.clone() });
        }
    }
    let m = labels.len();
    let mut entries = Vec::new();
    let mut identity = vec![field.zero(); m];
    for (a, &off) in parts.iter().zip(&offsets) {
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for (k, c) in a.product_of_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((off + i, off + j, off + k, c.clone()));
                    }
                }
            }
            identity[off + i] = a.identity()[i].clone();
        }
    }
    StructAlgebra::from_sparse(field, labels, &entries, identity)
}

/// Exponent vectors sorted by degree, then with earlier variables first.
fn standard_monomial_order(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

fn monomial_label(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Commutative `field[vars] / (relations)` where each relation is a monomial exponent vector.
pub fn monomial_quotient(field: Field, vars: &[String], relations: &[Vec<u32>]) -> Result<StructAlgebra> {
    let n = vars.len();
    if relations.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed("relation exponent vector has wrong length".into()));
    }
    let in_ideal = |e: &[u32]| relations.iter().any(|r| r.iter().zip(e).all(|(a, b)| a <= b));
    for (v, name) in vars.iter().enumerate() {
        let bounded = relations
            .iter()
            .any(|r| r.iter().enumerate().all(|(i, &k)| i == v || k == 0));
        if !bounded {
            return Err(Error::InfiniteQuotient(name.clone()));
        }
    }
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut frontier = vec![vec![0u32; n]];
    if in_ideal(&frontier[0]) {
        return Err(Error::Malformed("the relations generate the unit ideal".into()));
    }
    while let Some(e) = frontier.pop() {
        if basis.contains(&e) {
            continue;
        }
        for v in 0..n {
            let mut f = e.clone();
            f[v] += 1;
            if !in_ideal(&f) && !basis.contains(&f) {
                frontier.push(f);
            }
        }
        basis.push(e);
    }
    basis.sort_by(|a, b| standard_monomial_order(a, b));
    let labels = basis.iter().map(|e| monomial_label(vars, e)).collect();
    let mut entries = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(k) = basis.iter().position(|e| *e == prod) {
                entries.push((i, j, k, field.one()));
            }
        }
    }
    let mut identity = vec![field.zero(); basis.len()];
    identity[0] = field.one();
    StructAlgebra::from_sparse(field, labels, &entries, identity)
}

/// `field[x] / (x^n)`.
pub fn truncated_polynomial(field: Field, var: &str, n: u32) -> Result<StructAlgebra> {
    monomial_quotient(field, &[var.to_string()], &[vec![n]])
}

/// The subalgebra of `M_n(field)` generated by the given matrices, with basis `b1, b2, ...`.
pub fn generated_matrix_algebra(field: Field, n: usize, generators: &[Matrix]) -> Result<StructAlgebra> {
    let m = matrix_algebra(field, n);
    let flatten = |x: &Matrix| -> Vec<Scalar> { (0..n).flat_map(|i| x.row(i).to_vec()).collect() };
    let mut span = Subspace::span(field, n * n, &[m.identity().to_vec()]);
    let gens: Vec<Vec<Scalar>> = generators.iter().map(flatten).collect();
    span = span.sum(&Subspace::span(field, n * n, &gens));
    loop {
        let next = span.sum(&m.product_space(&span, &span));
        if next.dimension() == span.dimension() {
            break;
        }
        span = next;
    }
    let labels = (1..=span.dimension()).map(|i| format!("b{i}")).collect();
    subalgebra(&m, &span, labels)
}

/// The group algebra of the cyclic group of order `n`, basis `1, g, g^2, ...`.
pub fn cyclic_group_algebra(field: Field, n: usize) -> StructAlgebra {
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push((i, j, (i + j) % n, field.one()));
        }
    }
    let mut identity = vec![field.zero(); n];
    identity[0] = field.one();
    StructAlgebra::from_sparse(field, labels, &entries, identity).expect("cyclic group")
}

/// Coordinates of `v` in an echelon basis, or `None` if `v` is outside the span.
pub fn coordinates_in(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return v.iter().all(Scalar::is_zero).then(Vec::new);
    }
    Matrix::from_columns(field, v.len(), basis).solve(v)
}

/// The subalgebra spanned by `space`, with basis labels `labels`.
pub fn subalgebra(a: &StructAlgebra, space: &Subspace, labels: Vec<String>) -> Result<StructAlgebra> {
    let field = a.field();
    let basis = space.basis();
    if labels.len() != basis.len() {
        return Err(Error::Malformed("label count does not match subalgebra dimension".into()));
    }
    let identity = coordinates_in(field, basis, a.identity())
        .ok_or_else(|| Error::Malformed("subspace does not contain the identity".into()))?;
    let mut table = Vec::new();
    for u in basis {
        let mut row = Vec::new();
        for v in basis {
            let c = coordinates_in(field, basis, &a.mul(u, v))
                .ok_or_else(|| Error::Malformed("subspace is not closed under multiplication".into()))?;
            row.push(c);
        }
        table.push(row);
    }
    StructAlgebra::new(field, labels, table, identity)
}

/// `A / I` together with the projection data.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: StructAlgebra,
    /// Ambient basis indices whose images form the quotient basis.
    pub representatives: Vec<usize>,
    ideal: Subspace,
}

impl Quotient {
    /// Reduces `v` modulo the ideal and reads off quotient coordinates.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for row in self.ideal.basis() {
            let p = row.iter().position(|c| !c.is_zero()).unwrap();
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &(&f * y);
            }
        }
        self.representatives.iter().map(|&i| r[i].clone()).collect()
    }

    /// The preimage supported on the representative basis vectors.
    pub fn lift(&self, v: &[Scalar], ambient_dim: usize) -> Vec<Scalar> {
        let field = self.algebra.field();
        let mut out = vec![field.zero(); ambient_dim];
        for (c, &i) in v.iter().zip(&self.representatives) {
            out[i] = c.clone();
        }
        out
    }
}

/// Quotient by a two-sided ideal.
pub fn quotient(a: &StructAlgebra, ideal: &Subspace) -> Result<Quotient> {
    if !a.is_ideal(ideal) {
        return Err(Error::Malformed("subspace is not a two-sided ideal".into()));
    }
    let pivots: Vec<usize> = ideal
        .basis()
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let representatives: Vec<usize> = (0..a.dim()).filter(|i| !pivots.contains(i)).collect();
    let labels: Vec<String> = representatives.iter().map(|&i| a.labels()[i].clone()).collect();
    let shell = Quotient {
        algebra: field_algebra(a.field()),
        representatives: representatives.clone(),
        ideal: ideal.clone(),
    };
    let mut table = Vec::new();
    for &i in &representatives {
        let mut row = Vec::new();
        for &j in &representatives {
            row.push(shell.project(a.product_of_basis(i, j)));
        }
        table.push(row);
    }
    let identity = shell.project(a.identity());
    let algebra = StructAlgebra::new(a.field(), labels, table, identity)?;
    Ok(Quotient { algebra, ..shell })
}
