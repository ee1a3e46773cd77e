//! Finite-dimensional associative unital algebras given by structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Scalar, Subspace};

/// `b_i b_j = sum_k c_{ijk} b_k`, validated associative and unital at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i][j]` holds the coordinates of `b_i b_j`.
    table: Vec<Vec<Vec<Scalar>>>,
    identity: Vec<Scalar>,
}

impl StructAlgebra {
    /// Validates shape, associativity on every basis triple and the unit law.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        identity: Vec<Scalar>,
    ) -> Result<StructAlgebra> {
        let m = labels.len();
        if table.len() != m
            || table.iter().any(|row| row.len() != m || row.iter().any(|v| v.len() != m))
            || identity.len() != m
        {
            return Err(Error::Malformed(format!(
                "structure constants must be {m} x {m} x {m} with a length-{m} identity"
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Malformed(format!("duplicate basis label `{l}`")));
            }
        }
        let alg = StructAlgebra {
            field,
            labels,
            table,
            identity,
        };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    /// Builds from sparse `(i, j, k, c)` entries meaning `b_i b_j += c b_k`.
    pub fn from_sparse(
        field: Field,
        labels: Vec<String>,
        entries: &[(usize, usize, usize, Scalar)],
        identity: Vec<Scalar>,
    ) -> Result<StructAlgebra> {
        let m = labels.len();
        let mut table = vec![vec![vec![field.zero(); m]; m]; m];
        for (i, j, k, c) in entries {
            if *i >= m || *j >= m || *k >= m {
                return Err(Error::Malformed(format!(
                    "structure constant index ({i}, {j}, {k}) out of range"
                )));
            }
            table[*i][*j][*k] += c;
        }
        StructAlgebra::new(field, labels, table, identity)
    }

    fn check_associative(&self) -> Result<()> {
        let m = self.dim();
        for i in 0..m {
            for j in 0..m {
                let ij = &self.table[i][j];
                for k in 0..m {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let jk = &self.table[j][k];
                    let right = self.mul(&self.basis_vector(i), jk);
                    if left != right {
                        return Err(Error::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&self.identity, &b) != b || self.mul(&b, &self.identity) != b {
                return Err(Error::MissingIdentity(self.labels[i].clone()));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> &[Scalar] {
        &self.identity
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }

    pub fn pow(&self, a: &[Scalar], e: u32) -> Vec<Scalar> {
        let mut r = self.identity.clone();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn is_central(&self, z: &[Scalar]) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_vector(i);
            self.commutator(z, &b).iter().all(Scalar::is_zero)
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Matrix of `x -> a x`; column `j` is `a b_j`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(&self.basis_vector(j), a))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Trace of the left regular representation.
    pub fn reg_trace(&self, a: &[Scalar]) -> Scalar {
        self.left_mult(a).trace()
    }

    pub fn is_zero_vec(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    /// Smallest `k >= 1` with `a^k = 0`, if any (checked up to `dim + 1`).
    pub fn nilpotency_index(&self, a: &[Scalar]) -> Option<usize> {
        let mut p = a.to_vec();
        for k in 1..=self.dim() + 1 {
            if Self::is_zero_vec(&p) {
                return Some(k);
            }
            p = self.mul(&p, a);
        }
        None
    }

    /// Span of all products `u v` with `u` in `a`, `v` in `b`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                vs.push(self.mul(u, v));
            }
        }
        Subspace::span(self.field, self.dim(), &vs)
    }

    /// Whether the subspace is a two-sided ideal.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            (0..self.dim()).all(|i| {
                let b = self.basis_vector(i);
                s.contains(&self.mul(v, &b)) && s.contains(&self.mul(&b, v))
            })
        })
    }

    /// Smallest `k` with `I^k = 0`, or `None` if the powers stabilize at a nonzero space.
    pub fn ideal_nilpotency_index(&self, ideal: &Subspace) -> Option<usize> {
        let mut power = ideal.clone();
        for k in 1..=self.dim() + 1 {
            if power.is_zero() {
                return Some(k);
            }
            let next = self.product_space(&power, ideal);
            if next.dimension() == power.dimension() {
                return None;
            }
            power = next;
        }
        None
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        format_combination(&self.labels, v)
    }
}

/// `2*e11 - e22`, `0` for the zero vector.
pub fn format_combination(labels: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative_rational();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs.is_one() {
            out.push_str(l);
        } else {
            out.push_str(&format!("{abs}*{l}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for StructAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-dimensional algebra over {} with basis [{}]",
            self.dim(),
            self.field,
            self.labels.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn associativity_failure_names_triple() {
        // b1*b1 = b2, b1*b2 = 0, b2*b1 = b2 ... and b0 = identity
        let f = Field::Rationals;
        let one = f.one();
        let labels: Vec<String> = ["1", "a", "b"].iter().map(|s| s.to_string()).collect();
        let mut entries = Vec::new();
        for i in 0..3 {
            entries.push((0, i, i, one.clone()));
            if i != 0 {
                entries.push((i, 0, i, one.clone()));
            }
        }
        entries.push((1, 1, 2, one.clone()));
        entries.push((2, 1, 2, one.clone()));
        let err = StructAlgebra::from_sparse(f, labels, &entries, vec![one, f.zero(), f.zero()])
            .unwrap_err();
        assert_eq!(err, Error::NotAssociative("a".into(), "a".into(), "a".into()));
    }

    #[test]
    fn missing_identity() {
        let f = Field::Rationals;
        let err = StructAlgebra::from_sparse(f, vec!["a".into()], &[], vec![f.one()]).unwrap_err();
        assert_eq!(err, Error::MissingIdentity("a".into()));
    }

    #[test]
    fn combination_format() {
        let f = Field::Rationals;
        let labels: Vec<String> = vec!["x".into(), "y".into()];
        assert_eq!(format_combination(&labels, &[f.from_i64(2), f.from_i64(-1)]), "2*x - y");
        assert_eq!(format_combination(&labels, &[f.zero(), f.zero()]), "0");
    }
}
