//! Dense matrices over a field, and division-free determinants over polynomial rings.

use std::sync::Arc;

use super::field::{Field, Scalar};
use super::poly::{Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel; one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.inv().unwrap();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![self.field.zero(); n];
            e[j] = self.field.one();
            cols.push(self.solve(&e)?);
        }
        if self.rank() < n {
            return None;
        }
        Some(Matrix::from_columns(self.field, n, &cols))
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
}

/// Reduced echelon basis of the span of `vectors`.
pub fn echelon_basis(field: Field, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, vectors.to_vec());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(field: Field, vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let m = Matrix::from_columns(field, v.len(), vectors);
    m.solve(v).is_some()
}

/// Basis of the intersection of two subspaces given by spanning vectors.
pub fn intersect_spans(
    field: Field,
    dim: usize,
    a: &[Vec<Scalar>],
    b: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i - sum y_j b_j = 0, map the x-part back.
    let mut cols: Vec<Vec<Scalar>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|c| -c).collect()));
    let m = Matrix::from_columns(field, dim, &cols);
    let kernel = m.nullspace();
    let images: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| {
            let mut v = vec![field.zero(); dim];
            for (coef, vec) in k.iter().zip(a) {
                if coef.is_zero() {
                    continue;
                }
                for (t, x) in v.iter_mut().zip(vec) {
                    *t += &(coef * x);
                }
            }
            v
        })
        .collect();
    echelon_basis(field, &images)
}

/// Square matrix over a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    n: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let n = rows.len();
        let data: Vec<Poly> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * n, "matrix must be square");
        PolyMatrix {
            ring: ring.clone(),
            n,
            data,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.n + j]
    }

    fn identity(ring: &Arc<PolyRing>, n: usize) -> PolyMatrix {
        let mut data = vec![Poly::zero(ring); n * n];
        for i in 0..n {
            data[i * n + i] = Poly::one(ring);
        }
        PolyMatrix {
            ring: ring.clone(),
            n,
            data,
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let mut data = vec![Poly::zero(&self.ring); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j] = &data[i * n + j] + &(a * b);
                    }
                }
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            n,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        (0..self.n)
            .map(|i| {
                let mut acc = Poly::zero(&self.ring);
                for j in 0..self.n {
                    if !self.get(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.get(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Coefficients `[1, c_{n-1}, ..., c_0]` of `det(lambda I - M)` via Berkowitz,
    /// which uses no division.
    pub fn charpoly(&self) -> Vec<Poly> {
        let ring = &self.ring;
        let mut p: Vec<Poly> = vec![Poly::one(ring)];
        for r in 1..=self.n {
            let k = r - 1;
            // column S = M[0..k, k], row R = M[k, 0..k], corner a = M[k][k]
            let a = self.get(k, k).clone();
            let mut toeplitz = vec![Poly::one(ring), -&a];
            let mut v: Vec<Poly> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rv = (0..k).fold(Poly::zero(ring), |acc, j| {
                    &acc + &(self.get(k, j) * &v[j])
                });
                toeplitz.push(-&rv);
                v = (0..k)
                    .map(|i| {
                        (0..k).fold(Poly::zero(ring), |acc, j| &acc + &(self.get(i, j) * &v[j]))
                    })
                    .collect();
            }
            let mut next = vec![Poly::zero(ring); r + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if i >= j {
                        *slot = &*slot + &(&toeplitz[i - j] * pj);
                    }
                }
            }
            p = next;
        }
        p
    }

    pub fn det(&self) -> Poly {
        let cp = self.charpoly();
        let c0 = cp[self.n].clone();
        if self.n % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Adjugate via Cayley-Hamilton: `adj(M) = (-1)^(n+1) (M^(n-1) + c_{n-1} M^(n-2) + ... + c_1)`.
    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.n;
        let cp = self.charpoly();
        let mut acc = PolyMatrix::identity(&self.ring, n);
        // Horner: acc = M^{n-1} + c_{n-1} M^{n-2} + ... + c_1 I
        for coeff in cp.iter().take(n).skip(1) {
            acc = acc.mul(self);
            for i in 0..n {
                acc.data[i * n + i] = &acc.data[i * n + i] + coeff;
            }
        }
        if n % 2 == 0 {
            for d in acc.data.iter_mut() {
                *d = -&*d;
            }
        }
        acc
    }
}
