use super::field::{Field, Scalar};
use super::matrix::{echelon_basis, in_span, intersect_spans};

/// A subspace of `field^dim` held as a reduced echelon basis, so equal subspaces
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn span(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        Subspace {
            field,
            dim,
            basis: echelon_basis(field, vectors),
        }
    }

    pub fn zero(field: Field, dim: usize) -> Subspace {
        Subspace {
            field,
            dim,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, dim: usize) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = (0..dim)
            .map(|i| {
                let mut v = vec![field.zero(); dim];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace::span(field, dim, &vectors)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        in_span(self.field, &self.basis, v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        Subspace {
            field: self.field,
            dim: self.dim,
            basis: intersect_spans(self.field, self.dim, &self.basis, &other.basis),
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.dim, &v)
    }
}
