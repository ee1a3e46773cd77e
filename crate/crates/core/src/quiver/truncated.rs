//! `kQ / (paths of length > L)` as a finite-dimensional structure-constant algebra.

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::exactnum::Field;

use super::graph::Quiver;
use super::path::{paths_of_length, Path};

/// Basis: paths of length `<= max_len`, labelled `e_v` or `a*b*..`.
pub fn truncated_path_algebra(q: &Quiver, field: Field, max_len: usize) -> Result<StructAlgebra> {
    if q.num_vertices() == 0 {
        return Err(Error::Malformed("quiver has no vertices".into()));
    }
    let basis: Vec<Path> = (0..=max_len).flat_map(|d| paths_of_length(q, d)).collect();
    let labels: Vec<String> = basis.iter().map(|p| p.display(q)).collect();
    let mut entries = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            if let Some(ab) = a.concat(b, q) {
                if let Some(k) = basis.iter().position(|p| *p == ab) {
                    entries.push((i, j, k, field.one()));
                }
            }
        }
    }
    let identity = basis
        .iter()
        .map(|p| if p.is_empty() { field.one() } else { field.zero() })
        .collect();
    StructAlgebra::from_sparse(field, labels, &entries, identity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_truncation_is_truncated_polynomials() {
        let a = truncated_path_algebra(&Quiver::loops(1), Field::Rationals, 3).unwrap();
        assert_eq!(a.labels(), ["e_v", "x1", "x1*x1", "x1*x1*x1"]);
        assert!(a.is_commutative());
        let k = truncated_path_algebra(&Quiver::kronecker(), Field::Rationals, 5).unwrap();
        assert_eq!(k.dim(), 4);
    }
}
