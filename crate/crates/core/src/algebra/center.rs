use crate::error::Result;
use crate::exactnum::{Matrix, Scalar, Subspace};

use super::constructions::subalgebra;
use super::structure::StructAlgebra;

/// `Z(A)` as a subspace: the common kernel of `z -> z b_i - b_i z`.
pub fn center_subspace(a: &StructAlgebra) -> Subspace {
    let m = a.dim();
    let mut rows = Vec::new();
    for i in 0..m {
        let b = a.basis_vector(i);
        let comm = a.right_mult(&b).sub(&a.left_mult(&b));
        for r in 0..m {
            rows.push(comm.row(r).to_vec());
        }
    }
    if rows.is_empty() {
        return Subspace::zero(a.field(), m);
    }
    let kernel = Matrix::from_rows(a.field(), rows).nullspace();
    Subspace::span(a.field(), m, &kernel)
}

/// Echelonized basis of `Z(A)` in the declared basis order.
pub fn center_basis(a: &StructAlgebra) -> Vec<Vec<Scalar>> {
    center_subspace(a).basis().to_vec()
}

/// `Z(A)` as an algebra in its own right, with basis `z1, z2, ...`.
pub fn center_algebra(a: &StructAlgebra) -> Result<(StructAlgebra, Subspace)> {
    let z = center_subspace(a);
    let labels = (1..=z.dimension()).map(|i| format!("z{i}")).collect();
    Ok((subalgebra(a, &z, labels)?, z))
}

/// Ambient coordinates of an element of the center algebra.
pub fn center_to_ambient(z: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
    let field = z.field();
    let mut out = vec![field.zero(); z.ambient_dim()];
    for (c, b) in v.iter().zip(z.basis()) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += &(c * x);
        }
    }
    out
}
