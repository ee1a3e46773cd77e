//! Finite-dimensional structure-constant algebras and their polynomial extensions.

pub mod center;
pub mod constructions;
pub mod element;
pub mod idempotents;
pub mod membership;
pub mod radical;
pub mod structure;
pub mod units;

pub use center::{center_basis, center_subspace};
pub use constructions::{
    cyclic_group_algebra, direct_sum, field_algebra, generated_matrix_algebra, matrix_algebra, monomial_quotient, quaternion_algebra, quotient,
    subalgebra, truncated_polynomial, upper_triangular,
};
pub use element::{poly_extension, AlgElement, Extension};
pub use idempotents::{central_idempotents, central_idempotents_with, IdempotentReport};
pub use membership::{subalgebra_membership, Letter, Membership, Word};
pub use radical::{jacobson_radical, radical_report, RadicalReport};
pub use structure::StructAlgebra;
pub use units::{is_unit, UnitReport};
