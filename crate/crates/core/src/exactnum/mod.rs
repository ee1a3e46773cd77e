//! Exact scalar, polynomial and linear-algebra arithmetic.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod subspace;
pub mod univariate;

pub use factor::{factor_univariate, factor_univariate_seeded, squarefree_part, Factorization};
pub use field::{Field, Scalar};
pub use matrix::{Matrix, PolyMatrix};
pub use parse::{parse_ring_tag, parse_scalar, EvalTarget, Expr};
pub use poly::{Monomial, Poly, PolyRing};
pub use subspace::Subspace;
pub use univariate::UniPoly;
