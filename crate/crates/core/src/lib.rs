//! Exact computer algebra for finite-dimensional algebras and their polynomial
//! extensions: centers, radicals, central idempotents, derivations, quiver path
//! algebras, discriminants of orders over `k[x]`, Azumaya loci, and verification
//! of explicit isomorphisms `A[t_1..t_n] -> B[s_1..s_n]`.

pub mod algebra;
pub mod azudisc;
pub mod derivations;
pub mod error;
pub mod exactnum;
pub mod io;
pub mod quiver;
pub mod witness;

pub use error::{Error, Result};
