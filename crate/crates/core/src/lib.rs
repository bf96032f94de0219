//! Exact generalized Cholesky factorization for symmetric matrices over finite
//! fields `F_{p^k}`.
//!
//! A symmetric matrix whose leading principal minors are all nonzero belongs to
//! exactly one cone `LPM_n(eps)`, indexed by the quadratic characters `eps` of
//! those minors. Over definite fields (`q = 3 mod 4`) and in characteristic 2,
//! every member factors uniquely as `L * A_eps * L^T` against any fixed anchor
//! `A_eps` of the same cone, with `L` lower triangular with square diagonal.
//!
//! Modules:
//! - [`gf`]: field arithmetic, quadratic character, Frobenius, positive roots
//! - [`matfq`]: dense matrices, determinants, minors, inverses
//! - [`cones`]: sign patterns, anchors, cone bijections
//! - [`cholesky`]: the factorization and the maps built on it
//! - [`entrywise`]: entrywise transforms and preserver classification
//! - [`groups`]: group laws on triangular factors and on the cones
//! - [`census`]: exhaustive enumeration and cone counting
//! - [`textio`]: text formats shared by the CLI and the C interface

pub mod census;
pub mod cholesky;
pub mod cones;
pub mod entrywise;
pub mod error;
pub mod gf;
pub mod groups;
pub mod matfq;
pub mod sample;
pub mod textio;

pub use cholesky::{Factorization, LowerPosTri};
pub use cones::{AnchorPair, SignPattern};
pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldClass};
pub use matfq::{Matrix, SymMatrix};
