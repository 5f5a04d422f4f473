//! Exact noncommutative linear algebra over skew fields: quasideterminants,
//! positive quasiminors, Gauss decompositions, and factorizations of double
//! Bruhat cells of `GL_n` over a division ring.

pub mod cells;
pub mod error;
pub mod factorize;
pub mod fixtures;
pub mod gauss;
pub mod matrix;
pub mod quasidet;
pub mod skewfield;
pub mod verify;
pub mod weyl;

pub use cells::CellLabel;
pub use error::{Error, Result};
pub use factorize::FactorizationOutput;
pub use matrix::{IndexSet, Matrix};
pub use skewfield::{Quaternion, RatFunc, Rational, Scalar};
pub use weyl::{DoubleWord, Permutation};
