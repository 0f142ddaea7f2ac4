//! Exact linear algebra over the rationals and prime fields.

mod complex;
mod matrix;
mod scalar;
mod subspace;

pub use complex::{Block, CochainComplex, Cohomology, DoubleComplex, Totalization};
pub use matrix::Matrix;
pub use scalar::{sign, Field, Scalar, MAX_MODULUS};
pub use subspace::Subspace;
