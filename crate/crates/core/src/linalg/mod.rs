//! Dense exact linear algebra over a [`Field`](crate::field::Field) and over
//! its polynomial ring.

mod bareiss;
mod matrix;
mod poly;

use thiserror::Error;

pub use bareiss::{det_bareiss, Domain, PolyRing};
pub use matrix::{dot, Matrix};
pub use poly::{det_polymat, Degree, Poly, PolyMat, PolyVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: expected {expected}, got {rows}x{cols}")]
    Shape {
        expected: String,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}
