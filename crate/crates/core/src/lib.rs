//! Matrices of traces, radical ideals and roots of zero-dimensional
//! polynomial systems.
//!
//! Two independent pipelines are provided: one built on Macaulay and moment
//! matrices ([`macaulay`], [`momtrace`]) and one built on Bezout matrices
//! ([`bezout`]). Both work over exact rationals or a tolerance-compared
//! floating field.

pub mod bezout;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod macaulay;
pub mod momtrace;
pub mod poly;
pub mod scalar;
pub mod system;
pub mod univariate;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use poly::{mono_basis, Monomial, Polynomial};
pub use scalar::{Approx, Scalar, Q};
pub use system::{jacobian_det, PolySystem};
