//! Exact computation of the Todd-operator interpolation polynomials
//! `f_z = psi_X(todd(X, z))` for totally unimodular vector configurations,
//! together with the box spline, multivariate spline and vector partition
//! function they interact with.

pub mod algebra;
pub mod cli;
pub mod document;
pub mod error;
pub mod geometry;
pub mod matroid;
pub mod pspace;
pub mod splines;
pub mod toddcalc;
pub mod verify;

pub use error::{Error, Result};
