//! Exact scalar, polynomial and power-series arithmetic.

pub mod bernoulli;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod todd;

pub use bernoulli::bernoulli;
pub use linalg::Matrix;
pub use poly::{diff_apply, pairing, Exponents, GradedSeries, Polynomial};
pub use rational::Rational;
pub use todd::todd_series;
