//! Polynomial approximation of spectral abscissa functions of parameterized
//! (delay) eigenvalue problems: Galerkin and collocation builds on graded
//! Legendre/Chebyshev tensor bases, quadrature/cubature rules, polynomial-
//! chaos statistics, and the analytic coefficient oracles for the 1-D
//! benchmark problems.

pub mod approx;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod pce;
pub mod polybasis;
pub mod problems;
pub mod quadrature;

pub use error::{Error, Result};
