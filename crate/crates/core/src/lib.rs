//! Intersectivity measures `δ`, `δ̄` and positive-exponential-sum constants
//! `λ`, `λ⁻`, `λ⁺`, `λ±` of standard sets in finite abelian groups.

pub mod clique;
pub mod combinatorial;
pub mod dyadic;
pub mod error;
pub mod fourier;
pub mod group;
pub mod lp;
pub mod parse;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
