//! Combinatorial invariants of Veronese subrings `S^x` of weighted projective
//! line coordinate rings: dual graphs of the minimal resolution, special CM
//! modules, fundamental and canonical cycles, reconstruction-algebra quivers,
//! the 0-Wahl presentation and the domestic table.
//!
//! Every classification the crate emits has a brute-force counterpart
//! (`hj::ito_oracle`, `resolution::speciality_oracle`,
//! `reconalg::quiver_from_intersection`) that can be run against it.

pub mod cli;
pub mod error;
pub mod gradedring;
pub mod hj;
pub mod intersection;
pub mod lgroup;
pub mod linalg;
pub mod reconalg;
pub mod resolution;
pub mod sweep;

pub use error::{Error, Result};
pub use lgroup::{LElement, Parameters, Point};

/// Exact rational coefficients used throughout.
pub type Rational = num_rational::BigRational;
