//! Affine cell decompositions of punctual Hilbert schemes of plane branches
//! with semigroup `⟨p, q⟩`, together with a truncated power-series standard
//! basis engine over `ℂ[[t^p, φ]]` (with exact rational coefficients).

pub mod cells;
pub mod error;
pub mod oracle;
pub mod ps;
pub mod semigroup;
pub mod semimodule;
pub mod series;
pub mod stdbasis;
pub mod template;
pub mod verify;

pub use error::{Error, Result};
