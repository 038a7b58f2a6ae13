//! Exact computations for n-Lie algebras, their representations,
//! Rota-Baxter operators, cochain complexes and deformations.

pub mod error;
pub mod kernel;
pub mod multilinear;

pub use error::{Error, Result};
pub mod nlie;
pub mod report;
pub mod cochain;
pub mod rota_baxter;
pub mod deformation;
pub mod lift;
pub mod samples;
