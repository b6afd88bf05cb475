//! Galois orbit counts for weight-2 newforms of prime level, computed from
//! Brandt matrices of definite quaternion algebras.

pub mod arith;
pub mod brandt;
pub mod error;
pub mod harness;
pub mod heuristics;
pub mod orbits;
pub mod polyfactor;
pub mod quaternion;

pub use error::{Error, Result};
