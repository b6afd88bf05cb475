//! Exact integer arithmetic kernels shared by the rest of the crate.

pub mod fp_poly;
pub mod hilbert;
pub mod lattice;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod sturm;

pub use hilbert::{hilbert_symbol, Place};
pub use lattice::{short_vector_count, GramForm};
pub use matrix::{charpoly, det_bareiss, kernel_basis, restrict_operator, IntMatrix};
pub use poly::IntPolynomial;
pub use sturm::sturm_count;
