//! Exact integer linear algebra and degree-truncated ideal lattices, used as
//! a brute-force cross-check of the Gröbner machinery.

mod echelon;
mod matrix;
mod truncated;

pub use matrix::{hnf, kernel_z, IntMatrix};
pub use truncated::{monomial_index, preimage_lattice, truncated_ideal_lattice, LinearMap, TruncatedLattice};
