pub mod diffops;
pub mod error;
pub mod groebner;
pub mod lattice;
pub mod pderiv;
pub mod poly;
pub mod powers;

pub use error::{Error, Result};
