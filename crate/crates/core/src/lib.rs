pub mod census;
pub mod cli;
pub mod codekit;
pub mod error;
pub mod factorshape;
pub mod galois;
pub mod graydist;
pub mod linalg;
pub mod semiring;
pub mod tables;

pub use error::{Error, Result};
