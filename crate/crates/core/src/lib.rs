pub mod arith;
pub mod bring;
pub mod connecting;
pub mod error;
pub mod tmfpi;
pub mod homology;
pub mod spectral;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
