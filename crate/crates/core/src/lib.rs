pub mod counting;
pub mod csl;
pub mod error;
pub mod hnf;
pub mod icosian;
pub mod lattice;
pub mod quat;
pub mod ring;
pub mod shortvec;

pub use error::{CslError, Result};
