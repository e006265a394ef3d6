pub mod acceptance;
pub mod affine_weyl;
pub mod blocks;
pub mod endoscopy;
pub mod hecke;
pub mod error;
pub mod fixtures;
pub mod gauge;
pub mod laurent;
pub mod lattice;
pub mod root_datum;
pub mod soergel;

pub use error::{Error, Result};
