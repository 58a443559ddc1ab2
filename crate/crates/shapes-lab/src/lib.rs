//! Flat cone metrics on the sphere and the lattice constructions around them.

pub mod cli;
pub mod cone;
pub mod eisenstein;
pub mod error;
pub mod fmt;
pub mod hexagon;
pub mod mesh;
pub mod octahedral;
pub mod orbifolds;
pub mod quotient;
pub mod triangulations;

pub use eisenstein::EisensteinInt;
pub use error::{Error, Result};
