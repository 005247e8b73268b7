//! Signal constellations built from orbits of arithmetic Fuchsian groups,
//! decoded by point reduction into a fundamental domain.

pub mod channel;
pub mod cli;
pub mod codebook;
pub mod decode;
pub mod error;
pub mod exact;
pub mod fuchsian;
pub mod unitsgen;

pub use error::{Error, Result};
