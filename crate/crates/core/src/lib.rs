pub mod analytic;
pub mod entanglement;
pub mod error;
pub mod fock;
mod linalg;
pub mod optics;
pub mod protocols;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
