pub mod asymptotics;
pub mod error;
pub mod fresnel;
pub mod materials;
pub mod matsubara;
pub mod quadrature;
pub mod quantities;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
