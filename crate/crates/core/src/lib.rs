pub mod analytic;
pub mod error;
pub mod experiments;
pub mod math_core;
pub mod montecarlo;
pub mod network;
pub mod optimizer;
pub mod quadrature;

pub use error::{Result, SecnetError};
pub use network::{Mode, NetworkConfig};
