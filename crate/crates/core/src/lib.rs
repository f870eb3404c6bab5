//! Exact propagation of floating-point multiplication constraints `x (*) y = z`
//! over parametric formats with directed or nearest rounding.

pub mod cli;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod format;
pub mod opcount;
pub mod oracle;
pub mod propagator;
pub mod rounding;
pub mod solver;

pub use error::{Clause, Error, Result};
pub use exact::{ExtReal, Rat, RealInterval};
pub use format::{Float, FloatFormat, FloatInterval};
pub use rounding::RoundingMode;
