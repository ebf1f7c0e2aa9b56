//! Truncated formal power series with exact rational coefficients, and the
//! generating functions built from them.

mod bi;
pub mod kernels;
mod uni;

pub use bi::Series2;
pub use uni::Series1;
