//! Exact arithmetic for valuations on `K[x]` built from MacLane chains:
//! evaluation, key polynomials, residual polynomials and continuous chains.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod ordgroup;

pub use error::{Error, Result};
pub use exec::Exec;
pub use ordgroup::ExtValue;
pub mod fixtures;
pub mod keypoly;
pub mod limitchain;
pub mod sample;
pub mod suites;
pub mod valuation;
