pub mod base;
pub mod field;
pub mod finite_field;
pub mod poly;
pub mod ratfunc;

pub use base::{is_power_of, BaseValuation, PAdic, TAdic, Trivial};
pub use field::{Field, Rationals};
pub use finite_field::{FfElem, FiniteField};
pub use poly::Poly;
pub use ratfunc::{RatFunc, RationalFunctions};
