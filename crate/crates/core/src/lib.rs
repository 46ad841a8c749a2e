//! Exact rational-function algebra, differential operators with rational
//! coefficients, the Darboux/Riccati ladder for half-integer Bessel operators
//! and its continued-fraction forms.

pub mod algebra;
pub mod bessel;
pub mod chebyshev;
pub mod contfrac;
pub mod error;
pub mod grammar;
pub mod operator;
pub mod riccati;
pub mod verify;

pub use error::{Error, Result};
