//! Linear differential operators in `x`, Euler operators in `t = −log x`,
//! right division by first-order factors and the Darboux transformation.

mod diffop;
mod euler;
mod schrodinger;

pub use diffop::{inverse_substitution, inverse_substitution_jet, DiffOp};
pub use euler::EulerOp;
pub use schrodinger::{
    gauge_conjugate, normalize_to_schrodinger, schrodinger_factor_q, SchrodingerForm,
};
