//! Text grammar shared by the parser and the pretty-printer.
//!
//! Whatever the printer emits parses back to the same canonical value.

mod parse;
mod print;

pub use parse::{parse_expr, parse_function, parse_operator, Expr};
pub use print::{format_diffop, format_poly, format_ratfun, format_sum, is_atomic};
pub(crate) use print::{format_fraction, format_with_fraction};
