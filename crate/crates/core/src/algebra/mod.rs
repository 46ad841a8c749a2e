//! Exact scalars, dense univariate polynomials and canonical rational functions.
//!
//! Every value here is exact. Floating point only enters through the explicit
//! `to_f64` conversions used by numeric cross-checks.

mod poly;
mod ratfun;

pub use poly::Poly;
pub use ratfun::RatFun;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational scalar, always kept in lowest terms with a
/// positive denominator.
pub type BigRat = num_rational::BigRational;

/// `p/q` as a [`BigRat`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRat {
    BigRat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(p))
}

/// Decimal `"p/q"` (or `"p"` when `q = 1`).
pub fn rat_to_string(r: &BigRat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Option<BigRat> {
    s.trim().parse().ok()
}

pub fn rat_to_f64(r: &BigRat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float.
pub fn rat_from_f64(x: f64) -> Option<BigRat> {
    BigRat::from_float(x)
}

/// Exact square root, if `r ≥ 0` is the square of a rational.
pub fn rat_sqrt(r: &BigRat) -> Option<BigRat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRat::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRat::new(n, d))
    } else {
        None
    }
}

/// Serde adapters for the `"p/q"` string encoding.
pub(crate) mod serde_rat {
    use super::{parse_rat, BigRat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }
}
