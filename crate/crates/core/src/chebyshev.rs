//! Chebyshev polynomials of the first kind and the Riccati-type relation
//! between consecutive ratios `T_{n−1}/T_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, RatFun};
use crate::contfrac::{CfTerm, ContinuedFraction};

/// Sign of the `x` shift in `f_n = T_{n−1}/T_n ± x`.
///
/// Only `CorrectedMinus` satisfies `(f_n − x)(f_{n+1} + x) = −1`; the `+x`
/// variant is kept because it is the form quoted in the literature, with
/// `f₁ = x + 1/x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    PlusShift,
    #[default]
    CorrectedMinus,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::PlusShift => "plus_shift",
            Convention::CorrectedMinus => "corrected_minus",
        })
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus_shift" => Ok(Convention::PlusShift),
            "corrected_minus" => Ok(Convention::CorrectedMinus),
            other => Err(format!("unknown convention {other:?}")),
        }
    }
}

/// `T_{n−1}`, `T_n` and `f_n` under one convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevPair {
    pub n: usize,
    pub t_prev: Poly,
    pub t_cur: Poly,
    pub f: RatFun,
}

impl ChebyshevPair {
    pub fn new(n: usize, convention: Convention) -> ChebyshevPair {
        assert!(n >= 1, "n must be positive");
        let mut seq = chebyshev_sequence(n);
        let t_cur = seq.pop().expect("n + 1 polynomials");
        let t_prev = seq.pop().expect("n ≥ 1");
        let f = ratio_plus_shift(&t_prev, &t_cur, convention);
        ChebyshevPair {
            n,
            t_prev,
            t_cur,
            f,
        }
    }
}

/// `T_0, …, T_n` by `T_{k+1} = 2x·T_k − T_{k−1}`.
pub fn chebyshev_sequence(n: usize) -> Vec<Poly> {
    let two_x = Poly::from_ints(&[0, 2]);
    let mut out = vec![Poly::one()];
    if n >= 1 {
        out.push(Poly::x());
    }
    for k in 1..n {
        let next = &(&two_x * &out[k]) - &out[k - 1];
        out.push(next);
    }
    out
}

pub fn chebyshev_t(n: usize) -> Poly {
    chebyshev_sequence(n).pop().expect("nonempty")
}

fn ratio_plus_shift(t_prev: &Poly, t_cur: &Poly, convention: Convention) -> RatFun {
    let ratio = RatFun::normalize(t_prev.clone(), t_cur.clone()).expect("T_n is nonzero");
    match convention {
        Convention::PlusShift => &ratio + &RatFun::x(),
        Convention::CorrectedMinus => &ratio - &RatFun::x(),
    }
}

/// `f_n = T_{n−1}/T_n ± x`.
pub fn chebyshev_f(n: usize, convention: Convention) -> RatFun {
    ChebyshevPair::new(n, convention).f
}

/// `(f_n − x)(f_{n+1} + x) + 1`.
pub fn pair_residual(n: usize, convention: Convention) -> RatFun {
    assert!(n >= 1, "n must be positive");
    let seq = chebyshev_sequence(n + 1);
    let f_n = ratio_plus_shift(&seq[n - 1], &seq[n], convention);
    let f_next = ratio_plus_shift(&seq[n], &seq[n + 1], convention);
    let x = RatFun::x();
    &(&(&f_n - &x) * &(&f_next + &x)) + &RatFun::one()
}

/// `(1 − x²)T_n'' − x·T_n' + n²T_n`.
pub fn ode_residual(n: usize) -> Poly {
    let t = chebyshev_t(n);
    let d1 = t.derivative();
    let d2 = d1.derivative();
    let one_minus_x2 = Poly::from_ints(&[1, 0, -1]);
    let nn = int((n * n) as i64);
    &(&(&one_minus_x2 * &d2) - &(&Poly::x() * &d1)) + &t.scale(&nn)
}

/// `f_n` (corrected convention) unrolled through `f_{k+1} = −x − 1/(f_k − x)`
/// down to `f₁ − x = 1/x − 2x`.
pub fn chebyshev_cf(n: usize) -> ContinuedFraction {
    assert!(n >= 1, "n must be positive");
    let f1 = chebyshev_f(1, Convention::CorrectedMinus);
    if n == 1 {
        return ContinuedFraction::new(f1, Vec::new());
    }
    let minus_one = RatFun::from_int(-1);
    let minus_2x = RatFun::from_poly(Poly::from_ints(&[0, -2]));
    let mut terms: Vec<CfTerm> = (2..n)
        .map(|_| CfTerm {
            numerator: minus_one.clone(),
            denominator: minus_2x.clone(),
        })
        .collect();
    terms.push(CfTerm {
        numerator: minus_one,
        denominator: &f1 - &RatFun::x(),
    });
    ContinuedFraction::new(-RatFun::x(), terms)
}
