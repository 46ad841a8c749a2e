//! Riccati equations for logarithmic derivatives and the order-raising step
//! between the Bessel Riccati equations at orders `β` and `β + 1`.
//!
//! Everything works in the variable `t` with `x = e^(−t)`, so `f_t = −x·f_x`
//! and the forcing term `μ = λx²` satisfies `μ_t = −2μ`.

mod ladder;

pub use ladder::{
    ladder, printed_displays, to_continued_fraction, Branch, LadderState, PrintedDisplay,
};

use num_traits::{One, Zero};

use crate::algebra::{int, rat, rat_sqrt, BigRat, Poly, RatFun};
use crate::error::{Error, Result};
use crate::operator::DiffOp;

/// `a₀(f' + f²) + a₁f + a₂ = λ` for `f = ψ'/ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiForm {
    pub a0: RatFun,
    pub a1: RatFun,
    pub a2: RatFun,
    pub lambda: BigRat,
}

impl RiccatiForm {
    pub fn from_operator(op: &DiffOp, lambda: BigRat) -> Result<RiccatiForm> {
        if op.order() != 2 {
            return Err(Error::WrongOrder {
                expected: 2,
                found: op.order(),
            });
        }
        Ok(RiccatiForm {
            a0: op.coeff(2),
            a1: op.coeff(1),
            a2: op.coeff(0),
            lambda,
        })
    }

    /// `a₀(f_x + f²) + a₁f + a₂ − λ`; zero exactly when `f` solves the equation.
    pub fn residual(&self, f: &RatFun) -> RatFun {
        let quadratic = &f.derivative_x() + &(f * f);
        let lhs = &(&(&self.a0 * &quadratic) + &(&self.a1 * f)) + &self.a2;
        &lhs - &RatFun::constant(self.lambda.clone())
    }
}

/// `μ = λx²`.
pub fn forcing(lambda: &BigRat) -> RatFun {
    RatFun::from_poly(Poly::monomial(lambda.clone(), 2))
}

/// `f_t + f² − β² − λx²`, the residual of the Bessel Riccati equation in `t`.
pub fn residual_t(f: &RatFun, beta: &BigRat, lambda: &BigRat) -> RatFun {
    // over the common denominator Q²: −x(P'Q − PQ') + P² − (β² + λx²)Q²
    let (p, q) = (f.num(), f.den());
    let x = Poly::x();
    let wronskian = &(&p.derivative() * q) - &(p * &q.derivative());
    let q2 = q * q;
    let forced = Poly::new(vec![beta * beta, BigRat::zero(), lambda.clone()]);
    let num = &(&(p * p) - &(&x * &wronskian)) - &(&forced * &q2);
    RatFun::normalize(num, q2).expect("nonzero denominator")
}

/// One rung up: `f̂ = β̂ + λx²/(f + β)`, `β̂ = β + 1`.
pub fn step(f: &RatFun, beta: &BigRat, lambda: &BigRat) -> Result<(RatFun, BigRat)> {
    let shifted = f + &RatFun::constant(beta.clone());
    if shifted.is_zero() {
        return Err(Error::DegenerateStep);
    }
    let beta_hat = beta + BigRat::one();
    let tail = forcing(lambda).div(&shifted)?;
    Ok((&RatFun::constant(beta_hat.clone()) + &tail, beta_hat))
}

/// One rung down, solving `(f + β)(f̂ − β̂) = λx²` for `f`.
pub fn step_inverse(
    f_hat: &RatFun,
    beta_hat: &BigRat,
    lambda: &BigRat,
) -> Result<(RatFun, BigRat)> {
    let shifted = f_hat - &RatFun::constant(beta_hat.clone());
    if shifted.is_zero() {
        return Err(Error::DegenerateInverse);
    }
    let beta = beta_hat - BigRat::one();
    let f = &forcing(lambda).div(&shifted)? - &RatFun::constant(beta.clone());
    Ok((f, beta))
}

/// The fixed points of [`step`]: `β̂² = β²` with `β̂ = β + 1` forces
/// `β = −1/2`, and then `f = 1/2 ± √λ·x`. Exact only, so `λ` must be the
/// square of a rational.
pub fn fixed_points(lambda: &BigRat) -> Result<Vec<(RatFun, BigRat)>> {
    if lambda <= &BigRat::zero() {
        return Err(Error::NonPositiveEigenvalue(lambda.clone()));
    }
    let s = rat_sqrt(lambda).ok_or_else(|| Error::IrrationalSqrt(lambda.clone()))?;
    let beta = rat(-1, 2);
    Ok([s.clone(), -s]
        .into_iter()
        .map(|s| {
            (
                RatFun::from_poly(Poly::new(vec![rat(1, 2), s])),
                beta.clone(),
            )
        })
        .collect())
}

/// The unique `β` with `(β + 1)² = β²`.
pub fn fixed_order() -> BigRat {
    // (β+1)² − β² = 2β + 1
    -int(1) / int(2)
}
