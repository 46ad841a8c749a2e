use num_traits::{One, Zero};

use super::DiffOp;
use crate::algebra::{int, BigRat, Poly, RatFun};
use crate::error::{Error, Result};

/// Euler operator `e^(mt)·k(D_t)`, `k` a polynomial in `D_t` with rational
/// coefficients. Under `x = e^(−t)` this is `x^(−m)·k(−x·D_x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerOp {
    pub m: i64,
    pub k: Poly,
}

impl EulerOp {
    pub fn new(m: i64, k: Poly) -> EulerOp {
        if k.is_zero() {
            return EulerOp::zero();
        }
        EulerOp { m, k }
    }

    pub fn zero() -> EulerOp {
        EulerOp {
            m: 0,
            k: Poly::zero(),
        }
    }

    pub fn identity() -> EulerOp {
        EulerOp {
            m: 0,
            k: Poly::one(),
        }
    }

    /// The first-order substitution `e^t·(D_t + c)`.
    pub fn first_order(c: BigRat) -> EulerOp {
        EulerOp::new(1, Poly::new(vec![c, BigRat::one()]))
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_zero()
    }

    /// `e^(m₁t)k₁(D) ∘ e^(m₂t)k₂(D) = e^((m₁+m₂)t)·k₁(D + m₂)·k₂(D)`.
    pub fn compose(&self, rhs: &EulerOp) -> EulerOp {
        let shifted = self.k.taylor_shift(&int(rhs.m));
        EulerOp::new(self.m + rhs.m, &shifted * &rhs.k)
    }

    /// Action on `e^(st)`: returns `(k(s), m + s)` so that the image is
    /// `k(s)·e^((m+s)t)`.
    pub fn apply_exp(&self, s: &BigRat) -> (BigRat, BigRat) {
        (self.k.eval(s), int(self.m) + s)
    }

    /// The same operator written in `x`.
    pub fn to_diffop(&self) -> DiffOp {
        if self.is_zero() {
            return DiffOp::zero();
        }
        // D_t = −x·D_x
        let dt = DiffOp::from_powers(vec![RatFun::zero(), -&RatFun::x()]);
        let mut power = DiffOp::identity();
        let mut acc = DiffOp::zero();
        for (i, c) in self.k.coeffs().iter().enumerate() {
            if i > 0 {
                power = dt.compose(&power);
            }
            if !c.is_zero() {
                acc = &acc + &power.scale(&RatFun::constant(c.clone()));
            }
        }
        acc.scale(&RatFun::monomial(BigRat::one(), -self.m))
    }

    /// Recognise an operator of Euler type: every coefficient of `D_x^i` is a
    /// Laurent monomial `γ_i·x^(i−m)` with one common `m`. Uses
    /// `x^i·D_x^i = θ(θ−1)…(θ−i+1)` with `θ = x·D_x = −D_t`.
    pub fn from_diffop(op: &DiffOp) -> Result<EulerOp> {
        if op.is_zero() {
            return Ok(EulerOp::zero());
        }
        let mut m: Option<i64> = None;
        let mut k = Poly::zero();
        let minus_theta = Poly::new(vec![BigRat::zero(), -BigRat::one()]);
        let mut falling = Poly::one();
        for (i, c) in op.powers().iter().enumerate() {
            if i > 0 {
                // θ − (i−1) = −D − (i−1)
                let factor = &minus_theta - &Poly::constant(int(i as i64 - 1));
                falling = &falling * &factor;
            }
            if c.is_zero() {
                continue;
            }
            let (gamma, e) = c.as_laurent_monomial().ok_or_else(|| Error::NotEulerType {
                power: i,
                coefficient: c.to_string(),
            })?;
            let this_m = i as i64 - e;
            match m {
                None => m = Some(this_m),
                Some(prev) if prev != this_m => {
                    return Err(Error::NotEulerType {
                        power: i,
                        coefficient: c.to_string(),
                    })
                }
                Some(_) => {}
            }
            k = &k + &falling.scale(&gamma);
        }
        Ok(EulerOp::new(m.unwrap_or(0), k))
    }
}
