use super::DiffOp;
use crate::algebra::{rat, RatFun};
use crate::error::{Error, Result};

/// `D² + q` together with the gauge `ψ = e^φ·ψ̂` that produced it. Only the
/// logarithmic derivative `w = φ_x` is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchrodingerForm {
    pub q: RatFun,
    pub gauge_logderiv: RatFun,
}

impl SchrodingerForm {
    /// `D² + q`.
    pub fn operator(&self) -> DiffOp {
        DiffOp::from_powers(vec![self.q.clone(), RatFun::zero(), RatFun::one()])
    }
}

/// Remove the first-order term of `a₀D² + a₁D + a₂`. With `p = a₁/a₀`,
/// `r = a₂/a₀` the gauge is `w = −p/2` and the potential
/// `q = r − p²/4 − p_x/2`.
pub fn normalize_to_schrodinger(op: &DiffOp) -> Result<SchrodingerForm> {
    if op.order() != 2 {
        return Err(Error::WrongOrder {
            expected: 2,
            found: op.order(),
        });
    }
    let a0 = op.coeff(2);
    let p = op.coeff(1).div(&a0)?;
    let r = op.coeff(0).div(&a0)?;
    let w = p.scale(&rat(-1, 2));
    let q = &(&r - &(&p * &p).scale(&rat(1, 4))) - &p.derivative_x().scale(&rat(1, 2));
    Ok(SchrodingerForm {
        q,
        gauge_logderiv: w,
    })
}

/// Conjugate a monic second-order operator by the gauge with logarithmic
/// derivative `w`: `ψ ↦ e^(−φ)·L(e^φ·ψ)`, using `D ∘ e^φ = e^φ ∘ (D + w)`.
pub fn gauge_conjugate(monic: &DiffOp, w: &RatFun) -> DiffOp {
    let shifted = DiffOp::from_powers(vec![w.clone(), RatFun::one()]);
    let mut power = DiffOp::identity();
    let mut acc = DiffOp::zero();
    for (k, c) in monic.powers().iter().enumerate() {
        if k > 0 {
            power = shifted.compose(&power);
        }
        acc = &acc + &power.scale(c);
    }
    acc
}

/// `q` in `(D−g)∘(D+g) = D² + q`, read off the composition.
pub fn schrodinger_factor_q(g: &RatFun) -> RatFun {
    let left = DiffOp::first_order(g);
    let right = DiffOp::first_order(&-g);
    left.compose(&right).coeff(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, BigRat, Poly};
    use num_traits::One;

    #[test]
    fn plain_second_derivative() {
        let s = normalize_to_schrodinger(&DiffOp::d_pow(2)).unwrap();
        assert!(s.q.is_zero());
        assert!(s.gauge_logderiv.is_zero());
    }

    #[test]
    fn first_order_term_is_removed() {
        let p = RatFun::normalize(Poly::from_ints(&[1, 2]), Poly::from_ints(&[3, 0, 1])).unwrap();
        let op = DiffOp::from_powers(vec![RatFun::zero(), p.clone(), RatFun::one()]);
        let s = normalize_to_schrodinger(&op).unwrap();
        let expected_q = &(&p * &p).scale(&rat(-1, 4)) - &p.derivative_x().scale(&rat(1, 2));
        assert_eq!(s.q, expected_q);
        assert_eq!(s.gauge_logderiv, p.scale(&rat(-1, 2)));
        assert_eq!(gauge_conjugate(&op, &s.gauge_logderiv), s.operator());
    }

    #[test]
    fn bessel_potential() {
        for k in 0..6 {
            let beta = rat(k, 2);
            let s = normalize_to_schrodinger(&DiffOp::bessel(&beta)).unwrap();
            assert_eq!(s.q, RatFun::monomial(rat(1, 4) - &beta * &beta, -2));
            assert_eq!(s.gauge_logderiv, RatFun::monomial(rat(-1, 2), -1));
            assert_eq!(
                gauge_conjugate(&DiffOp::bessel(&beta), &s.gauge_logderiv),
                s.operator()
            );
        }
    }

    #[test]
    fn non_monic_leading_coefficient() {
        let op = DiffOp::bessel(&int(1)).scale(&RatFun::monomial(BigRat::one(), 2));
        let s = normalize_to_schrodinger(&op).unwrap();
        assert_eq!(s.q, RatFun::monomial(rat(-3, 4), -2));
    }

    #[test]
    fn wrong_order() {
        assert_eq!(
            normalize_to_schrodinger(&DiffOp::d()),
            Err(Error::WrongOrder {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn factor_potential() {
        assert!(schrodinger_factor_q(&RatFun::zero()).is_zero());
        assert_eq!(
            schrodinger_factor_q(&RatFun::x()),
            RatFun::from_poly(Poly::from_ints(&[1, 0, -1]))
        );
        assert_eq!(
            schrodinger_factor_q(&RatFun::monomial(BigRat::one(), -1)),
            RatFun::monomial(int(-2), -2)
        );
    }
}
