use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::{int, BigRat, Poly};
use crate::error::{Error, Result};

/// Rational function `num/den` in canonical form: `gcd(num, den) = 1`, `den`
/// monic, zero stored as `0/1`. Structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Bring `num/den` to canonical form.
    pub fn normalize(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomialDivisor);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFun {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> RatFun {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(c: i64) -> RatFun {
        Self::constant(int(c))
    }

    pub fn x() -> RatFun {
        Self::from_poly(Poly::x())
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// Laurent monomial `c·x^e`, `e` of either sign.
    pub fn monomial(c: BigRat, e: i64) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        if e >= 0 {
            Self::from_poly(Poly::monomial(c, e as usize))
        } else {
            RatFun {
                num: Poly::constant(c),
                den: Poly::monomial(BigRat::one(), e.unsigned_abs() as usize),
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this is a constant function.
    pub fn as_constant(&self) -> Option<BigRat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// `(c, e)` if this is a Laurent monomial `c·x^e`.
    pub fn as_laurent_monomial(&self) -> Option<(BigRat, i64)> {
        if self.is_zero() || self.num.term_count() != 1 || self.den.term_count() != 1 {
            return None;
        }
        let top = self.num.valuation()?;
        let bottom = self.den.degree()?;
        Some((self.num.coeff(top), top as i64 - bottom as i64))
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroRationalDivisor);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &BigRat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<RatFun> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatFun {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Exact `d/dx` by the quotient rule.
    pub fn derivative_x(&self) -> RatFun {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(num, &self.den * &self.den)
    }

    /// `d/dt` under `x = e^(−t)`, i.e. `−x·d/dx`.
    pub fn derivative_t(&self) -> RatFun {
        -&(&RatFun::x() * &self.derivative_x())
    }

    /// k-th derivative in x.
    pub fn nth_derivative_x(&self, k: usize) -> RatFun {
        (0..k).fold(self.clone(), |acc, _| acc.derivative_x())
    }

    pub fn eval(&self, x0: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::Pole { at: x0.clone() });
        }
        Ok(self.num.eval(x0) / d)
    }

    /// Floating evaluation; `None` at an exact zero of the denominator.
    pub fn eval_f64(&self, x0: f64) -> Option<f64> {
        let d = self.den.eval_f64(x0);
        if d == 0.0 {
            return None;
        }
        Some(self.num.eval_f64(x0) / d)
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<BigRat> for RatFun {
    fn from(c: BigRat) -> Self {
        RatFun::constant(c)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        RatFun::reduce(&n1 * &n2, &d1 * &d2)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::format_ratfun(self))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFunRepr {
    num: Poly,
    den: Poly,
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFunRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RatFunRepr::deserialize(d)?;
        RatFun::normalize(repr.num, repr.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::normalize(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.num(), &p(&[1, 1]));
        assert!(f.den().is_one());
    }

    #[test]
    fn normalize_zero_numerator() {
        let f = rf(&[0], &[2, 0, 0, 1]);
        assert_eq!(f, RatFun::zero());
        assert!(f.den().is_one());
    }

    #[test]
    fn normalize_scales_to_monic_denominator() {
        let f = rf(&[0, 2], &[4]);
        assert_eq!(f.num(), &Poly::new(vec![rat(0, 1), rat(1, 2)]));
        assert!(f.den().is_one());
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        let err = RatFun::normalize(p(&[1]), Poly::zero()).unwrap_err();
        assert_eq!(err.to_string(), "division by zero polynomial");
    }

    #[test]
    fn field_operations() {
        let inv_x = rf(&[1], &[0, 1]);
        assert_eq!(&inv_x + &RatFun::x(), rf(&[1, 0, 1], &[0, 1]));

        let a = rf(&[0, 0, 1], &[1, -1]);
        let b = rf(&[1, -1], &[0, 1]);
        assert_eq!(&a * &b, RatFun::x());

        let x2 = RatFun::from_poly(p(&[0, 0, 1]));
        assert_eq!(RatFun::one().div(&x2).unwrap(), rf(&[1], &[0, 0, 1]));
        assert_eq!(
            RatFun::one().div(&RatFun::zero()),
            Err(Error::ZeroRationalDivisor)
        );
    }

    #[test]
    fn x_derivatives() {
        assert_eq!(
            RatFun::from_poly(p(&[0, 0, 1])).derivative_x(),
            RatFun::from_poly(p(&[0, 2]))
        );
        assert_eq!(rf(&[1], &[0, 1]).derivative_x(), rf(&[-1], &[0, 0, 1]));
        // x^2/(1-x) -> (2x - x^2)/(1-x)^2
        assert_eq!(
            rf(&[0, 0, 1], &[1, -1]).derivative_x(),
            rf(&[0, 2, -1], &[1, -2, 1])
        );
    }

    #[test]
    fn t_derivatives() {
        let half_minus_x =
            RatFun::normalize(Poly::new(vec![rat(1, 2), rat(-1, 1)]), Poly::one()).unwrap();
        assert_eq!(half_minus_x.derivative_t(), RatFun::x());
        assert_eq!(RatFun::constant(rat(7, 3)).derivative_t(), RatFun::zero());
        let mu = RatFun::from_poly(p(&[0, 0, 1]));
        assert_eq!(mu.derivative_t(), mu.scale(&rat(-2, 1)));
    }

    #[test]
    fn evaluation() {
        assert_eq!(rf(&[1, 1], &[1]).eval(&rat(2, 1)).unwrap(), rat(3, 1));
        assert_eq!(
            rf(&[1], &[0, 1]).eval(&rat(0, 1)),
            Err(Error::Pole { at: rat(0, 1) })
        );
        // 3/2 + x^2/(1-x) at 1/2
        let f2 = &RatFun::constant(rat(3, 2)) + &rf(&[0, 0, 1], &[1, -1]);
        assert_eq!(f2.eval(&rat(1, 2)).unwrap(), rat(2, 1));
    }

    #[test]
    fn laurent_monomials() {
        assert_eq!(
            RatFun::monomial(rat(3, 1), -2).as_laurent_monomial(),
            Some((rat(3, 1), -2))
        );
        assert_eq!(
            RatFun::monomial(rat(-1, 2), 3).as_laurent_monomial(),
            Some((rat(-1, 2), 3))
        );
        assert_eq!(rf(&[1, 1], &[0, 1]).as_laurent_monomial(), None);
        assert_eq!(RatFun::zero().as_laurent_monomial(), None);
    }
}
