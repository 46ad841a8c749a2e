use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{int, BigRat, RatFun};
use crate::error::{Error, Result};

/// Linear differential operator `Σ c_k(x)·D^k` with rational-function
/// coefficients, stored by ascending power of `D`. The top coefficient is
/// never zero; the zero operator has no coefficients.
///
/// In the classical notation `A = a₀Dⁿ + a₁Dⁿ⁻¹ + … + aₙ` the coefficient
/// `a_j` is [`DiffOp::a`]`(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    terms: Vec<RatFun>,
}

impl DiffOp {
    /// Build from coefficients indexed by power of `D`.
    pub fn from_powers(mut terms: Vec<RatFun>) -> DiffOp {
        while terms.last().is_some_and(RatFun::is_zero) {
            terms.pop();
        }
        DiffOp { terms }
    }

    /// Build from `[a₀, a₁, …, aₙ]`, leading coefficient first.
    pub fn from_leading(coeffs: Vec<RatFun>) -> DiffOp {
        let mut terms = coeffs;
        terms.reverse();
        Self::from_powers(terms)
    }

    pub fn zero() -> DiffOp {
        DiffOp { terms: Vec::new() }
    }

    pub fn identity() -> DiffOp {
        Self::multiplication(RatFun::one())
    }

    /// `D`.
    pub fn d() -> DiffOp {
        Self::from_powers(vec![RatFun::zero(), RatFun::one()])
    }

    /// `D^k`.
    pub fn d_pow(k: usize) -> DiffOp {
        let mut terms = vec![RatFun::zero(); k + 1];
        terms[k] = RatFun::one();
        DiffOp { terms }
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: RatFun) -> DiffOp {
        Self::from_powers(vec![f])
    }

    /// `D − g`.
    pub fn first_order(g: &RatFun) -> DiffOp {
        Self::from_powers(vec![-g, RatFun::one()])
    }

    /// `D² + (1/x)·D − β²/x²`.
    pub fn bessel(beta: &BigRat) -> DiffOp {
        Self::from_powers(vec![
            RatFun::monomial(-(beta * beta), -2),
            RatFun::monomial(BigRat::one(), -1),
            RatFun::one(),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order in `D`; the zero operator reports 0.
    pub fn order(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Coefficient of `D^k`.
    pub fn coeff(&self, k: usize) -> RatFun {
        self.terms.get(k).cloned().unwrap_or_else(RatFun::zero)
    }

    /// `a_j`, the coefficient of `D^(n−j)`.
    pub fn a(&self, j: usize) -> RatFun {
        match self.order().checked_sub(j) {
            Some(k) => self.coeff(k),
            None => RatFun::zero(),
        }
    }

    pub fn powers(&self) -> &[RatFun] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&RatFun> {
        self.terms.last()
    }

    /// The function this operator multiplies by, if it has order 0.
    pub fn as_multiplication(&self) -> Option<RatFun> {
        match self.terms.len() {
            0 => Some(RatFun::zero()),
            1 => Some(self.terms[0].clone()),
            _ => None,
        }
    }

    /// `Σ c_k·ψ^(k)`.
    pub fn apply(&self, psi: &RatFun) -> RatFun {
        let mut deriv = psi.clone();
        let mut acc = RatFun::zero();
        for (k, c) in self.terms.iter().enumerate() {
            if k > 0 {
                deriv = deriv.derivative_x();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &deriv);
            }
        }
        acc
    }

    /// Apply at a point to a function known only through its jet
    /// `[ψ(x0), ψ'(x0), …]`. Returns `None` at a pole of a coefficient or when
    /// the jet is too short.
    pub fn apply_jet(&self, x0: f64, jet: &[f64]) -> Option<f64> {
        if jet.len() < self.terms.len() {
            return None;
        }
        self.terms
            .iter()
            .zip(jet)
            .try_fold(0.0, |acc, (c, v)| Some(acc + c.eval_f64(x0)? * v))
    }

    /// Composition `self ∘ rhs`, by the Leibniz rule
    /// `D^i ∘ b = Σ_l C(i,l)·b^(l)·D^(i−l)`.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        if self.is_zero() || rhs.is_zero() {
            return DiffOp::zero();
        }
        let n = self.order();
        let mut out = vec![RatFun::zero(); self.order() + rhs.order() + 1];
        for (k, b) in rhs.terms.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut derivs = Vec::with_capacity(n + 1);
            derivs.push(b.clone());
            for l in 1..=n {
                derivs.push(derivs[l - 1].derivative_x());
            }
            for (i, a) in self.terms.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut binom = BigRat::one();
                for (l, bl) in derivs.iter().enumerate().take(i + 1) {
                    if l > 0 {
                        binom = binom * int((i - l + 1) as i64) / int(l as i64);
                    }
                    if bl.is_zero() {
                        continue;
                    }
                    let term = (a * bl).scale(&binom);
                    let slot = &mut out[i - l + k];
                    *slot = &*slot + &term;
                }
            }
        }
        DiffOp::from_powers(out)
    }

    pub fn pow(&self, e: u32) -> DiffOp {
        (0..e).fold(DiffOp::identity(), |acc, _| acc.compose(self))
    }

    /// Left multiplication by a function.
    pub fn scale(&self, f: &RatFun) -> DiffOp {
        DiffOp::from_powers(self.terms.iter().map(|c| f * c).collect())
    }

    /// `A = Q∘(D−g) + R` with `R` of order zero.
    pub fn right_divide(&self, g: &RatFun) -> Result<(DiffOp, RatFun)> {
        if self.order() == 0 {
            return Err(Error::ZeroOrder);
        }
        let divisor = DiffOp::first_order(g);
        let mut rem = self.clone();
        let mut quo = vec![RatFun::zero(); self.order()];
        while rem.order() >= 1 {
            let m = rem.order();
            let c = rem.terms[m].clone();
            let step = DiffOp::d_pow(m - 1).scale(&c);
            rem = &rem - &step.compose(&divisor);
            quo[m - 1] = &quo[m - 1] + &c;
        }
        let r = rem.as_multiplication().expect("order zero remainder");
        Ok((DiffOp::from_powers(quo), r))
    }

    /// `Â = (D−g)∘Q` where `A = Q∘(D−g)`; requires `g` to be the logarithmic
    /// derivative of a kernel element, i.e. a zero remainder.
    pub fn darboux_transform(&self, g: &RatFun) -> Result<DiffOp> {
        let (q, r) = self.right_divide(g)?;
        if !r.is_zero() {
            return Err(Error::NotKernelLogDerivative {
                remainder: r.to_string(),
            });
        }
        Ok(DiffOp::first_order(g).compose(&q))
    }
}

/// `ψ = Q(ψ̂)/λ`, undoing `ψ̂ = (D−g)ψ` for an eigenfunction `Aψ = λψ` of
/// `A = Q∘(D−g)`.
pub fn inverse_substitution(q: &DiffOp, psihat: &RatFun, lambda: &BigRat) -> Result<RatFun> {
    if lambda.is_zero() {
        return Err(Error::InverseAtZeroEigenvalue);
    }
    Ok(q.apply(psihat).scale(&lambda.recip()))
}

/// Numeric counterpart of [`inverse_substitution`] for a `ψ̂` given by its jet.
pub fn inverse_substitution_jet(
    q: &DiffOp,
    x0: f64,
    psihat_jet: &[f64],
    lambda: f64,
) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::InverseAtZeroEigenvalue);
    }
    q.apply_jet(x0, psihat_jet)
        .map(|v| v / lambda)
        .ok_or(Error::Pole {
            at: crate::algebra::rat_from_f64(x0).unwrap_or_default(),
        })
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let len = self.terms.len().max(rhs.terms.len());
        DiffOp::from_powers((0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|c| -c).collect(),
        }
    }
}

/// Composition.
impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::format_diffop(self))
    }
}
