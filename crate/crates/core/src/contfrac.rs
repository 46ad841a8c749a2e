//! Finite generalized continued fractions with rational-function entries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::RatFun;
use crate::error::{Error, Result};
use crate::grammar::{format_fraction, format_ratfun, format_with_fraction};

/// One level `a_i / (b_i + …)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfTerm {
    pub numerator: RatFun,
    pub denominator: RatFun,
}

/// `b₀ + a₁/(b₁ + a₂/(b₂ + … + a_k/b_k))`.
///
/// Levels are numbered from 1 (outermost) to `k`; the head is level 0. The
/// innermost denominator `b_k` is the terminal. With no levels the fraction
/// is just its head.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CfRepr", try_from = "CfRepr")]
pub struct ContinuedFraction {
    pub head: RatFun,
    pub terms: Vec<CfTerm>,
}

#[derive(Serialize, Deserialize)]
struct CfRepr {
    head: RatFun,
    terms: Vec<CfTerm>,
    terminal: RatFun,
}

impl From<ContinuedFraction> for CfRepr {
    fn from(cf: ContinuedFraction) -> CfRepr {
        let terminal = cf.terminal().clone();
        CfRepr {
            head: cf.head,
            terms: cf.terms,
            terminal,
        }
    }
}

impl TryFrom<CfRepr> for ContinuedFraction {
    type Error = String;
    fn try_from(r: CfRepr) -> std::result::Result<Self, String> {
        let cf = ContinuedFraction {
            head: r.head,
            terms: r.terms,
        };
        if cf.terminal() != &r.terminal {
            return Err("terminal does not match the innermost denominator".into());
        }
        Ok(cf)
    }
}

impl ContinuedFraction {
    pub fn new(head: RatFun, terms: Vec<CfTerm>) -> Self {
        ContinuedFraction { head, terms }
    }

    /// Number of fraction levels `k`.
    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    pub fn terminal(&self) -> &RatFun {
        self.terms
            .last()
            .map(|t| &t.denominator)
            .unwrap_or(&self.head)
    }

    /// Exact bottom-up collapse.
    pub fn collapse(&self) -> Result<RatFun> {
        let mut acc: Option<RatFun> = None;
        for (i, term) in self.terms.iter().enumerate().rev() {
            let level = i + 1;
            let below = match acc {
                None => term.denominator.clone(),
                Some(tail) => &term.denominator + &tail,
            };
            if below.is_zero() {
                return Err(Error::ContinuedFractionPole { level });
            }
            let quotient = term
                .numerator
                .div(&below)
                .map_err(|_| Error::ContinuedFractionPole { level })?;
            acc = Some(quotient);
        }
        Ok(match acc {
            None => self.head.clone(),
            Some(tail) => &self.head + &tail,
        })
    }

    /// Floating bottom-up evaluation at `x0`.
    pub fn eval(&self, x0: f64) -> Result<f64> {
        let at =
            |f: &RatFun, level: usize| f.eval_f64(x0).ok_or(Error::ContinuedFractionPole { level });
        let mut tail: Option<f64> = None;
        for (i, term) in self.terms.iter().enumerate().rev() {
            let level = i + 1;
            let below = at(&term.denominator, level)? + tail.unwrap_or(0.0);
            if below == 0.0 || !below.is_finite() {
                return Err(Error::ContinuedFractionPole { level });
            }
            tail = Some(at(&term.numerator, level)? / below);
        }
        Ok(at(&self.head, 0)? + tail.unwrap_or(0.0))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((last, rest)) = self.terms.split_last() else {
            return f.write_str(&format_ratfun(&self.head));
        };
        // innermost first: b_k, then b_i + a_{i+1}/(…)
        let mut inner = format_ratfun(&last.denominator);
        let mut numerator = &last.numerator;
        for term in rest.iter().rev() {
            inner = format_with_fraction(&term.denominator, format_fraction(numerator, &inner));
            numerator = &term.numerator;
        }
        f.write_str(&format_with_fraction(
            &self.head,
            format_fraction(numerator, &inner),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly};

    fn x2() -> RatFun {
        RatFun::from_poly(Poly::from_ints(&[0, 0, 1]))
    }

    fn one_minus_x() -> RatFun {
        RatFun::from_poly(Poly::from_ints(&[1, -1]))
    }

    fn depth3() -> ContinuedFraction {
        ContinuedFraction::new(
            RatFun::constant(rat(5, 2)),
            vec![
                CfTerm {
                    numerator: x2(),
                    denominator: RatFun::from_int(3),
                },
                CfTerm {
                    numerator: x2(),
                    denominator: one_minus_x(),
                },
            ],
        )
    }

    #[test]
    fn collapse_and_display() {
        let cf = depth3();
        assert_eq!(cf.to_string(), "5/2 + x^2/(3 + x^2/(1 - x))");
        let expected = RatFun::normalize(
            Poly::from_ints(&[15, -15, 7, -2]),
            Poly::from_ints(&[6, -6, 2]),
        )
        .unwrap();
        assert_eq!(cf.collapse().unwrap(), expected);
        assert_eq!(cf.terminal(), &one_minus_x());
    }

    #[test]
    fn headless_fraction() {
        let cf = ContinuedFraction::new(RatFun::x(), vec![]);
        assert_eq!(cf.collapse().unwrap(), RatFun::x());
        assert_eq!(cf.terminal(), &RatFun::x());
        assert_eq!(cf.eval(0.5).unwrap(), 0.5);
    }

    #[test]
    fn floating_evaluation_and_poles() {
        let cf = ContinuedFraction::new(
            RatFun::constant(rat(3, 2)),
            vec![CfTerm {
                numerator: x2(),
                denominator: one_minus_x(),
            }],
        );
        assert_eq!(cf.eval(0.5).unwrap(), 2.0);
        assert_eq!(cf.eval(0.0).unwrap(), 1.5);
        assert_eq!(cf.eval(1.0), Err(Error::ContinuedFractionPole { level: 1 }));
    }

    #[test]
    fn exact_collapse_detects_vanishing_level() {
        let cf = ContinuedFraction::new(
            RatFun::zero(),
            vec![
                CfTerm {
                    numerator: RatFun::one(),
                    denominator: RatFun::x(),
                },
                CfTerm {
                    numerator: RatFun::one(),
                    denominator: RatFun::zero(),
                },
            ],
        );
        assert_eq!(
            cf.collapse(),
            Err(Error::ContinuedFractionPole { level: 2 })
        );
    }
}
