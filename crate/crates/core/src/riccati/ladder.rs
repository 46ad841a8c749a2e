use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{forcing, residual_t, step};
use crate::algebra::{int, rat, BigRat, Poly, RatFun};
use crate::contfrac::{CfTerm, ContinuedFraction};
use crate::error::Result;
use crate::grammar::{format_sum, parse_function};

/// Which fixed-point line the ladder starts from: `1/2 − x` or `1/2 + x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Minus,
    Plus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Minus => -1,
            Branch::Plus => 1,
        }
    }

    /// `f₁ = 1/2 ∓ x`.
    pub fn start(self) -> RatFun {
        RatFun::from_poly(Poly::new(vec![rat(1, 2), int(self.sign())]))
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        })
    }
}

impl FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "minus" => Ok(Branch::Minus),
            "plus" => Ok(Branch::Plus),
            other => Err(format!("unknown branch {other:?} (expected minus or plus)")),
        }
    }
}

/// Rung `j` of the ladder: `f_j` solves `f_t + f² = β_j² + x²` with
/// `β_j = j − 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderState {
    pub j: usize,
    #[serde(with = "crate::algebra::serde_rat")]
    pub beta: BigRat,
    pub f: RatFun,
    pub branch: Branch,
}

impl LadderState {
    pub fn residual(&self) -> RatFun {
        residual_t(&self.f, &self.beta, &BigRat::one())
    }

    /// `f_j` written as `β_j + (f_j − β_j)`.
    pub fn display_f(&self) -> String {
        format_sum(
            &self.beta,
            &(&self.f - &RatFun::constant(self.beta.clone())),
        )
    }
}

/// `β_j = j − 1/2`.
pub fn beta_of(j: usize) -> BigRat {
    int(j as i64) - rat(1, 2)
}

/// Rungs `1..=depth`, each obtained from the previous by [`step`] at λ = 1.
pub fn ladder(depth: usize, branch: Branch) -> Result<Vec<LadderState>> {
    let lambda = BigRat::one();
    let mut out: Vec<LadderState> = Vec::with_capacity(depth);
    for j in 1..=depth {
        let (f, beta) = match out.last() {
            None => (branch.start(), beta_of(1)),
            Some(prev) => step(&prev.f, &prev.beta, &lambda)?,
        };
        out.push(LadderState { j, beta, f, branch });
    }
    Ok(out)
}

/// `f_depth` unrolled: `β_J + x²/(2β_{J−1} + x²/(… + x²/(f₁ + β₁)))`.
pub fn to_continued_fraction(depth: usize, branch: Branch) -> ContinuedFraction {
    if depth <= 1 {
        return ContinuedFraction::new(branch.start(), Vec::new());
    }
    let x2 = forcing(&BigRat::one());
    let mut terms: Vec<CfTerm> = (2..depth)
        .rev()
        .map(|j| CfTerm {
            numerator: x2.clone(),
            denominator: RatFun::constant(beta_of(j) * int(2)),
        })
        .collect();
    terms.push(CfTerm {
        numerator: x2,
        denominator: &branch.start() + &RatFun::constant(beta_of(1)),
    });
    ContinuedFraction::new(RatFun::constant(beta_of(depth)), terms)
}

/// A closed form printed in the literature for a minus-branch rung, next to
/// what the recurrence actually produces.
#[derive(Clone, Debug)]
pub struct PrintedDisplay {
    pub j: usize,
    pub printed: RatFun,
    pub printed_text: &'static str,
    pub derived: RatFun,
}

impl PrintedDisplay {
    pub fn matches(&self) -> bool {
        self.printed == self.derived
    }

    pub fn printed_residual(&self) -> RatFun {
        residual_t(&self.printed, &beta_of(self.j), &BigRat::one())
    }
}

const PRINTED: [(usize, &str); 3] = [
    (2, "3/2 + x^2/(1 - x)"),
    (3, "5/2 + x^2/(x^2 - 3*x + 3)"),
    (4, "7/2 + x^2/(6*x^2 - 15*x + 15)"),
];

/// The published closed forms of `f₂, f₃, f₄` against the exact rungs.
pub fn printed_displays() -> Vec<PrintedDisplay> {
    let rungs = ladder(4, Branch::Minus).expect("minus ladder never degenerates");
    PRINTED
        .iter()
        .map(|&(j, text)| PrintedDisplay {
            j,
            printed: parse_function(text).expect("well-formed literal"),
            printed_text: text,
            derived: rungs[j - 1].f.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_ladder_opening_rungs() {
        let rungs = ladder(3, Branch::Minus).unwrap();
        assert_eq!(rungs[0].display_f(), "1/2 - x");
        assert_eq!(rungs[1].display_f(), "3/2 + x^2/(1 - x)");
        assert_eq!(rungs[2].display_f(), "5/2 + (x^2 - x^3)/(3 - 3*x + x^2)");
        for (i, s) in rungs.iter().enumerate() {
            assert_eq!(s.j, i + 1);
            assert_eq!(s.beta, beta_of(i + 1));
            assert!(s.residual().is_zero());
        }
    }

    #[test]
    fn plus_ladder_starts_at_fixed_line() {
        let rungs = ladder(1, Branch::Plus).unwrap();
        assert_eq!(rungs[0].display_f(), "1/2 + x");
        assert!(rungs[0].residual().is_zero());
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(
            to_continued_fraction(2, Branch::Minus).to_string(),
            "3/2 + x^2/(1 - x)"
        );
        assert_eq!(
            to_continued_fraction(3, Branch::Minus).to_string(),
            "5/2 + x^2/(3 + x^2/(1 - x))"
        );
        assert_eq!(
            to_continued_fraction(1, Branch::Plus).to_string(),
            "1/2 + x"
        );
        let cf = to_continued_fraction(4, Branch::Plus);
        assert_eq!(cf.terminal(), &RatFun::from_poly(Poly::from_ints(&[1, 1])));
        assert_eq!(cf.eval(0.0).unwrap(), 3.5);
    }

    #[test]
    fn printed_f3_f4_are_not_solutions() {
        let displays = printed_displays();
        assert!(displays[0].matches());
        assert!(displays[0].printed_residual().is_zero());
        for d in &displays[1..] {
            assert!(!d.matches());
            assert!(!d.printed_residual().is_zero());
        }
    }

    #[test]
    fn branch_parsing() {
        assert_eq!("plus".parse::<Branch>(), Ok(Branch::Plus));
        assert!("up".parse::<Branch>().is_err());
    }
}
