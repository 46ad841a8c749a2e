use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{BigRat, Poly, RatFun};
use crate::operator::DiffOp;

fn format_coeff_term(mag: &BigRat, k: usize) -> String {
    let var = match k {
        0 => return mag.to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    };
    if mag.is_one() {
        var
    } else {
        format!("{mag}*{var}")
    }
}

/// Ascending-degree rendering, e.g. `1 - 3/2*x + x^2`.
pub fn format_poly(p: &Poly) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = format_coeff_term(&c.abs(), k);
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Numerator and denominator scaled to coprime integer coefficients, with a
/// positive lowest-order denominator coefficient.
fn display_pair(f: &RatFun) -> (Poly, Poly) {
    let (num, den) = (f.num(), f.den());
    let all = || num.coeffs().iter().chain(den.coeffs().iter());
    let lcm = all().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let content = all()
        .map(|c| (c * BigRat::from_integer(lcm.clone())).to_integer())
        .fold(BigInt::zero(), |acc, c| acc.gcd(&c));
    let mut scale = BigRat::new(lcm, content);
    let lowest = den.coeff(den.valuation().unwrap_or(0));
    if lowest.is_negative() {
        scale = -scale;
    }
    (num.scale(&scale), den.scale(&scale))
}

/// True when the rendering of `f` is a single product (optionally negated),
/// so it can be a factor or a signed summand without parentheses.
pub fn is_atomic(f: &RatFun) -> bool {
    f.num().term_count() <= 1
}

pub fn format_ratfun(f: &RatFun) -> String {
    if f.den().is_one() {
        return format_poly(f.num());
    }
    let (num, den) = display_pair(f);
    let num_s = format_poly(&num);
    let den_s = format_poly(&den);
    let num_s = if num.term_count() > 1 {
        format!("({num_s})")
    } else {
        num_s
    };
    let bare_power = den.term_count() == 1 && den.coeff(den.degree().unwrap_or(0)).is_one();
    if bare_power {
        format!("{num_s}/{den_s}")
    } else {
        format!("{num_s}/({den_s})")
    }
}

/// `(negative, magnitude)` for use as a summand.
fn signed_piece(f: &RatFun) -> (bool, String) {
    let s = format_ratfun(f);
    match s.strip_prefix('-') {
        Some(rest) if is_atomic(f) => (true, rest.to_string()),
        _ => (false, s),
    }
}

fn join_signed(pieces: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (negative, body) in pieces {
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Descending powers of `D`, e.g. `D^2 + 1/x*D - 1/x^2`.
pub fn format_diffop(op: &DiffOp) -> String {
    let n = op.powers().len();
    let only_one = op.powers().iter().filter(|c| !c.is_zero()).count() == 1;
    let pieces = op
        .powers()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if k == 0 {
                let (neg, body) = signed_piece(c);
                if is_atomic(c) || (only_one && n == 1) {
                    (neg, body)
                } else {
                    (false, format!("({body})"))
                }
            } else {
                let d = if k == 1 {
                    "D".to_string()
                } else {
                    format!("D^{k}")
                };
                if c.is_one() {
                    (false, d)
                } else if (-c).is_one() {
                    (true, d)
                } else if is_atomic(c) {
                    let (neg, body) = signed_piece(c);
                    (neg, format!("{body}*{d}"))
                } else {
                    (false, format!("({})*{d}", format_ratfun(c)))
                }
            }
        });
    join_signed(pieces)
}

/// `head + tail` with the tail's sign folded into the operator.
pub fn format_sum(head: &BigRat, tail: &RatFun) -> String {
    let mut pieces = Vec::new();
    if !head.is_zero() {
        pieces.push((head.is_negative(), head.abs().to_string()));
    }
    if !tail.is_zero() {
        pieces.push(signed_piece(tail));
    }
    join_signed(pieces)
}

/// `numerator/(denominator)` as a signed summand; the denominator text is
/// always parenthesised.
pub(crate) fn format_fraction(numerator: &RatFun, denominator: &str) -> (bool, String) {
    let (neg, body) = signed_piece(numerator);
    if is_atomic(numerator) {
        (neg, format!("{body}/({denominator})"))
    } else {
        (false, format!("({body})/({denominator})"))
    }
}

pub(crate) fn format_with_fraction(lead: &RatFun, frac: (bool, String)) -> String {
    if lead.is_zero() {
        join_signed([frac])
    } else {
        join_signed([(false, format_ratfun(lead)), frac])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::normalize(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn polynomials() {
        assert_eq!(format_poly(&Poly::zero()), "0");
        assert_eq!(format_poly(&Poly::from_ints(&[-1, 0, 2])), "-1 + 2*x^2");
        assert_eq!(
            format_poly(&Poly::new(vec![rat(3, 2), rat(-3, 2), int(1)])),
            "3/2 - 3/2*x + x^2"
        );
    }

    #[test]
    fn rational_functions() {
        assert_eq!(format_ratfun(&rf(&[0, 0, 1], &[1, -1])), "x^2/(1 - x)");
        assert_eq!(format_ratfun(&rf(&[1], &[0, 1])), "1/x");
        assert_eq!(format_ratfun(&rf(&[1], &[0, 2])), "1/(2*x)");
        assert_eq!(format_ratfun(&rf(&[0, 1], &[-1, 0, 2])), "-x/(1 - 2*x^2)");
        assert_eq!(format_ratfun(&rf(&[1, 1], &[0, 0, 1])), "(1 + x)/x^2");
    }

    #[test]
    fn operators() {
        assert_eq!(
            format_diffop(&DiffOp::bessel(&int(1))),
            "D^2 + 1/x*D - 1/x^2"
        );
        assert_eq!(format_diffop(&DiffOp::zero()), "0");
        assert_eq!(format_diffop(&-&DiffOp::d()), "-D");
        let op = DiffOp::from_powers(vec![
            rf(&[1, 0, -1], &[1]),
            rf(&[1, 1], &[1]),
            RatFun::one(),
        ]);
        assert_eq!(format_diffop(&op), "D^2 + (1 + x)*D + (1 - x^2)");
        assert_eq!(
            format_diffop(&DiffOp::multiplication(rf(&[1, 0, -1], &[1]))),
            "1 - x^2"
        );
    }

    #[test]
    fn sums() {
        assert_eq!(
            format_sum(&rat(3, 2), &rf(&[0, 0, 1], &[1, -1])),
            "3/2 + x^2/(1 - x)"
        );
        assert_eq!(format_sum(&rat(1, 2), &-&RatFun::x()), "1/2 - x");
        assert_eq!(format_sum(&int(0), &RatFun::x()), "x");
        assert_eq!(format_sum(&int(0), &RatFun::zero()), "0");
    }
}
