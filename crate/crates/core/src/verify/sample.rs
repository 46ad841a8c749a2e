//! Seeded generators for random exact objects.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, BigRat, Poly, RatFun};
use crate::operator::{DiffOp, EulerOp};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(rng: &mut SampleRng) -> BigRat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn nonzero_scalar(rng: &mut SampleRng) -> BigRat {
    loop {
        let c = scalar(rng);
        if c != BigRat::from_integer(0.into()) {
            return c;
        }
    }
}

pub fn poly(rng: &mut SampleRng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::new((0..=deg).map(|_| scalar(rng)).collect())
}

pub fn nonzero_poly(rng: &mut SampleRng, max_deg: usize) -> Poly {
    loop {
        let p = poly(rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn ratfun(rng: &mut SampleRng, max_deg: usize) -> RatFun {
    let num = poly(rng, max_deg);
    let den = nonzero_poly(rng, max_deg);
    RatFun::normalize(num, den).expect("nonzero denominator")
}

pub fn nonzero_ratfun(rng: &mut SampleRng, max_deg: usize) -> RatFun {
    loop {
        let f = ratfun(rng, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Operator of order exactly `order` with random coefficients.
pub fn diffop(rng: &mut SampleRng, order: usize, max_deg: usize) -> DiffOp {
    let mut terms: Vec<RatFun> = (0..order).map(|_| ratfun(rng, max_deg)).collect();
    terms.push(nonzero_ratfun(rng, max_deg));
    DiffOp::from_powers(terms)
}

pub fn euler(rng: &mut SampleRng, max_m: i64, max_deg: usize) -> EulerOp {
    EulerOp::new(rng.gen_range(-max_m..=max_m), nonzero_poly(rng, max_deg))
}

/// Operator of order exactly `order` with polynomial coefficients.
pub fn poly_diffop(rng: &mut SampleRng, order: usize, max_deg: usize) -> DiffOp {
    let mut terms: Vec<RatFun> = (0..order)
        .map(|_| RatFun::from_poly(poly(rng, max_deg)))
        .collect();
    terms.push(RatFun::from_poly(nonzero_poly(rng, max_deg)));
    DiffOp::from_powers(terms)
}
