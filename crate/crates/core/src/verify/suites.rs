use num_traits::{One, Zero};

use super::sample;
use super::Case;
use crate::algebra::{int, rat, rat_from_f64, rat_to_f64, BigRat, Poly, RatFun};
use crate::bessel::{k_half_jet, HalfOrder};
use crate::chebyshev::{
    chebyshev_cf, chebyshev_f, chebyshev_sequence, ode_residual, pair_residual, Convention,
};
use crate::grammar::parse_function;
use crate::operator::{
    gauge_conjugate, inverse_substitution, inverse_substitution_jet, normalize_to_schrodinger,
    schrodinger_factor_q, DiffOp, EulerOp,
};
use crate::riccati::{
    fixed_points, forcing, ladder, printed_displays, residual_t, step, step_inverse,
    to_continued_fraction, Branch,
};

const ROUND_TRIP_SAMPLES: usize = 20;
const ASSOCIATIVITY_SAMPLES: usize = 50;
const EULER_PAIRS: usize = 100;
const TRIG_TOL: f64 = 1e-10;
const INVERSE_NUMERIC_TOL: f64 = 1e-10;

fn first_failure<T: std::fmt::Display>(bad: &[T]) -> String {
    match bad.first() {
        None => String::new(),
        Some(b) => format!("; first failure: {b}"),
    }
}

pub fn riccati_suite(max_n: usize) -> Vec<Case> {
    let mut cases = Vec::new();
    let one = BigRat::one();

    for branch in [Branch::Minus, Branch::Plus] {
        match ladder(max_n, branch) {
            Err(e) => cases.push(Case::check(
                format!("riccati.ladder.{branch}"),
                false,
                e.to_string(),
            )),
            Ok(rungs) => {
                for s in &rungs {
                    let r = s.residual();
                    let beta_ok = s.beta == int(s.j as i64) - rat(1, 2);
                    cases.push(Case::check(
                        format!("riccati.residual.{branch}.j{:03}", s.j),
                        r.is_zero() && beta_ok,
                        format!("β = {}, f = {}, residual = {r}", s.beta, s.display_f()),
                    ));
                }
                let depth = max_n.min(15);
                let bad: Vec<usize> = (1..=depth)
                    .filter(|&j| {
                        to_continued_fraction(j, branch).collapse().ok().as_ref()
                            != Some(&rungs[j - 1].f)
                    })
                    .collect();
                cases.push(Case::check(
                    format!("riccati.cf-collapse.{branch}"),
                    bad.is_empty(),
                    format!(
                        "exact collapse equals f_j for j ≤ {depth}{}",
                        first_failure(&bad)
                    ),
                ));
            }
        }
    }

    let displays = printed_displays();
    let f2 = &displays[0];
    cases.push(Case::check(
        "riccati.printed-f2",
        f2.matches() && f2.printed_residual().is_zero(),
        format!("printed {} equals the second rung", f2.printed_text),
    ));
    let misprints: Vec<_> = displays[1..].iter().filter(|d| !d.matches()).collect();
    let detail = displays[1..]
        .iter()
        .map(|d| {
            let derived = ladder(d.j, Branch::Minus).expect("minus ladder")[d.j - 1].display_f();
            format!(
                "f_{}: printed {} has residual {}; exact f_{} = {}",
                d.j,
                d.printed_text,
                d.printed_residual(),
                d.j,
                derived
            )
        })
        .collect::<Vec<_>>()
        .join(" | ");
    if misprints.is_empty() {
        cases.push(Case::check("riccati.printed-f3-f4", true, detail));
    } else {
        cases.push(Case::flagged("riccati.printed-f3-f4", detail));
    }

    for (name, lambda) in [("lambda1", int(1)), ("lambda4", int(4))] {
        let ok = match fixed_points(&lambda) {
            Ok(pts) => pts.iter().all(|(f, b)| {
                residual_t(f, b, &lambda).is_zero()
                    && step(f, b, &lambda).ok() == Some((f.clone(), rat(1, 2)))
            }),
            Err(_) => false,
        };
        cases.push(Case::check(
            format!("riccati.fixed-points.{name}"),
            ok,
            format!("step(1/2 ± √λ·x, −1/2) = (same f, 1/2) at λ = {lambda}"),
        ));
    }

    let mut rng = sample::rng(0x5eed_0001);
    let mut bad = Vec::new();
    let mut tried = 0;
    while tried < ROUND_TRIP_SAMPLES {
        let f = sample::ratfun(&mut rng, 4);
        let beta = sample::scalar(&mut rng);
        let Ok((fh, bh)) = step(&f, &beta, &one) else {
            continue;
        };
        tried += 1;
        if step_inverse(&fh, &bh, &one).ok() != Some((f.clone(), beta.clone())) {
            bad.push(format!("f = {f}, β = {beta}"));
        }
    }
    cases.push(Case::check(
        "riccati.step-round-trip",
        bad.is_empty(),
        format!(
            "inverse∘step = id on {ROUND_TRIP_SAMPLES} random f{}",
            first_failure(&bad)
        ),
    ));

    let mu = forcing(&one);
    cases.push(Case::check(
        "riccati.mu-law",
        mu.derivative_t() == mu.scale(&int(-2)),
        format!("μ = {mu}, μ_t = {}", mu.derivative_t()),
    ));
    cases
}

pub fn chebyshev_suite(max_n: usize) -> Vec<Case> {
    let mut cases = Vec::new();
    let seq = chebyshev_sequence(max_n + 1);
    let two_x = Poly::from_ints(&[0, 2]);

    let bad: Vec<usize> = (1..=max_n)
        .filter(|&n| !(&(&seq[n + 1] + &seq[n - 1]) - &(&two_x * &seq[n])).is_zero())
        .collect();
    cases.push(Case::check(
        "chebyshev.recurrence",
        bad.is_empty(),
        format!(
            "T_(n+1) + T_(n-1) = 2x·T_n for n ≤ {max_n}{}",
            first_failure(&bad)
        ),
    ));

    let bad: Vec<usize> = (0..=max_n)
        .filter(|&n| {
            let t = &seq[n];
            let lc_ok = n == 0
                || t.leading()
                    == Some(&BigRat::from_integer(
                        num_bigint::BigInt::from(2).pow(n as u32 - 1),
                    ));
            t.degree() != Some(n) || !lc_ok
        })
        .collect();
    cases.push(Case::check(
        "chebyshev.degree-leading",
        bad.is_empty(),
        format!(
            "deg T_n = n, leading coefficient 2^(n-1), n ≤ {max_n}{}",
            first_failure(&bad)
        ),
    ));

    let bad: Vec<usize> = (0..=max_n)
        .filter(|&n| !ode_residual(n).is_zero())
        .collect();
    cases.push(Case::check(
        "chebyshev.ode",
        bad.is_empty(),
        format!(
            "(1-x²)T'' - xT' + n²T = 0 for n ≤ {max_n}{}",
            first_failure(&bad)
        ),
    ));

    let bad: Vec<usize> = (1..=max_n)
        .filter(|&n| !pair_residual(n, Convention::CorrectedMinus).is_zero())
        .collect();
    cases.push(Case::check(
        "chebyshev.pair.corrected-minus",
        bad.is_empty(),
        format!(
            "(f_n - x)(f_(n+1) + x) = -1 with f_n = T_(n-1)/T_n - x, n ≤ {max_n}{}",
            first_failure(&bad)
        ),
    ));

    let f1_plus = chebyshev_f(1, Convention::PlusShift);
    let expected = parse_function("x + 1/x").expect("literal");
    cases.push(Case::check(
        "chebyshev.plus-shift.f1",
        f1_plus == expected,
        format!("f_1 = {f1_plus}"),
    ));

    let r = pair_residual(1, Convention::PlusShift);
    let witness = r.eval(&rat(1, 2));
    let detail = format!(
        "with f_n = T_(n-1)/T_n + x, (f_1 - x)(f_2 + x) + 1 = {r}, equal to {} at x = 1/2; \
         corrected f_n = T_(n-1)/T_n - x gives f_1 = {}",
        witness
            .as_ref()
            .map(|w| w.to_string())
            .unwrap_or_else(|e| e.to_string()),
        chebyshev_f(1, Convention::CorrectedMinus)
    );
    if r.is_zero() {
        cases.push(Case::check(
            "chebyshev.plus-shift.pair-identity",
            true,
            detail,
        ));
    } else {
        cases.push(Case::flagged("chebyshev.plus-shift.pair-identity", detail));
    }

    let depth = max_n.min(20);
    let bad: Vec<usize> = (1..=depth)
        .filter(|&n| {
            chebyshev_cf(n).collapse().ok() != Some(chebyshev_f(n, Convention::CorrectedMinus))
        })
        .collect();
    cases.push(Case::check(
        "chebyshev.cf-collapse",
        bad.is_empty(),
        format!(
            "continued fraction collapses to f_n for n ≤ {depth}{}",
            first_failure(&bad)
        ),
    ));

    let mut worst: f64 = 0.0;
    for (n, t) in seq.iter().enumerate().take(depth + 1) {
        for i in 1..=15 {
            let theta = i as f64 / 10.0;
            let c = rat_from_f64(theta.cos()).expect("finite");
            let err = (rat_to_f64(&t.eval(&c)) - (n as f64 * theta).cos()).abs();
            worst = worst.max(err);
        }
    }
    cases.push(Case::check(
        "chebyshev.trig",
        worst <= TRIG_TOL,
        format!("max |T_n(cos θ) - cos nθ| = {worst:.3e} for n ≤ {depth}, θ = 0.1..1.5"),
    ));
    cases
}

/// `Aφ/φ` for `φ` with `φ'/φ = g`, from `D^k φ/φ = P_k`, `P_{k+1} = P_k' + g·P_k`.
fn kernel_remainder(a: &DiffOp, g: &RatFun) -> RatFun {
    let mut p = RatFun::one();
    let mut acc = RatFun::zero();
    for (k, c) in a.powers().iter().enumerate() {
        if k > 0 {
            p = &p.derivative_x() + &(g * &p);
        }
        acc = &acc + &(c * &p);
    }
    acc
}

pub fn darboux_suite() -> Vec<Case> {
    let mut cases = Vec::new();

    for k in 0..=20 {
        let beta = rat(k, 2);
        let a = DiffOp::bessel(&beta);
        let g = RatFun::monomial(beta.clone(), -1);
        let (ok, detail) = match a.darboux_transform(&g) {
            Ok(hat) => {
                let d_g = DiffOp::first_order(&g);
                let intertwines = hat.compose(&d_g) == d_g.compose(&a);
                let target = DiffOp::bessel(&(&beta + int(1)));
                (
                    hat == target && intertwines,
                    format!(
                        "β = {beta}: Â = {hat}; intertwining {}",
                        if intertwines { "exact" } else { "broken" }
                    ),
                )
            }
            Err(e) => (false, e.to_string()),
        };
        cases.push(Case::check(
            format!("darboux.bessel-shift.b{k:02}"),
            ok,
            detail,
        ));
    }

    let d2 = DiffOp::d_pow(2);
    let a = DiffOp::from_powers(vec![
        RatFun::monomial(int(-2), -2),
        RatFun::zero(),
        RatFun::one(),
    ]);
    let ok = d2.darboux_transform(&RatFun::zero()).ok() == Some(d2.clone())
        && a.darboux_transform(&RatFun::monomial(int(-1), -1)).ok() == Some(d2.clone());
    cases.push(Case::check(
        "darboux.examples",
        ok,
        "D² with g = 0 and D² - 2/x² with g = -1/x both map to D²",
    ));

    let mut rng = sample::rng(0x5eed_0002);
    let mut bad = Vec::new();
    for _ in 0..30 {
        let order = rand::Rng::gen_range(&mut rng, 1..=4);
        let a = sample::diffop(&mut rng, order, 2);
        let g = sample::ratfun(&mut rng, 2);
        let (q, r) = a.right_divide(&g).expect("order ≥ 1");
        let recomposed = &q.compose(&DiffOp::first_order(&g)) + &DiffOp::multiplication(r.clone());
        if recomposed != a || q.order() + 1 != a.order() || r != kernel_remainder(&a, &g) {
            bad.push(format!("A = {a}, g = {g}"));
        }
    }
    cases.push(Case::check(
        "darboux.right-divide",
        bad.is_empty(),
        format!(
            "Q∘(D-g) + R = A and R = Aφ/φ on 30 random pairs{}",
            first_failure(&bad)
        ),
    ));

    let mut bad = Vec::new();
    for _ in 0..20 {
        let s = sample::scalar(&mut rng);
        let g = RatFun::monomial(s.clone(), -1);
        let q = sample::diffop(&mut rng, 1, 2);
        let a = q.compose(&DiffOp::first_order(&g));
        let in_kernel = a
            .right_divide(&g)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(false);
        let c = sample::nonzero_scalar(&mut rng);
        let perturbed = &a + &DiffOp::multiplication(RatFun::constant(c));
        let rejected = perturbed
            .right_divide(&g)
            .map(|(_, r)| !r.is_zero())
            .unwrap_or(false)
            && perturbed.darboux_transform(&g).is_err();
        if !(in_kernel && rejected) {
            bad.push(format!("φ = x^({s}), A = {a}"));
        }
    }
    cases.push(Case::check(
        "darboux.kernel-criterion",
        bad.is_empty(),
        format!(
            "R = 0 iff x^s ∈ ker A, 20 random monomials{}",
            first_failure(&bad)
        ),
    ));

    let mut bad = Vec::new();
    for _ in 0..ASSOCIATIVITY_SAMPLES {
        let (oa, ob, oc) = (
            rand::Rng::gen_range(&mut rng, 0..=2),
            rand::Rng::gen_range(&mut rng, 0..=2),
            rand::Rng::gen_range(&mut rng, 0..=2),
        );
        let a = sample::poly_diffop(&mut rng, oa, 3);
        let b = sample::poly_diffop(&mut rng, ob, 3);
        let c = sample::poly_diffop(&mut rng, oc, 3);
        if a.compose(&b).compose(&c) != a.compose(&b.compose(&c)) {
            bad.push(format!("A = {a}"));
        }
    }
    cases.push(Case::check(
        "darboux.associativity",
        bad.is_empty(),
        format!(
            "(A∘B)∘C = A∘(B∘C) on {ASSOCIATIVITY_SAMPLES} random triples{}",
            first_failure(&bad)
        ),
    ));

    let mut bad = Vec::new();
    for _ in 0..20 {
        let g = sample::ratfun(&mut rng, 2);
        let q = sample::diffop(&mut rng, 1, 2);
        let a = q.compose(&DiffOp::first_order(&g));
        let psi = sample::ratfun(&mut rng, 3);
        let psihat = DiffOp::first_order(&g).apply(&psi);
        if q.apply(&psihat) != a.apply(&psi) {
            bad.push(format!("ψ = {psi}"));
        }
        let lambda = sample::nonzero_scalar(&mut rng);
        let back = inverse_substitution(&q, &psihat, &lambda).expect("λ ≠ 0");
        if back.scale(&lambda) != a.apply(&psi) {
            bad.push(format!("λ = {lambda}"));
        }
    }
    cases.push(Case::check(
        "darboux.inverse-substitution.symbolic",
        bad.is_empty(),
        format!("Q((D-g)ψ) = Aψ on 20 random ψ{}", first_failure(&bad)),
    ));

    let beta = rat(1, 2);
    let g = RatFun::monomial(beta.clone(), -1);
    let (q, _) = DiffOp::bessel(&beta).right_divide(&g).expect("order 2");
    let d_g = DiffOp::first_order(&g);
    let d_d_g = DiffOp::d().compose(&d_g);
    let mut worst: f64 = 0.0;
    let mut failed = None;
    for x in [1.0, 2.0, 3.0] {
        let jet = k_half_jet(HalfOrder(0), x).expect("x > 0");
        let psihat = [d_g.apply_jet(x, &jet), d_d_g.apply_jet(x, &jet)];
        let result = match psihat {
            [Some(h0), Some(h1)] => inverse_substitution_jet(&q, x, &[h0, h1], 1.0),
            _ => Err(crate::error::Error::NonPositiveArgument(x)),
        };
        match result {
            Ok(v) => worst = worst.max((v - jet[0]).abs()),
            Err(e) => failed = Some(e.to_string()),
        }
    }
    cases.push(Case::check(
        "darboux.inverse-substitution.numeric",
        failed.is_none() && worst <= INVERSE_NUMERIC_TOL,
        format!(
            "ψ = K_(1/2), λ = 1, g = 1/(2x): max |Q(ψ̂) - ψ| = {worst:.3e} on x ∈ {{1, 2, 3}}{}",
            failed.map(|e| format!("; {e}")).unwrap_or_default()
        ),
    ));

    let mut bad = Vec::new();
    for k in 0..=6 {
        let beta = rat(k, 2);
        let s = normalize_to_schrodinger(&DiffOp::bessel(&beta)).expect("order 2");
        if s.q != RatFun::monomial(rat(1, 4) - &beta * &beta, -2)
            || s.gauge_logderiv != RatFun::monomial(rat(-1, 2), -1)
        {
            bad.push(format!("β = {beta}"));
        }
    }
    for _ in 0..20 {
        let a = sample::diffop(&mut rng, 2, 2);
        let s = normalize_to_schrodinger(&a).expect("order 2");
        let monic = a.scale(&a.coeff(2).recip().expect("leading ≠ 0"));
        if gauge_conjugate(&monic, &s.gauge_logderiv) != s.operator() {
            bad.push(format!("A = {a}"));
        }
    }
    cases.push(Case::check(
        "darboux.schrodinger",
        bad.is_empty(),
        format!(
            "Bessel q = (1/4 - β²)/x² and gauge conjugation gives D² + q on 20 random operators{}",
            first_failure(&bad)
        ),
    ));

    let mut bad = Vec::new();
    for _ in 0..20 {
        let g = sample::ratfun(&mut rng, 3);
        if schrodinger_factor_q(&g) != &g.derivative_x() - &(&g * &g) {
            bad.push(format!("g = {g}"));
        }
    }
    cases.push(Case::check(
        "darboux.factor-q",
        bad.is_empty(),
        format!(
            "(D-g)∘(D+g) = D² + g' - g² on 20 random g{}",
            first_failure(&bad)
        ),
    ));
    cases
}

pub fn euler_suite() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut rng = sample::rng(0x5eed_0003);

    let mut bad = Vec::new();
    for _ in 0..EULER_PAIRS {
        let a = sample::euler(&mut rng, 3, 4);
        let b = sample::euler(&mut rng, 3, 4);
        if a.compose(&b).to_diffop() != a.to_diffop().compose(&b.to_diffop()) {
            bad.push(format!("m = ({}, {})", a.m, b.m));
        }
    }
    cases.push(Case::check(
        "euler.functoriality",
        bad.is_empty(),
        format!(
            "{EULER_PAIRS} random pairs, |m| ≤ 3, deg k ≤ 4{}",
            first_failure(&bad)
        ),
    ));

    let mut bad = Vec::new();
    for k in -6..=6 {
        let beta = rat(k, 2);
        let left = EulerOp::new(1, Poly::new(vec![-(&beta + int(1)), BigRat::one()]));
        let right = EulerOp::first_order(beta.clone());
        let product = left.compose(&right);
        let expected = EulerOp::new(
            2,
            Poly::new(vec![-(&beta * &beta), BigRat::zero(), BigRat::one()]),
        );
        if product != expected || product.to_diffop() != DiffOp::bessel(&beta) {
            bad.push(format!("β = {beta}"));
        }
    }
    cases.push(Case::check(
        "euler.bessel-factorization",
        bad.is_empty(),
        format!(
            "e^t(D-β-1)∘e^t(D+β) = e^(2t)(D²-β²) = Bessel_β for β = -3..3{}",
            first_failure(&bad)
        ),
    ));

    let dx = EulerOp::from_diffop(&DiffOp::d());
    let dx2 = EulerOp::from_diffop(&DiffOp::d_pow(2));
    let ok = dx.as_ref().ok() == Some(&EulerOp::new(1, Poly::from_ints(&[0, -1])))
        && dx2.as_ref().ok() == Some(&EulerOp::new(2, Poly::from_ints(&[0, 1, 1])));
    cases.push(Case::check(
        "euler.dictionary",
        ok,
        "D_x = -e^t·D_t and D_x² = e^(2t)(D_t² + D_t)",
    ));

    let mut bad = Vec::new();
    for _ in 0..EULER_PAIRS {
        let a = sample::euler(&mut rng, 3, 4);
        if EulerOp::from_diffop(&a.to_diffop()).ok() != Some(a.clone()) {
            bad.push(format!("m = {}, k = {}", a.m, a.k));
        }
    }
    cases.push(Case::check(
        "euler.round-trip",
        bad.is_empty(),
        format!(
            "from_diffop ∘ to_diffop = id on {EULER_PAIRS} random operators{}",
            first_failure(&bad)
        ),
    ));

    let mut bad = Vec::new();
    for _ in 0..30 {
        let a = sample::euler(&mut rng, 3, 4);
        let s = rand::Rng::gen_range(&mut rng, -3i64..=3);
        let (coeff, exponent) = a.apply_exp(&int(s));
        // e^(st) = x^(−s)
        let image = a.to_diffop().apply(&RatFun::monomial(BigRat::one(), -s));
        let expected = RatFun::monomial(coeff, -exponent.to_integer().try_into().unwrap_or(0i64));
        if image != expected {
            bad.push(format!("m = {}, s = {s}", a.m));
        }
    }
    cases.push(Case::check(
        "euler.exp-action",
        bad.is_empty(),
        format!(
            "k(s)·e^((m+s)t) matches the x-operator on x^(-s), 30 samples{}",
            first_failure(&bad)
        ),
    ));
    cases
}
