//! Closed-form modified Bessel functions `K_{n+1/2}` and their logarithmic
//! derivatives in `t = −log x`. This is the only floating-point module; it
//! exists to cross-check the exact ladder.

use std::f64::consts::PI;

use serde::Serialize;

use crate::algebra::{rat_from_f64, rat_to_f64, BigRat};
use crate::error::{Error, Result};
use crate::riccati::{ladder, Branch};

/// Half-integer order `ν = n + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfOrder(pub u32);

impl HalfOrder {
    pub fn nu(self) -> f64 {
        self.0 as f64 + 0.5
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(x))
    }
}

/// `K_{n+1/2}(x) = √(π/2x)·e^(−x)·Σ_{k≤n} (n+k)!/(k!(n−k)!)·(2x)^(−k)`.
pub fn k_half(order: HalfOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    let n = order.0 as u64;
    let inv_2x = 1.0 / (2.0 * x);
    let mut coeff = 1.0;
    let mut power = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        // (n+k+1)!/((k+1)!(n−k−1)!) from the previous term
        coeff *= ((n + k + 1) * (n - k)) as f64 / (k + 1) as f64;
        power *= inv_2x;
        sum += coeff * power;
    }
    Ok((PI / (2.0 * x)).sqrt() * (-x).exp() * sum)
}

/// `K_{n+1/2}(x)` by the upward recurrence `K_{ν+1} = K_{ν−1} + (2ν/x)K_ν`
/// started from `K_{−1/2} = K_{1/2}`.
pub fn k_half_recurrence(order: HalfOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    let base = (PI / (2.0 * x)).sqrt() * (-x).exp();
    let (mut below, mut cur) = (base, base);
    for m in 0..order.0 {
        let nu = m as f64 + 0.5;
        let next = below + 2.0 * nu / x * cur;
        below = cur;
        cur = next;
    }
    Ok(cur)
}

/// `K_{ν−1}(x)` for `ν = n + 1/2`, using `K_{−1/2} = K_{1/2}`.
fn k_below(order: HalfOrder, x: f64) -> Result<f64> {
    k_half(HalfOrder(order.0.saturating_sub(1)), x)
}

/// `K'_ν = −(K_{ν−1} + K_{ν+1})/2`.
pub fn k_half_derivative(order: HalfOrder, x: f64) -> Result<f64> {
    Ok(-(k_below(order, x)? + k_half(HalfOrder(order.0 + 1), x)?) / 2.0)
}

/// `[K_ν, K'_ν, K''_ν]` at `x`, the second derivative from the modified
/// Bessel equation `K'' = (1 + ν²/x²)K − K'/x`.
pub fn k_half_jet(order: HalfOrder, x: f64) -> Result<[f64; 3]> {
    let k = k_half(order, x)?;
    let dk = k_half_derivative(order, x)?;
    let nu = order.nu();
    let ddk = (1.0 + nu * nu / (x * x)) * k - dk / x;
    Ok([k, dk, ddk])
}

/// `−x·K'_ν(x)/K_ν(x)`, the `t`-logarithmic derivative of `K_ν`.
pub fn log_deriv_t_k(order: HalfOrder, x: f64) -> Result<f64> {
    let k = k_half(order, x)?;
    Ok(-x * k_half_derivative(order, x)? / k)
}

/// `−x·ψ'/ψ` for `ψ = x^(−1/2)·e^x`, evaluated from `ψ` and `ψ'` directly.
pub fn elementary_log_deriv_t(x: f64) -> Result<f64> {
    check_x(x)?;
    let psi = x.powf(-0.5) * x.exp();
    let dpsi = x.powf(-0.5) * x.exp() - 0.5 * x.powf(-1.5) * x.exp();
    Ok(-x * dpsi / psi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub j: usize,
    pub x: f64,
    /// `None` when `x` is a pole of `f_j`.
    pub ladder_value: Option<f64>,
    pub bessel_value: f64,
    pub abs_err: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub max_abs_err: f64,
}

impl ComparisonReport {
    pub fn flagged(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| r.abs_err.is_none())
    }
}

/// Plus-branch rungs `f_j` against `−x·K'_{j−1/2}/K_{j−1/2}` on a grid.
/// Rungs are evaluated exactly at the (binary-exact) grid points.
pub fn compare_ladder_to_bessel(max_j: usize, grid: &[f64]) -> Result<ComparisonReport> {
    for &x in grid {
        check_x(x)?;
    }
    let rungs = ladder(max_j, Branch::Plus)?;
    let mut rows = Vec::with_capacity(max_j * grid.len());
    let mut max_abs_err: f64 = 0.0;
    for rung in &rungs {
        let order = HalfOrder(rung.j as u32 - 1);
        for &x in grid {
            let exact_x: BigRat = rat_from_f64(x).ok_or(Error::NonPositiveArgument(x))?;
            let ladder_value = rung.f.eval(&exact_x).ok().map(|v| rat_to_f64(&v));
            let bessel_value = log_deriv_t_k(order, x)?;
            let abs_err = ladder_value.map(|v| (v - bessel_value).abs());
            if let Some(e) = abs_err {
                max_abs_err = max_abs_err.max(e);
            }
            rows.push(ComparisonRow {
                j: rung.j,
                x,
                ladder_value,
                bessel_value,
                abs_err,
            });
        }
    }
    Ok(ComparisonReport { rows, max_abs_err })
}
