use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{euler_sum_scaled, EulerFactor};
use crate::error::{Error, Result};
use crate::qcore::{Direction, LogPoint, QContext};
use crate::quad::{QuadratureConfig, Scaled};

/// `Σ_{k=0}^{N−1} exp(λ (N − k + r₀)²)` accumulated against the largest exponent.
pub fn geometric_bound_sum(n: u32, r0: Complex64, lambda: f64) -> Result<Scaled> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let exps: Vec<Complex64> = (0..n)
        .map(|k| {
            let w = Complex64::new((n - k) as f64, 0.0) + r0;
            lambda * w * w
        })
        .collect();
    let top = exps.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let mantissa = exps.iter().map(|e| (e - top).exp()).sum();
    Ok(Scaled {
        log_scale: top,
        mantissa,
    })
}

/// `|f(N; r₀, λ) · e^{−λ(N + r₀)²}|`.
pub fn geometric_bound_ratio(n: u32, r0: Complex64, lambda: f64) -> Result<f64> {
    let f = geometric_bound_sum(n, r0, lambda)?;
    let w = Complex64::new(n as f64, 0.0) + r0;
    let lead = lambda * w * w;
    Ok((f.ln_abs() - lead.re).exp())
}

/// Correction `C` with `S⁰(E₁)(x) = S⁰(E₁)(x e^{−2πin}) + C`.
///
/// Each crossed pole contributes `∓√(2π/L) i exp(−(log(x/√q) ∓ iπ(2k+1))²/(2L))`;
/// the sum is rewritten as `f(|n|; r₀, 2π²/L)`.
pub fn sheet_correction(ctx: &QContext, x: LogPoint, n: i64) -> Result<Scaled> {
    if n == 0 {
        return Ok(Scaled::from_value(Complex64::new(0.0, 0.0)));
    }
    let l = ctx.logq();
    let w = x.log() - 0.5 * l;
    let big_n = n.unsigned_abs() as f64;
    let i = Complex64::i();
    let (r0, sign) = if n > 0 {
        (-i * w / TAU - 0.5 - big_n, -1.0)
    } else {
        (i * w / TAU - 0.5 - big_n, 1.0)
    };
    let f = geometric_bound_sum(n.unsigned_abs() as u32, r0, 2.0 * PI * PI / l)?;
    Ok(Scaled {
        log_scale: f.log_scale + 0.5 * (TAU / l).ln(),
        mantissa: f.mantissa * sign * i,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InverseScanRow {
    pub t: f64,
    /// Sheet shift used by the reduction.
    pub sheets: i64,
    /// `ln |1/S⁰(E₁)(r e^{it})|`.
    pub log_inverse: f64,
    /// `ln |1/S| + t²/(2 log q)`.
    pub bound: f64,
    /// `ln |1/S| + max(|t| − π, 0)²/(2 log q)`.
    pub shifted_bound: f64,
}

/// Scans `1/S^d(E₁)` on the spiral `r e^{it}`, reducing every point to the
/// base sheet and adding the closed-form pole contributions.
pub fn spiral_inverse_scan(
    ctx: &QContext,
    r: f64,
    t_grid: &[f64],
    d: Direction,
    cfg: &QuadratureConfig,
) -> Result<Vec<InverseScanRow>> {
    if d.radians().abs() >= PI || d.radians().is_nan() {
        return Err(Error::InvalidInput(format!(
            "direction {d} is outside the chamber (−π, π)"
        )));
    }
    let fac = EulerFactor::new(Complex64::new(1.0, 0.0), 0)?;
    let l = ctx.logq();
    t_grid
        .par_iter()
        .map(|&t| {
            let x = LogPoint::new(r, t)?;
            let sheets = (t.abs() / TAU).floor() as i64 * t.signum() as i64;
            let base = x.rotate(-TAU * sheets as f64);
            let s0 = euler_sum_scaled(fac, d, ctx, base, cfg)?;
            let s = s0.add(&sheet_correction(ctx, x, sheets)?);
            let log_inverse = -s.ln_abs();
            if !log_inverse.is_finite() {
                return Err(Error::NonFinite);
            }
            let shift = (t.abs() - PI).max(0.0);
            Ok(InverseScanRow {
                t,
                sheets,
                log_inverse,
                bound: log_inverse + t * t / (2.0 * l),
                shifted_bound: log_inverse + shift * shift / (2.0 * l),
            })
        })
        .collect()
}
