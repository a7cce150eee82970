//! The q-Euler family `E^{[m]}_{a,q}`: the formal solution of
//! `x σ_q y + a y = 1` and its parameter derivatives.

mod inverse;
mod stokes;

pub use inverse::{
    geometric_bound_ratio, geometric_bound_sum, sheet_correction, spiral_inverse_scan,
    InverseScanRow,
};
pub use stokes::{singular_directions, stokes_jump, SingularSet};

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::TransformOrder;
use crate::qcore::{Direction, FormalSeries, LogPoint, QContext};
use crate::quad::{laplace_scaled, ComplexFunction, QuadratureConfig, Scaled};

/// Distance kept between an adapted ray and the nearest pole direction.
const RAY_MARGIN: f64 = 0.5;

/// `E^{[m]}_{a,q}`, the `m`-th derivative in `a` of the q-Euler series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerFactor {
    pub a: Complex64,
    pub m: u32,
}

impl EulerFactor {
    pub fn new(a: Complex64, m: u32) -> Result<Self> {
        if a.norm() == 0.0 || !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::ZeroParameter);
        }
        Ok(Self { a, m })
    }

    /// `arg(−a)` in `(−π, π]`.
    pub fn pole_angle(&self) -> f64 {
        (-self.a).arg()
    }
}

/// Coefficients of `E^{[m]}_{a,q}` through `x^n`.
///
/// `a c_0 = 1`, `a c_n = −q^{n−1} c_{n−1}`; the `j`-th derivative obeys
/// `a c_n^{(j)} + j c_n^{(j−1)} = −q^{n−1} c_{n−1}^{(j)}`.
pub fn euler_coeffs(fac: EulerFactor, ctx: &QContext, n: usize) -> Result<FormalSeries> {
    let a = EulerFactor::new(fac.a, fac.m)?.a;
    let m = fac.m as usize;
    let mut prev = vec![Complex64::new(0.0, 0.0); m + 1];
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut cur = vec![Complex64::new(0.0, 0.0); m + 1];
        for j in 0..=m {
            let rhs = if k == 0 {
                Complex64::new(if j == 0 { 1.0 } else { 0.0 }, 0.0)
            } else {
                -ctx.pow((k - 1) as f64) * prev[j]
            };
            let lower = if j == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                j as f64 * cur[j - 1]
            };
            cur[j] = (rhs - lower) / a;
        }
        out.push(cur[m]);
        prev = cur;
    }
    Ok(FormalSeries::new(out, n))
}

/// `ξ ↦ (−1)^m m! / (ξ + a)^{m+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerBorel {
    fac: EulerFactor,
    numerator: f64,
}

pub fn euler_borel(fac: EulerFactor) -> EulerBorel {
    let fact: f64 = (1..=fac.m).map(f64::from).product();
    let sign = if fac.m.is_multiple_of(2) { 1.0 } else { -1.0 };
    EulerBorel {
        fac,
        numerator: sign * fact,
    }
}

impl EulerBorel {
    pub fn at(&self, xi: Complex64) -> Complex64 {
        self.numerator / (xi + self.fac.a).powu(self.fac.m + 1)
    }

    /// Taylor coefficients at `ξ = 0`.
    pub fn taylor(&self, n: usize) -> FormalSeries {
        let a = self.fac.a;
        let m = self.fac.m as usize;
        // (−1)^m m! (ξ+a)^{−m−1} = Σ_k (−1)^{m+k} (m+k)!/k! a^{−m−1−k} ξ^k
        let coeffs = (0..=n)
            .map(|k| {
                let ratio: f64 = ((k + 1)..=(k + m)).map(|i| i as f64).product();
                let sign = if (m + k).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * ratio * a.powi(-((m + k + 1) as i32))
            })
            .collect();
        FormalSeries::new(coeffs, n)
    }
}

impl ComplexFunction for EulerBorel {
    fn eval(&self, xi: LogPoint) -> Result<Complex64> {
        let z = xi.to_complex() + self.fac.a;
        if z.norm() <= 1e-14 * self.fac.a.norm() {
            return Err(Error::PoleHit);
        }
        Ok(self.numerator / z.powu(self.fac.m + 1))
    }
}

/// Pole directions `arg(−a) + 2πk` bracketing `d`, or `SingularDirection`.
pub(crate) fn chamber(fac: &EulerFactor, d: Direction) -> Result<(f64, f64)> {
    let base = fac.pole_angle();
    let k = ((d.radians() - base) / TAU).floor();
    let lo = base + k * TAU;
    let hi = lo + TAU;
    let tol = 1e-9;
    if (d.radians() - lo).abs() < tol || (hi - d.radians()).abs() < tol {
        return Err(Error::SingularDirection(d.radians()));
    }
    Ok((lo, hi))
}

/// Ray inside the chamber of `d` closest to `arg x`; the sum does not depend
/// on the ray within a chamber, and a small `|arg x − d|` avoids cancellation.
pub(crate) fn adapted_ray(lo: f64, hi: f64, x: LogPoint) -> Direction {
    let margin = RAY_MARGIN.min(0.25 * (hi - lo));
    Direction(x.arg().clamp(lo + margin, hi - margin))
}

/// Ray for `x` inside the common chamber of `d` for all factors.
pub fn adapted_direction(facs: &[EulerFactor], d: Direction, x: LogPoint) -> Result<Direction> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for f in facs {
        let (l, h) = chamber(f, d)?;
        lo = lo.max(l);
        hi = hi.min(h);
    }
    if facs.is_empty() {
        return Ok(Direction(x.arg()));
    }
    Ok(adapted_ray(lo, hi, x))
}

/// `S^d_q(E^{[m]}_{a,q})(x)` in scaled form.
pub fn euler_sum_scaled(
    fac: EulerFactor,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Scaled> {
    euler_sum_order_scaled(fac, d, ctx, TransformOrder::integer(1), x, cfg)
}

/// `S^d_{q;k}` of `E^{[m]}_{a,q^{1/k}}`, i.e. the Euler sum in base `q^{1/k}`.
pub fn euler_sum_order_scaled(
    fac: EulerFactor,
    d: Direction,
    ctx: &QContext,
    k: TransformOrder,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Scaled> {
    let fac = EulerFactor::new(fac.a, fac.m)?;
    let (lo, hi) = chamber(&fac, d)?;
    let ray = adapted_ray(lo, hi, x);
    laplace_scaled(&euler_borel(fac), ray, ctx, k, x, cfg)
}

pub fn euler_sum(
    fac: EulerFactor,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    finite(euler_sum_scaled(fac, d, ctx, x, cfg)?.value())
}

pub fn euler_sum_order(
    fac: EulerFactor,
    d: Direction,
    ctx: &QContext,
    k: TransformOrder,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    finite(euler_sum_order_scaled(fac, d, ctx, k, x, cfg)?.value())
}

/// Laplace integral taken literally along `arg ξ = d`.
pub fn euler_sum_on_ray(
    fac: EulerFactor,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let fac = EulerFactor::new(fac.a, fac.m)?;
    chamber(&fac, d)?;
    let s = laplace_scaled(
        &euler_borel(fac),
        d,
        ctx,
        TransformOrder::integer(1),
        x,
        cfg,
    )?;
    finite(s.value())
}

/// `|x S(qx) + a S(x) − 1|` for `m = 0`.
pub fn functional_residual(
    a: Complex64,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let fac = EulerFactor::new(a, 0)?;
    let s = euler_sum(fac, d, ctx, x, cfg)?;
    let sq = euler_sum(fac, d, ctx, x.scale(ctx.q()), cfg)?;
    Ok((x.to_complex() * sq + a * s - 1.0).norm())
}

pub(crate) fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite)
    }
}
