//! Products of q-Euler series: the germs `f₁`, `f₂^d`, the order-(1,2) sum of
//! `E_a E_b` and a verifier for products of Euler decompositions.

mod f1;
mod f2;

pub use f1::{f1_eval, f1_taylor, F1Germ};
pub use f2::{f2_eval, F2Function, F2Mode};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{
    adapted_direction, euler_borel, euler_sum, euler_sum_order, singular_directions, EulerFactor,
};
use crate::formal::TransformOrder;
use crate::multisum::pullout_germ;
use crate::qcore::{series_mul, Direction, FormalSeries, LogPoint, QContext};
use crate::quad::{laplace_numeric, QuadratureConfig};

/// `S^d_{q;(1,2)}(E_a E_b)(x) = L^d_{q;2}(f₂^d)(x)`.
pub fn product_sum(
    a: Complex64,
    b: Complex64,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let facs = [EulerFactor::new(a, 0)?, EulerFactor::new(b, 0)?];
    if singular_directions(&facs).contains_within(d, 1e-9) {
        return Err(Error::SingularDirection(d.radians()));
    }
    let f2 = F2Function::new(a, b, d, ctx, cfg, F2Mode::Auto)?;
    laplace_numeric(&f2, d, ctx, TransformOrder::integer(2), x, cfg)
}

/// Relative finite-difference step for an `m`-th parameter derivative.
fn fd_step(m: u32) -> f64 {
    match m {
        0 | 1 => 1e-4,
        2 => 2e-3,
        _ => 1e-2,
    }
}

/// Centered `m`-th difference weights on the offsets `(m − 2i) h`, `i = 0..=m`,
/// already divided by `(2h)^m` except for the `h` factor.
fn fd_stencil(m: u32) -> Vec<(f64, f64)> {
    let mut binom = 1.0;
    (0..=m)
        .map(|i| {
            let w = if i % 2 == 0 { binom } else { -binom };
            let off = m as f64 - 2.0 * i as f64;
            binom = binom * (m - i) as f64 / (i + 1) as f64;
            (off, w / 2f64.powi(m as i32))
        })
        .collect()
}

/// `S^d_{q;(1,2)}(E^{[m]}_a E^{[n]}_b)(x)`, by centered differences of the
/// `(a, b)` pipeline in both parameters.
pub fn cell_sum(
    fa: EulerFactor,
    fb: EulerFactor,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let ha = fd_step(fa.m) * fa.a;
    let hb = fd_step(fb.m) * fb.a;
    let mut total = Complex64::new(0.0, 0.0);
    for (oa, wa) in fd_stencil(fa.m) {
        for (ob, wb) in fd_stencil(fb.m) {
            let v = product_sum(fa.a + oa * ha, fb.a + ob * hb, d, ctx, x, cfg)?;
            total += wa * wb * v;
        }
    }
    Ok(total / (ha.powu(fa.m) * hb.powu(fb.m)))
}

/// `p · E^{[m]}_{a,q}`; `factor: None` stands for `E⁰ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub prefactor: Vec<Complex64>,
    pub radius: f64,
    pub factor: Option<EulerFactor>,
}

impl DecompositionTerm {
    pub fn prefactor_series(&self) -> FormalSeries {
        FormalSeries::polynomial(self.prefactor.clone())
    }
}

/// `f = Σ_i f_i E^{[m_i]}_{a_i,q}` with convergent `f_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerDecomposition {
    pub terms: Vec<DecompositionTerm>,
}

impl EulerDecomposition {
    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidInput("decomposition has no terms".into()));
        }
        for t in &self.terms {
            if t.radius.is_nan() || t.radius <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "prefactor radius {} must be positive",
                    t.radius
                )));
            }
            if t.prefactor.is_empty() {
                return Err(Error::InvalidInput("empty prefactor".into()));
            }
            if let Some(f) = t.factor {
                EulerFactor::new(f.a, f.m)?;
            }
        }
        Ok(())
    }

    pub fn factors(&self) -> Vec<EulerFactor> {
        self.terms.iter().filter_map(|t| t.factor).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductPoint {
    pub x: LogPoint,
    /// `S_{q;(1,2)}(fg)(x)`.
    pub lhs: Complex64,
    /// `S_{q;1}(f)(x) S_{q;1}(g)(x)`.
    pub rhs: Complex64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellDeviation {
    pub i: usize,
    pub j: usize,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductReport {
    pub points: Vec<ProductPoint>,
    pub cells: Vec<CellDeviation>,
    pub max_deviation: f64,
}

/// Compares `S_{q;(1,2)}(fg)` with `S_{q;1}(f) S_{q;1}(g)` cell by cell.
///
/// Cells with two Euler factors go through the order-(1,2) pipeline after
/// pulling the prefactors out; cells with one Euler factor use the Borel germ
/// of the prefactor product at order one; convergent cells are exact.
pub fn product_theorem_check(
    fa: &EulerDecomposition,
    fb: &EulerDecomposition,
    d: Direction,
    ctx: &QContext,
    grid: &[LogPoint],
    cfg: &QuadratureConfig,
) -> Result<ProductReport> {
    fa.validate()?;
    fb.validate()?;
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty grid".into()));
    }
    let mut all = fa.factors();
    all.extend(fb.factors());
    if singular_directions(&all).contains_within(d, 1e-9) {
        return Err(Error::SingularDirection(d.radians()));
    }
    let one = TransformOrder::integer(1);
    let per_point: Vec<(ProductPoint, Vec<f64>)> = grid
        .par_iter()
        .map(|&x| {
            let xc = x.to_complex();
            let side = |dec: &EulerDecomposition| -> Result<Vec<Complex64>> {
                dec.terms
                    .iter()
                    .map(|t| {
                        let p = t.prefactor_series().eval(xc);
                        Ok(match t.factor {
                            Some(f) => p * euler_sum(f, d, ctx, x, cfg)?,
                            None => p,
                        })
                    })
                    .collect()
            };
            let (sa, sb) = (side(fa)?, side(fb)?);
            let mut lhs = Complex64::new(0.0, 0.0);
            let mut cells = Vec::new();
            for (i, ta) in fa.terms.iter().enumerate() {
                for (j, tb) in fb.terms.iter().enumerate() {
                    let p = series_mul(&ta.prefactor_series(), &tb.prefactor_series());
                    let cell = match (ta.factor, tb.factor) {
                        (None, None) => p.eval(xc),
                        (Some(f), None) | (None, Some(f)) => {
                            let b = euler_borel(f);
                            let germ = |xi: LogPoint| pullout_germ(&p, &b, ctx, one, xi);
                            let ray = adapted_direction(&[f], d, x)?;
                            laplace_numeric(&germ, ray, ctx, one, x, cfg)?
                        }
                        (Some(f), Some(g)) => p.eval(xc) * cell_sum(f, g, d, ctx, x, cfg)?,
                    };
                    cells.push((cell - sa[i] * sb[j]).norm());
                    lhs += cell;
                }
            }
            let rhs = sa.iter().sum::<Complex64>() * sb.iter().sum::<Complex64>();
            Ok((
                ProductPoint {
                    x,
                    lhs,
                    rhs,
                    deviation: (lhs - rhs).norm(),
                },
                cells,
            ))
        })
        .collect::<Result<_>>()?;

    let nb = fb.terms.len();
    let mut cells: Vec<CellDeviation> = (0..fa.terms.len() * nb)
        .map(|k| CellDeviation {
            i: k / nb,
            j: k % nb,
            max_deviation: 0.0,
        })
        .collect();
    for (_, devs) in &per_point {
        for (c, &v) in cells.iter_mut().zip(devs) {
            c.max_deviation = c.max_deviation.max(v);
        }
    }
    let points: Vec<ProductPoint> = per_point.into_iter().map(|(p, _)| p).collect();
    let max_deviation = points.iter().map(|p| p.deviation).fold(0.0, f64::max);
    Ok(ProductReport {
        points,
        cells,
        max_deviation,
    })
}

/// Three evaluations of `ψ*(ζ)` for real `ζ > 0` along `d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiStar {
    /// `∫ e_{q²}(ξ/q) φ(ξ, ζ) dξ/ξ`.
    pub direct: Complex64,
    /// `I₁ − I₂` after `ξ = u²`.
    pub split: Complex64,
    /// `(a S_{q;2}(E_{a,q^{1/2}}) + b S_{q;2}(E_{b,q^{1/2}}) − 1)/(ab − q^{−1/2} ζ²)`.
    pub closed: Complex64,
}

pub fn psi_star(
    a: Complex64,
    b: Complex64,
    ctx: &QContext,
    zeta: f64,
    cfg: &QuadratureConfig,
) -> Result<PsiStar> {
    let d = Direction(0.0);
    let qm14 = ctx.pow(-0.25);
    let phi = |xi: LogPoint| {
        let s = xi.sqrt().to_complex();
        Ok(1.0 / ((a + qm14 * s * zeta) * (b + qm14 * zeta / s)))
    };
    let half = TransformOrder::fraction(1, 2)?;
    let direct = laplace_numeric(&phi, d, ctx, half, LogPoint::real(ctx.q())?, cfg)?;

    let two = TransformOrder::integer(2);
    let z2 = zeta * zeta;
    let c1 = a * ctx.pow(0.5) / (a * b * ctx.pow(0.5) - z2);
    let c2 = qm14 * zeta / (a * b - ctx.pow(-0.5) * z2);
    let i1 = |u: LogPoint| Ok(c1 / (a + qm14 * zeta * u.to_complex()));
    let i2 = |u: LogPoint| Ok(c2 / (u.to_complex() * b + qm14 * zeta));
    let at = LogPoint::real(ctx.pow(0.25))?;
    let split =
        laplace_numeric(&i1, d, ctx, two, at, cfg)? - laplace_numeric(&i2, d, ctx, two, at, cfg)?;

    let z = LogPoint::real(zeta)?;
    let sa = euler_sum_order(EulerFactor::new(a, 0)?, d, ctx, two, z, cfg)?;
    let sb = euler_sum_order(EulerFactor::new(b, 0)?, d, ctx, two, z, cfg)?;
    let closed = (a * sa + b * sb - 1.0) / (a * b - ctx.pow(-0.5) * z2);
    Ok(PsiStar {
        direct,
        split,
        closed,
    })
}
