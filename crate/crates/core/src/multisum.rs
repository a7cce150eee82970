//! Multisummation orders and the iterated Laplace pipeline.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{adapted_direction, euler_borel, euler_sum, EulerFactor};
use crate::formal::TransformOrder;
use crate::qcore::{Direction, FormalSeries, LogPoint, QContext};
use crate::quad::{laplace_numeric, ComplexFunction, QuadratureConfig};

/// Orders `s₁ < … < s_r` with `1/s̃_i = 1/s_i − 1/s_{i+1}` and `s̃_r = s_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisumOrder {
    pub s: Vec<Ratio<i64>>,
    pub s_tilde: Vec<Ratio<i64>>,
}

impl MultisumOrder {
    /// Laplace orders `s̃_1, …, s̃_r`, innermost first.
    pub fn stages(&self) -> Vec<TransformOrder> {
        self.s_tilde
            .iter()
            .map(|&k| TransformOrder::new(k).expect("positive"))
            .collect()
    }

    /// Order of the formal Borel transform `s₁`.
    pub fn borel_order(&self) -> TransformOrder {
        TransformOrder::new(self.s[0]).expect("positive")
    }
}

pub fn tilde_sequence(s: &[Ratio<i64>]) -> Result<MultisumOrder> {
    if s.is_empty() || s[0] <= Ratio::zero() || s.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NotIncreasing);
    }
    let mut s_tilde: Vec<Ratio<i64>> = s
        .windows(2)
        .map(|w| Ratio::one() / (w[0].recip() - w[1].recip()))
        .collect();
    s_tilde.push(*s.last().expect("nonempty"));
    Ok(MultisumOrder {
        s: s.to_vec(),
        s_tilde,
    })
}

/// Continued Borel transform together with its Taylor series at 0.
#[derive(Clone)]
pub struct BorelGerm {
    pub function: Arc<dyn ComplexFunction + Send>,
    pub taylor: FormalSeries,
    /// Radius of convergence of `taylor`.
    pub radius: f64,
}

impl BorelGerm {
    pub fn new(
        function: Arc<dyn ComplexFunction + Send>,
        taylor: FormalSeries,
        radius: f64,
    ) -> Self {
        Self {
            function,
            taylor,
            radius,
        }
    }

    /// Largest `|f(ξ) − taylor(ξ)|` over `samples` points on `|ξ| = ρ/4`.
    pub fn taylor_mismatch(&self, samples: usize) -> Result<f64> {
        let r = 0.25 * self.radius;
        let mut worst = 0.0f64;
        for i in 0..samples {
            let t = std::f64::consts::TAU * i as f64 / samples as f64;
            let xi = LogPoint::new(r, t)?;
            let d = self.function.eval(xi)? - self.taylor.eval(xi.to_complex());
            worst = worst.max(d.norm());
        }
        Ok(worst)
    }
}

impl std::fmt::Debug for BorelGerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BorelGerm")
            .field("taylor", &self.taylor)
            .field("radius", &self.radius)
            .finish()
    }
}

/// `g_j = L^d_{q;s̃_j} ∘ … ∘ L^d_{q;s̃_1}(germ)`, evaluable at any point.
pub struct StageFunction<'a> {
    germ: &'a dyn ComplexFunction,
    orders: &'a [TransformOrder],
    d: Direction,
    ctx: QContext,
    cfg: QuadratureConfig,
}

impl<'a> StageFunction<'a> {
    pub fn new(
        germ: &'a dyn ComplexFunction,
        orders: &'a [TransformOrder],
        d: Direction,
        ctx: &QContext,
        cfg: &QuadratureConfig,
    ) -> Self {
        Self {
            germ,
            orders,
            d,
            ctx: *ctx,
            cfg: *cfg,
        }
    }
}

impl ComplexFunction for StageFunction<'_> {
    fn eval(&self, x: LogPoint) -> Result<Complex64> {
        let Some((&k, inner)) = self.orders.split_last() else {
            return self.germ.eval(x);
        };
        let stage = self.orders.len();
        let inner = StageFunction {
            orders: inner,
            ..*self
        };
        laplace_numeric(&inner, self.d, &self.ctx, k, x, &self.cfg).map_err(|e| match e {
            Error::Stage { .. } => e,
            other => Error::Stage {
                stage,
                source: Box::new(other),
            },
        })
    }
}

impl Clone for StageFunction<'_> {
    fn clone(&self) -> Self {
        *self
    }
}

impl Copy for StageFunction<'_> {}

/// `S^d_{q;s⃗}(f)(x) = L^d_{q;s̃_r} ∘ … ∘ L^d_{q;s̃_1}(germ)(x)`.
pub fn multisum(
    germ: &BorelGerm,
    order: &MultisumOrder,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let stages = order.stages();
    StageFunction::new(germ.function.as_ref(), &stages, d, ctx, cfg).eval(x)
}

/// Borel germ of `x^j f` from that of `f`:
/// `q'^{−j(j−1)/2} ξ^j φ(q'^{−j} ξ)`.
pub fn shifted_germ(
    phi: &dyn ComplexFunction,
    j: u32,
    ctx: &QContext,
    k: TransformOrder,
    xi: LogPoint,
) -> Result<Complex64> {
    let l = k.logq_eff(ctx);
    let jf = j as f64;
    let w = (-0.5 * jf * (jf - 1.0) * l).exp();
    Ok(w * xi.powi_complex(j as i32) * phi.eval(xi.scale((-jf * l).exp()))?)
}

/// Borel germ of `p·f` for a polynomial `p`.
pub fn pullout_germ(
    p: &FormalSeries,
    phi: &dyn ComplexFunction,
    ctx: &QContext,
    k: TransformOrder,
    xi: LogPoint,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (j, &c) in p.coeffs().iter().enumerate() {
        if c != Complex64::new(0.0, 0.0) {
            total += c * shifted_germ(phi, j as u32, ctx, k, xi)?;
        }
    }
    Ok(total)
}

/// Maximum deviations of the algebraic properties of the sum map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MorphismReport {
    /// `|S(f+g) − S(f) − S(g)|`.
    pub additivity: f64,
    /// `|S(σ_q f)(x) − S(f)(qx)|`.
    pub equivariance: f64,
    /// `|x S(qx) + a S(x) − 1|` for the `m = 0` factors.
    pub functional_equation: f64,
    /// `|S(p f) − p S(f)|`.
    pub pullout: f64,
}

impl MorphismReport {
    pub fn max(&self) -> f64 {
        self.additivity
            .max(self.equivariance)
            .max(self.functional_equation)
            .max(self.pullout)
    }
}

/// Additivity, σ_q-equivariance and polynomial pull-out of `S^d_{q;1}` on
/// Euler factors, measured on `grid`.
pub fn morphism_checks(
    facs: &[EulerFactor],
    polys: &[FormalSeries],
    d: Direction,
    ctx: &QContext,
    grid: &[LogPoint],
    cfg: &QuadratureConfig,
) -> Result<MorphismReport> {
    let one = TransformOrder::integer(1);
    let mut rep = MorphismReport {
        additivity: 0.0,
        equivariance: 0.0,
        functional_equation: 0.0,
        pullout: 0.0,
    };
    for &x in grid {
        let ray = adapted_direction(facs, d, x)?;
        let sums: Vec<Complex64> = facs
            .iter()
            .map(|&f| euler_sum(f, d, ctx, x, cfg))
            .collect::<Result<_>>()?;
        for (i, &f) in facs.iter().enumerate() {
            for (j, &g) in facs.iter().enumerate().skip(i) {
                let (bf, bg) = (euler_borel(f), euler_borel(g));
                let sum = |xi: LogPoint| Ok(bf.eval(xi)? + bg.eval(xi)?);
                let s = laplace_numeric(&sum, ray, ctx, one, x, cfg)?;
                rep.additivity = rep.additivity.max((s - sums[i] - sums[j]).norm());
            }
            let b = euler_borel(f);
            let shifted = |xi: LogPoint| b.eval(xi.scale(ctx.q()));
            let lhs = laplace_numeric(&shifted, ray, ctx, one, x, cfg)?;
            let rhs = euler_sum(f, d, ctx, x.scale(ctx.q()), cfg)?;
            rep.equivariance = rep.equivariance.max((lhs - rhs).norm());
            if f.m == 0 {
                let r = (x.to_complex() * rhs + f.a * sums[i] - 1.0).norm();
                rep.functional_equation = rep.functional_equation.max(r);
            }
            for p in polys {
                let germ = |xi: LogPoint| pullout_germ(p, &b, ctx, one, xi);
                let lhs = laplace_numeric(&germ, ray, ctx, one, x, cfg)?;
                let rhs = p.eval(x.to_complex()) * sums[i];
                rep.pullout = rep.pullout.max((lhs - rhs).norm());
            }
        }
    }
    Ok(rep)
}
