use std::f64::consts::TAU;

use num_complex::Complex64;

use super::f1::F1Germ;
use crate::error::{Error, Result};
use crate::euler::{euler_sum_order, EulerFactor};
use crate::formal::TransformOrder;
use crate::qcore::{Direction, LogPoint, QContext};
use crate::quad::{laplace_numeric, ComplexFunction, QuadratureConfig};

/// Nodes of the averaging circle around the removable point.
const CIRCLE_NODES: usize = 64;

/// How `f₂^d = L^d_{q;2}(f₁)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum F2Mode {
    /// Order-two Laplace transform of `f₁`; converges for `|ζ| < q^{1/4} √|ab|`.
    Quadrature,
    /// `(c − a S_{q;2}(E_{a,q^{1/2}}) − b S_{q;2}(E_{b,q^{1/2}}))/(q^{−1/2} ζ² − ab)`.
    Division { c: f64 },
    /// Quadrature inside half the critical radius, circle mean around the
    /// removable points `±q^{1/4} √(ab)`, division form elsewhere.
    Auto,
}

/// `f₂^d` for fixed `(a, b, d)`.
#[derive(Debug, Clone)]
pub struct F2Function {
    f1: F1Germ,
    d: Direction,
    ctx: QContext,
    cfg: QuadratureConfig,
    mode: F2Mode,
    zeta0: Complex64,
}

impl F2Function {
    pub fn new(
        a: Complex64,
        b: Complex64,
        d: Direction,
        ctx: &QContext,
        cfg: &QuadratureConfig,
        mode: F2Mode,
    ) -> Result<Self> {
        let f1 = F1Germ::new(a, b, ctx)?;
        Ok(Self {
            f1,
            d,
            ctx: *ctx,
            cfg: *cfg,
            mode,
            zeta0: ctx.pow(0.25) * (a * b).sqrt(),
        })
    }

    /// One of the two removable points `±q^{1/4} √(ab)`.
    pub fn removable_point(&self) -> Complex64 {
        self.zeta0
    }

    fn quadrature(&self, zeta: LogPoint) -> Result<Complex64> {
        laplace_numeric(
            &self.f1,
            self.d,
            &self.ctx,
            TransformOrder::integer(2),
            zeta,
            &self.cfg,
        )
    }

    fn division(&self, zeta: LogPoint, c: f64) -> Result<Complex64> {
        let (a, b) = (self.f1.a(), self.f1.b());
        let z = zeta.to_complex();
        let den = self.ctx.pow(-0.5) * z * z - a * b;
        if den.norm() < 1e-8 {
            return Err(Error::DivisionNearZero(den.norm()));
        }
        let two = TransformOrder::integer(2);
        let sa = euler_sum_order(
            EulerFactor::new(a, 0)?,
            self.d,
            &self.ctx,
            two,
            zeta,
            &self.cfg,
        )?;
        let sb = euler_sum_order(
            EulerFactor::new(b, 0)?,
            self.d,
            &self.ctx,
            two,
            zeta,
            &self.cfg,
        )?;
        Ok((c - a * sa - b * sb) / den)
    }

    fn circle_mean(&self, zeta: LogPoint, radius: f64) -> Result<Complex64> {
        let z = zeta.to_complex();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..CIRCLE_NODES {
            let w = z + Complex64::from_polar(radius, TAU * k as f64 / CIRCLE_NODES as f64);
            acc += self.division(LogPoint::lift_near(w, zeta.arg())?, 1.0)?;
        }
        Ok(acc / CIRCLE_NODES as f64)
    }

    pub fn at(&self, zeta: LogPoint) -> Result<Complex64> {
        match self.mode {
            F2Mode::Quadrature => self.quadrature(zeta),
            F2Mode::Division { c } => self.division(zeta, c),
            F2Mode::Auto => {
                let r0 = self.zeta0.norm();
                if zeta.modulus() < 0.5 * r0 {
                    return self.quadrature(zeta);
                }
                let radius = 0.25 * r0;
                let z = zeta.to_complex();
                if (z - self.zeta0).norm() < 0.5 * radius || (z + self.zeta0).norm() < 0.5 * radius
                {
                    self.circle_mean(zeta, radius)
                } else {
                    self.division(zeta, 1.0)
                }
            }
        }
    }
}

impl ComplexFunction for F2Function {
    fn eval(&self, zeta: LogPoint) -> Result<Complex64> {
        self.at(zeta)
    }
}

pub fn f2_eval(
    a: Complex64,
    b: Complex64,
    d: Direction,
    ctx: &QContext,
    zeta: LogPoint,
    cfg: &QuadratureConfig,
    mode: F2Mode,
) -> Result<Complex64> {
    F2Function::new(a, b, d, ctx, cfg, mode)?.at(zeta)
}
