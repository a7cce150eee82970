//! Analytic q-Borel and q-Laplace transforms by trapezoidal quadrature in the
//! log variable, where the kernel is an exact Gaussian.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal::TransformOrder;
use crate::qcore::{Direction, LogPoint, QContext};

/// Trapezoid and window policy.
///
/// `step` and `max_window` are measured in units of the kernel's standard
/// deviation `σ = √(log q')`, so one config serves every order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Node spacing.
    pub step: f64,
    /// A block is small when its mass is below `tol · |accumulated|`.
    pub tol: f64,
    /// Half-width of the largest admissible window.
    pub max_window: f64,
    /// Consecutive small blocks needed to close a side.
    pub blocks: usize,
    /// A side whose integrand fails is closed anyway when its last block was
    /// below `edge_tol · |accumulated|`.
    pub edge_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            step: 0.1,
            tol: 1e-10,
            max_window: 60.0,
            blocks: 3,
            edge_tol: 1e-6,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.step > 0.0
            && self.tol > 0.0
            && self.tol < 1.0
            && self.max_window >= 10.0 * self.step
            && self.blocks > 0
            && self.edge_tol >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "bad quadrature config {self:?}"
            )))
        }
    }

    pub fn with_step(self, step: f64) -> Self {
        Self { step, ..self }
    }
}

/// An analytic function sampled on the logarithmic surface.
pub trait ComplexFunction: Sync {
    fn eval(&self, x: LogPoint) -> Result<Complex64>;

    /// Value as `exp(log_scale) · mantissa`, for functions that overflow.
    fn eval_scaled(&self, x: LogPoint) -> Result<Scaled> {
        self.eval(x).map(Scaled::from_value)
    }
}

impl<F> ComplexFunction for F
where
    F: Fn(LogPoint) -> Result<Complex64> + Sync,
{
    fn eval(&self, x: LogPoint) -> Result<Complex64> {
        self(x)
    }
}

/// `exp(log_scale) · mantissa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub log_scale: f64,
    pub mantissa: Complex64,
}

impl Scaled {
    pub fn from_value(z: Complex64) -> Self {
        Self {
            log_scale: 0.0,
            mantissa: z,
        }
    }

    pub fn from_log(w: Complex64) -> Self {
        Self {
            log_scale: w.re,
            mantissa: Complex64::from_polar(1.0, w.im),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    pub fn add(&self, other: &Scaled) -> Scaled {
        let top = self.log_scale.max(other.log_scale);
        Scaled {
            log_scale: top,
            mantissa: self.mantissa * (self.log_scale - top).exp()
                + other.mantissa * (other.log_scale - top).exp(),
        }
    }

    /// `ln |value|`, finite even when `value` is not representable.
    pub fn ln_abs(&self) -> f64 {
        self.log_scale + self.mantissa.norm().ln()
    }
}

/// Trapezoid sum of `g` on the nodes `s = n·step`, grown block by block from
/// `s = 0` until both tails settle.
fn gaussian_trapezoid<G>(g: G, cfg: &QuadratureConfig) -> Result<Complex64>
where
    G: Fn(f64) -> Result<Complex64>,
{
    cfg.validate()?;
    let h = cfg.step;
    let per_block = (1.0 / h).round().max(1.0) as i64;
    let eval = |n: i64| -> Result<Complex64> {
        let v = g(n as f64 * h)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite)
        }
    };

    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for n in -per_block..=per_block {
        let v = eval(n)?;
        acc += v;
        mass += v.norm();
    }

    struct Side {
        dir: i64,
        next: i64,
        small: usize,
        last: f64,
        open: bool,
    }
    let mut sides = [
        Side {
            dir: 1,
            next: per_block + 1,
            small: 0,
            last: mass,
            open: true,
        },
        Side {
            dir: -1,
            next: per_block + 1,
            small: 0,
            last: mass,
            open: true,
        },
    ];
    let max_n = (cfg.max_window / h).ceil() as i64;

    while sides.iter().any(|s| s.open) {
        for side in sides.iter_mut().filter(|s| s.open) {
            if side.next > max_n {
                return Err(Error::WindowExhausted {
                    half_width: cfg.max_window,
                });
            }
            let block: Result<Vec<Complex64>> = (side.next..side.next + per_block)
                .map(|n| eval(side.dir * n))
                .collect();
            let reference = acc.norm().max(1e-6 * mass);
            let vals = match block {
                Ok(v) => v,
                Err(e) => {
                    if side.last <= cfg.edge_tol * reference {
                        side.open = false;
                        continue;
                    }
                    return Err(e);
                }
            };
            let bmass: f64 = vals.iter().map(|v| v.norm()).sum();
            acc += vals.iter().sum::<Complex64>();
            mass += bmass;
            side.next += per_block;
            side.last = bmass;
            if bmass <= cfg.tol * acc.norm().max(1e-6 * mass) {
                side.small += 1;
                if side.small >= cfg.blocks {
                    side.open = false;
                }
            } else {
                side.small = 0;
            }
        }
    }
    Ok(acc * h)
}

/// `L^d_{q;k}(φ)(x)` in scaled form.
///
/// With `ξ = e^{u + i d}`, `A = ln|x| − L/2`, `B = arg x − d` and `u = A + σ s`
/// the integrand becomes `exp(−s²/2) · cis(sB/σ) · φ(ξ)`.
pub fn laplace_scaled(
    phi: &dyn ComplexFunction,
    d: Direction,
    ctx: &QContext,
    k: TransformOrder,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Scaled> {
    let l = k.logq_eff(ctx);
    let sigma = l.sqrt();
    let a = x.ln_modulus() - 0.5 * l;
    let b = x.arg() - d.radians();
    let omega = b / sigma;
    let sum = gaussian_trapezoid(
        |s| {
            let xi = LogPoint::from_log(Complex64::new(a + sigma * s, d.radians()));
            let w = Complex64::from_polar((-0.5 * s * s).exp(), omega * s);
            Ok(w * phi.eval(xi)?)
        },
        cfg,
    )?;
    Ok(Scaled {
        log_scale: -0.5 * (std::f64::consts::TAU * l).ln() + b * b / (2.0 * l) + sigma.ln(),
        mantissa: sum,
    })
}

pub fn laplace_numeric(
    phi: &dyn ComplexFunction,
    d: Direction,
    ctx: &QContext,
    k: TransformOrder,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    finite(laplace_scaled(phi, d, ctx, k, x, cfg)?.value())
}

/// `B_{q;k}(f)(ξ)` over the spiral `x = r e^{iθ}`.
///
/// With `A' = ln r − L/2 − ln|ξ|` and `θ = arg ξ + σ s` the integrand becomes
/// `exp(−s²/2) · cis(A' s/σ) · f(x)`.
pub fn borel_scaled(
    f: &dyn ComplexFunction,
    r: f64,
    ctx: &QContext,
    k: TransformOrder,
    xi: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Scaled> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidModulus(r));
    }
    let l = k.logq_eff(ctx);
    let sigma = l.sqrt();
    let ap = r.ln() - 0.5 * l - xi.ln_modulus();
    let omega = ap / sigma;
    let sum = gaussian_trapezoid(
        |s| {
            let x = LogPoint::from_log(Complex64::new(r.ln(), xi.arg() + sigma * s));
            let w = Complex64::from_polar((-0.5 * s * s).exp(), omega * s);
            Ok(w * f.eval(x)?)
        },
        cfg,
    )?;
    Ok(Scaled {
        log_scale: -0.5 * (std::f64::consts::TAU * l).ln() + ap * ap / (2.0 * l) + sigma.ln(),
        mantissa: sum,
    })
}

pub fn borel_numeric(
    f: &dyn ComplexFunction,
    r: f64,
    ctx: &QContext,
    k: TransformOrder,
    xi: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    finite(borel_scaled(f, r, ctx, k, xi, cfg)?.value())
}

/// Spiral radius that removes the oscillating factor for `f(x) = x^n`.
pub fn borel_radius_for_degree(xi: LogPoint, ctx: &QContext, k: TransformOrder, n: f64) -> f64 {
    xi.modulus() * ((0.5 - n) * k.logq_eff(ctx)).exp()
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite)
    }
}

/// Where a growth scan samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanKind {
    /// `x = r e^{it}`, parameter `t`.
    Spiral { r: f64 },
    /// `ξ = e^{p + i d}`, parameter `p = ln|ξ|`.
    Ray { d: Direction },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthSample {
    pub parameter: f64,
    pub log_abs: f64,
}

/// Samples `ln|f|` along a spiral or ray.
pub fn growth_scan(
    f: &dyn ComplexFunction,
    kind: ScanKind,
    grid: &[f64],
) -> Result<Vec<GrowthSample>> {
    grid.iter()
        .map(|&p| {
            let x = match kind {
                ScanKind::Spiral { r } => LogPoint::new(r, p)?,
                ScanKind::Ray { d } => LogPoint::from_log(Complex64::new(p, d.radians())),
            };
            let log_abs = f.eval_scaled(x)?.ln_abs();
            if !log_abs.is_finite() {
                return Err(Error::NonFinite);
            }
            Ok(GrowthSample {
                parameter: p,
                log_abs,
            })
        })
        .collect()
}

/// Least-squares `c₀ + c₁ p + c₂ p²` through the samples; returns `[c₀, c₁, c₂]`.
pub fn quadratic_fit(samples: &[GrowthSample]) -> Result<[f64; 3]> {
    if samples.len() < 3 {
        return Err(Error::InvalidInput(
            "quadratic fit needs three samples".into(),
        ));
    }
    let mut m = [[0.0f64; 4]; 3];
    for s in samples {
        let pw = [1.0, s.parameter, s.parameter * s.parameter];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += pw[i] * pw[j];
            }
            m[i][3] += pw[i] * s.log_abs;
        }
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("nonempty");
        m.swap(col, piv);
        if m[col][col].abs() < 1e-300 {
            return Err(Error::InvalidInput("degenerate fit grid".into()));
        }
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot = m[col];
                for (x, p) in m[row].iter_mut().zip(pivot).skip(col) {
                    *x -= f * p;
                }
            }
        }
    }
    Ok([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}
