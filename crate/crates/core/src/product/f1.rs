use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{LogPoint, QContext};
use crate::quad::ComplexFunction;

/// Taylor terms used once the argument is inside the base disc.
const TAYLOR_TERMS: usize = 80;

/// `f₁ = B̂_{q;1}(E_a E_b)`, the solution of
/// `(q^{−1} ζ² σ_q^{−1} − ab) f₁ = (ζ² − ab)/((ζ + a)(ζ + b))` analytic at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct F1Germ {
    a: Complex64,
    b: Complex64,
    ctx: QContext,
    taylor: Vec<Complex64>,
    rho: f64,
}

impl F1Germ {
    pub fn new(a: Complex64, b: Complex64, ctx: &QContext) -> Result<Self> {
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::ZeroParameter);
        }
        Ok(Self {
            a,
            b,
            ctx: *ctx,
            taylor: f1_taylor(a, b, ctx, TAYLOR_TERMS),
            rho: 0.5 * a.norm().min(b.norm()),
        })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Right-hand side `g(ζ) = (ab − ζ²)/(ab (ζ + a)(ζ + b))` of the unrolled recursion.
    fn g(&self, z: Complex64) -> Result<Complex64> {
        let (za, zb) = (z + self.a, z + self.b);
        if za.norm() < 1e-10 * self.a.norm() || zb.norm() < 1e-10 * self.b.norm() {
            return Err(Error::PoleHit);
        }
        let ab = self.a * self.b;
        Ok((ab - z * z) / (ab * za * zb))
    }

    fn base(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.taylor.iter().rev() {
            acc = acc * z + c;
        }
        let tail = (self.taylor[TAYLOR_TERMS - 1] * z.powu(TAYLOR_TERMS as u32 - 1)).norm();
        if tail > 1e-15 * acc.norm().max(self.taylor[0].norm()) {
            return Err(Error::NonConvergent(tail));
        }
        Ok(acc)
    }

    /// `f₁(ζ) = Σ_{j<J} P_j g(ζ/q^j) + P_J f₁(ζ/q^J)` with
    /// `P_j = Π_{i<j} (ζ/q^i)²/(abq)`, stopped once `|ζ|/q^J ≤ ρ`.
    pub fn at(&self, z: Complex64) -> Result<Complex64> {
        let q = self.ctx.q();
        let abq = self.a * self.b * q;
        let mut total = Complex64::new(0.0, 0.0);
        let mut weight = Complex64::new(1.0, 0.0);
        let mut w = z;
        while w.norm() > self.rho {
            total += weight * self.g(w)?;
            weight *= w * w / abq;
            w /= q;
        }
        total += weight * self.base(w)?;
        if total.re.is_finite() && total.im.is_finite() {
            Ok(total)
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Residual of the defining equation at `ζ`.
    pub fn equation_residual(&self, z: Complex64) -> Result<f64> {
        let q = self.ctx.q();
        let ab = self.a * self.b;
        let lhs = z * z / q * self.at(z / q)? - ab * self.at(z)?;
        let rhs = (z * z - ab) / ((z + self.a) * (z + self.b));
        Ok((lhs - rhs).norm())
    }
}

impl ComplexFunction for F1Germ {
    fn eval(&self, xi: LogPoint) -> Result<Complex64> {
        self.at(xi.to_complex())
    }
}

/// `t_n = (−1)^n Σ_{i+j=n} a^{−i−1} b^{−j−1} q^{−ij}`, the coefficients of
/// `B̂_{q;1}(E_a E_b)`.
pub fn f1_taylor(a: Complex64, b: Complex64, ctx: &QContext, n: usize) -> Vec<Complex64> {
    let (ia, ib) = (a.inv(), b.inv());
    (0..n)
        .map(|k| {
            let s: Complex64 = (0..=k)
                .map(|i| {
                    let j = k - i;
                    ia.powi(i as i32 + 1) * ib.powi(j as i32 + 1) * ctx.pow(-((i * j) as f64))
                })
                .sum();
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}

/// `f₁(ζ)` for the pair `(a, b)`.
pub fn f1_eval(a: Complex64, b: Complex64, ctx: &QContext, zeta: LogPoint) -> Result<Complex64> {
    F1Germ::new(a, b, ctx)?.eval(zeta)
}
