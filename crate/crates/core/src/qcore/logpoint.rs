use std::ops::{Div, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(modulus, argument)` of the Riemann surface of the logarithm.
///
/// The argument is never reduced modulo `2π`: `(r, θ)` and `(r, θ + 2π)` are
/// different points, and `log` is single valued.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogPoint {
    modulus: f64,
    arg: f64,
}

impl LogPoint {
    pub fn new(modulus: f64, arg: f64) -> Result<Self> {
        if !(modulus.is_finite() && modulus > 0.0) || !arg.is_finite() {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self { modulus, arg })
    }

    /// Point on the positive real axis.
    pub fn real(modulus: f64) -> Result<Self> {
        Self::new(modulus, 0.0)
    }

    /// Point whose logarithm is `z`.
    pub fn from_log(z: Complex64) -> Self {
        Self {
            modulus: z.re.exp(),
            arg: z.im,
        }
    }

    /// Lifts a nonzero complex number to the principal sheet.
    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.norm(), z.arg())
    }

    /// Lifts `z` to the sheet whose argument is closest to `near`.
    pub fn lift_near(z: Complex64, near: f64) -> Result<Self> {
        let principal = z.arg();
        let turns = ((near - principal) / std::f64::consts::TAU).round();
        Self::new(z.norm(), principal + turns * std::f64::consts::TAU)
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn arg(&self) -> f64 {
        self.arg
    }

    pub fn ln_modulus(&self) -> f64 {
        self.modulus.ln()
    }

    pub fn log(&self) -> Complex64 {
        Complex64::new(self.modulus.ln(), self.arg)
    }

    /// Projection to `C*`.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.arg)
    }

    pub fn inv(&self) -> Self {
        Self {
            modulus: 1.0 / self.modulus,
            arg: -self.arg,
        }
    }

    /// Continuous square root: halves the argument, no branch cut.
    pub fn sqrt(&self) -> Self {
        Self {
            modulus: self.modulus.sqrt(),
            arg: 0.5 * self.arg,
        }
    }

    pub fn powf(&self, e: f64) -> Self {
        Self {
            modulus: self.modulus.powf(e),
            arg: self.arg * e,
        }
    }

    /// Multiplication by a positive real.
    pub fn scale(&self, s: f64) -> Self {
        debug_assert!(s > 0.0);
        Self {
            modulus: self.modulus * s,
            arg: self.arg,
        }
    }

    /// Multiplication by `e^{i θ}` on the surface.
    pub fn rotate(&self, theta: f64) -> Self {
        Self {
            modulus: self.modulus,
            arg: self.arg + theta,
        }
    }

    /// `x^n` as a complex number, using the sheet argument.
    pub fn powi_complex(&self, n: i32) -> Complex64 {
        Complex64::from_polar(self.modulus.powi(n), self.arg * n as f64)
    }
}

impl Mul for LogPoint {
    type Output = LogPoint;

    fn mul(self, rhs: LogPoint) -> LogPoint {
        LogPoint {
            modulus: self.modulus * rhs.modulus,
            arg: self.arg + rhs.arg,
        }
    }
}

impl Div for LogPoint {
    type Output = LogPoint;

    fn div(self, rhs: LogPoint) -> LogPoint {
        LogPoint {
            modulus: self.modulus / rhs.modulus,
            arg: self.arg - rhs.arg,
        }
    }
}
