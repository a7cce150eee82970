//! The Gaussian q-kernel `e_q(x) = (2π log q)^{-1/2} exp(-(log(q^{1/2} x))² / (2 log q))`.

use num_complex::Complex64;

use crate::qcore::{LogPoint, QContext};

/// Kernel value kept in exponent form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub log_value: Complex64,
}

impl KernelValue {
    /// `exp(log_value)`; overflows to infinity when `Re(log_value) > ~709`.
    pub fn value(&self) -> Complex64 {
        self.log_value.exp()
    }

    /// `true` when [`KernelValue::value`] is representable.
    pub fn is_representable(&self) -> bool {
        self.log_value.re.abs() < 700.0
    }
}

/// `log e_q(x)` for a base given through `log q`.
pub fn log_eq(x: LogPoint, logq: f64) -> Complex64 {
    let w = x.log() + 0.5 * logq;
    -0.5 * (std::f64::consts::TAU * logq).ln() - w * w / (2.0 * logq)
}

pub fn eq_kernel(x: LogPoint, ctx: &QContext) -> KernelValue {
    KernelValue {
        log_value: log_eq(x, ctx.logq()),
    }
}

/// `|log(e_q(ξ₁/x) e_q(ξ₂/x)) − log(e_{q²}(ξ/q) e_{q^{1/2}}(ζ/x))|` with
/// `ξ = ξ₁/ξ₂`, `ζ = q^{1/4} √(ξ₁ξ₂)`.
pub fn kernel_identity_residual(xi1: LogPoint, xi2: LogPoint, x: LogPoint, ctx: &QContext) -> f64 {
    let l = ctx.logq();
    let lhs = log_eq(xi1 / x, l) + log_eq(xi2 / x, l);
    let xi = (xi1 / xi2).scale(1.0 / ctx.q());
    let zeta = (xi1 * xi2).sqrt().scale(ctx.pow(0.25));
    let rhs = log_eq(xi, 2.0 * l) + log_eq(zeta / x, 0.5 * l);
    (lhs - rhs).norm()
}

/// `|log e_{q²}(u²/q) − log(½ e_{q^{1/2}}(u/q^{1/4}))|`.
pub fn halfpower_kernel_residual(u: LogPoint, ctx: &QContext) -> f64 {
    let l = ctx.logq();
    let lhs = log_eq((u * u).scale(1.0 / ctx.q()), 2.0 * l);
    let rhs = log_eq(u.scale(ctx.pow(-0.25)), 0.5 * l) - std::f64::consts::LN_2;
    (lhs - rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI, TAU};

    fn lp(r: f64, t: f64) -> LogPoint {
        LogPoint::new(r, t).unwrap()
    }

    #[test]
    fn centre_value() {
        let ctx = QContext::new(2.0).unwrap();
        let k = eq_kernel(lp(2f64.powf(-0.5), 0.0), &ctx);
        let want = (TAU * 2f64.ln()).powf(-0.5);
        assert!((k.value() - Complex64::new(want, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn reflection() {
        let ctx = QContext::new(2.7).unwrap();
        for &(r, t) in &[(0.3, 1.0), (5.0, -7.0), (1.0, 31.0)] {
            let x = lp(r, t);
            let y = x.inv().scale(1.0 / ctx.q());
            let d = eq_kernel(x, &ctx).log_value - eq_kernel(y, &ctx).log_value;
            assert!(d.norm() < 1e-12);
        }
    }

    #[test]
    fn huge_value_stays_in_log_form() {
        let ctx = QContext::new(2.0).unwrap();
        let l = 2f64.ln();
        let k = eq_kernel(lp(1.0, 10.0 * PI), &ctx);
        let want = -0.5 * (TAU * l).ln() - ((0.5 * l).powi(2) - 100.0 * PI * PI) / (2.0 * l);
        assert!((k.log_value.re - want).abs() < 1e-10);
        assert!(k.log_value.re > 700.0);
        assert!(!k.is_representable());
    }

    #[test]
    fn order_rescaling_matches_direct_base() {
        let ctx = QContext::new(4.0).unwrap();
        let direct = QContext::new(2.0).unwrap();
        let half = ctx.rescaled(crate::formal::TransformOrder::integer(2));
        let x = lp(0.7, 2.0);
        assert_eq!(half.logq(), 0.5 * ctx.logq());
        let d = eq_kernel(x, &half).log_value - eq_kernel(x, &direct).log_value;
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn kernel_examples() {
        let c2 = QContext::new(2.0).unwrap();
        assert!(kernel_identity_residual(lp(1.0, 0.0), lp(1.0, 0.0), lp(1.0, 0.0), &c2) < 1e-14);
        assert!(kernel_identity_residual(lp(1.0, 0.0), lp(2.0, 0.0), lp(0.5, 0.1), &c2) < 1e-12);
        let c15 = QContext::new(1.5).unwrap();
        assert!(kernel_identity_residual(lp(3.0, TAU), lp(0.2, -PI), lp(1.0, 5.0), &c15) < 1e-10);
    }

    #[test]
    fn halfpower_examples() {
        let c2 = QContext::new(2.0).unwrap();
        assert!(halfpower_kernel_residual(lp(1.0, 0.0), &c2) < 1e-15);
        assert!(halfpower_kernel_residual(lp(E, 0.0), &c2) < 1e-13);
        let c3 = QContext::new(3.0).unwrap();
        assert!(halfpower_kernel_residual(lp(1.0, 3.0 * PI), &c3) < 1e-12);
    }
}
