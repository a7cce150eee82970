use std::f64::consts::{LN_2, PI};

use proptest::prelude::*;
use qborel::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pt(r: f64, t: f64) -> LogPoint {
    LogPoint::new(r, t).unwrap()
}

#[test]
fn kernel_at_one_has_known_modulus() {
    // e_2(1) = (2π ln 2)^{−1/2} exp(−ln 2 / 8).
    let ctx = QContext::new(2.0).unwrap();
    let v = eq_kernel(pt(1.0, 0.0), &ctx).value();
    let want = (2.0 * PI * LN_2).powf(-0.5) * (-LN_2 / 8.0).exp();
    assert!((v - want).norm() < 1e-15);
    assert!((want - 0.43940863).abs() < 1e-8);
}

#[test]
fn kernel_is_symmetric_under_inversion_with_shift() {
    // e_q(x) = e_q(1/(q x)).
    let ctx = QContext::new(3.0).unwrap();
    for x in [pt(0.3, 1.0), pt(5.0, -7.0), pt(1.0, 40.0)] {
        let a = eq_kernel(x, &ctx).log_value;
        let b = eq_kernel(x.inv().scale(1.0 / ctx.q()), &ctx).log_value;
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn kernel_far_sheet_stays_in_log_form() {
    let ctx = QContext::new(2.0).unwrap();
    let k = eq_kernel(pt(1.0, 200.0), &ctx);
    assert!(!k.is_representable());
    assert!(k.log_value.re > 700.0);
}

#[test]
fn laplace_moments_match_gauss_integral() {
    let ctx = QContext::new(2.0).unwrap();
    let cfg = QuadratureConfig::default();
    let x = pt(0.4, 0.7);
    for n in -3..=6 {
        let mono = move |xi: LogPoint| Ok(xi.powi_complex(n));
        let v = laplace_numeric(
            &mono,
            Direction(0.7),
            &ctx,
            TransformOrder::integer(1),
            x,
            &cfg,
        )
        .unwrap();
        let want = x.powi_complex(n) * ctx.pow(0.5 * (n * (n - 1)) as f64);
        assert!((v - want).norm() < 1e-10 * want.norm(), "n = {n}");
    }
}

#[test]
fn halving_step_does_not_degrade_moments() {
    let ctx = QContext::new(4.0).unwrap();
    let coarse = QuadratureConfig::default().with_step(0.8);
    let fine = coarse.with_step(0.4);
    let x = pt(0.9, 0.2);
    let err = |cfg: &QuadratureConfig| {
        let mono = |xi: LogPoint| Ok(xi.powi_complex(3));
        let v = laplace_numeric(
            &mono,
            Direction(0.2),
            &ctx,
            TransformOrder::integer(1),
            x,
            cfg,
        )
        .unwrap();
        let want = x.powi_complex(3) * ctx.pow(3.0);
        (v - want).norm() / want.norm()
    };
    let (e1, e2) = (err(&coarse), err(&fine));
    assert!(e2 <= e1.max(1e-14), "coarse {e1:.2e} fine {e2:.2e}");
}

#[test]
fn borel_of_monomial_on_far_sheet() {
    let ctx = QContext::new(2.0).unwrap();
    let cfg = QuadratureConfig::default();
    let k = TransformOrder::integer(1);
    let xi = pt(0.3, 9.0);
    let mono = |x: LogPoint| Ok(x.powi_complex(2));
    let r = qborel::quad::borel_radius_for_degree(xi, &ctx, k, 2.0);
    let v = borel_numeric(&mono, r, &ctx, k, xi, &cfg).unwrap();
    let want = xi.powi_complex(2) / ctx.q();
    assert!((v - want).norm() < 1e-10 * want.norm());
}

#[test]
fn kernel_growth_fit_on_spiral() {
    // ln|e_q(1/x)| on x = e^{it} grows like t²/(2 ln q).
    let ctx = QContext::new(2.0).unwrap();
    let f = |x: LogPoint| Ok(eq_kernel(x.inv(), &ctx).value());
    let grid: Vec<f64> = (0..=40).map(|i| -10.0 + 0.5 * i as f64).collect();
    let fit = quadratic_fit(&growth_scan(&f, ScanKind::Spiral { r: 1.0 }, &grid).unwrap()).unwrap();
    let want = 1.0 / (2.0 * LN_2);
    assert!((fit[2] - want).abs() < 0.05 * want);
}

#[test]
fn constant_growth_fit_is_flat() {
    let one = |_: LogPoint| Ok(c(1.0, 0.0));
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 - 10.0).collect();
    let fit =
        quadratic_fit(&growth_scan(&one, ScanKind::Ray { d: Direction(0.3) }, &grid).unwrap())
            .unwrap();
    assert!(fit.iter().all(|v| v.abs() < 1e-12));
}

#[test]
fn invalid_config_is_rejected() {
    let cfg = QuadratureConfig {
        step: -1.0,
        ..QuadratureConfig::default()
    };
    assert!(cfg.validate().is_err());
}

proptest! {
    #[test]
    fn laplace_is_linear(re in -2.0f64..2.0, im in -2.0f64..2.0, r in 0.05f64..1.0, t in -1.0f64..1.0) {
        let ctx = QContext::new(2.0).unwrap();
        let cfg = QuadratureConfig::default();
        let k = TransformOrder::integer(1);
        let lam = c(re, im);
        let f = |xi: LogPoint| Ok(1.0 / (2.0 + xi.to_complex()));
        let g = |xi: LogPoint| Ok(xi.to_complex() / (3.0 + xi.to_complex()));
        let h = |xi: LogPoint| Ok(f(xi)? + lam * g(xi)?);
        let x = pt(r, t);
        let d = Direction(t);
        let lhs = laplace_numeric(&h, d, &ctx, k, x, &cfg).unwrap();
        let rhs = laplace_numeric(&f, d, &ctx, k, x, &cfg).unwrap() + lam * laplace_numeric(&g, d, &ctx, k, x, &cfg).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn kernel_product_identity(
        r1 in -2.0f64..2.0, t1 in -20.0f64..20.0,
        r2 in -2.0f64..2.0, t2 in -20.0f64..20.0,
        r3 in -2.0f64..2.0, t3 in -20.0f64..20.0,
        q in 1.2f64..6.0,
    ) {
        let ctx = QContext::new(q).unwrap();
        let res = kernel_identity_residual(pt(r1.exp(), t1), pt(r2.exp(), t2), pt(r3.exp(), t3), &ctx);
        prop_assert!(res < 1e-10);
        prop_assert!(halfpower_kernel_residual(pt(r1.exp(), t1), &ctx) < 1e-10);
    }
}
