use std::f64::consts::TAU;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use qborel::euler::euler_sum_scaled;
use qborel::io::{parse_decomposition, parse_operator};
use qborel::quad::borel_radius_for_degree;
use qborel::{
    borel_numeric, check_commutation, euler_sum, halfpower_kernel_residual,
    kernel_identity_residual, laplace_numeric, morphism_checks, multisum, newton_polygon,
    product_theorem_check, qborel_formal, qlaplace_formal, quadratic_fit, spiral_inverse_scan,
    stokes_jump, tilde_sequence, BorelGerm, Direction, Error, EulerFactor, F1Germ, FormalSeries,
    GrowthSample, LogPoint, QContext, QDifferenceOperator, QuadratureConfig, Result,
    TransformOrder, C64,
};
use serde_json::{json, Value};

use crate::report::{cx, Outcome, Table};
use crate::{Command, Common, GermKind};

pub fn run(cmd: &Command, common: &Common) -> Result<Outcome> {
    let ctx = QContext::new(common.q)?;
    let cfg = common.quad();
    cfg.validate()?;
    match cmd {
        Command::EulerSum {
            a,
            m,
            d,
            x,
            threshold,
        } => euler_sum_cmd(*a, *m, Direction(*d), &x.0, *threshold, &ctx, &cfg),
        Command::StokesCheck {
            a,
            d1,
            d2,
            x,
            threshold,
        } => stokes_cmd(
            *a,
            Direction(*d1),
            Direction(*d2),
            &x.0,
            *threshold,
            &ctx,
            &cfg,
        ),
        Command::SpiralScan { r, t, d, margin } => {
            spiral_cmd(*r, &t.0, Direction(*d), *margin, &ctx, &cfg)
        }
        Command::NewtonPolygon { operator } => newton_cmd(operator),
        Command::Multisum {
            order,
            germ,
            a,
            b,
            d,
            x,
            threshold,
        } => multisum_cmd(
            &order.0,
            *germ,
            *a,
            *b,
            Direction(*d),
            &x.0,
            *threshold,
            &ctx,
            &cfg,
        ),
        Command::ProductCheck {
            a,
            b,
            d,
            grid,
            threshold,
        } => product_cmd(a, b, Direction(*d), grid.as_deref(), *threshold, &ctx, &cfg),
        Command::IdentitySuite => identity_suite(&ctx, &cfg),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn point(x: LogPoint) -> Value {
    json!({"modulus": x.modulus(), "arg": x.arg()})
}

/// `x S^{[m]}(qx) + a S^{[m]}(x) + m S^{[m−1]}(x) − [m = 0]`, the `m`-th
/// `a`-derivative of the Euler equation.
fn euler_residual(
    fac: EulerFactor,
    d: Direction,
    ctx: &QContext,
    x: LogPoint,
    cfg: &QuadratureConfig,
) -> Result<(C64, f64)> {
    let s = euler_sum(fac, d, ctx, x, cfg)?;
    let sq = euler_sum(fac, d, ctx, x.scale(ctx.q()), cfg)?;
    let lower = if fac.m == 0 {
        C64::new(-1.0, 0.0)
    } else {
        fac.m as f64 * euler_sum(EulerFactor::new(fac.a, fac.m - 1)?, d, ctx, x, cfg)?
    };
    Ok((s, (x.to_complex() * sq + fac.a * s + lower).norm()))
}

fn euler_sum_cmd(
    a: C64,
    m: u32,
    d: Direction,
    xs: &[LogPoint],
    threshold: f64,
    ctx: &QContext,
    cfg: &QuadratureConfig,
) -> Result<Outcome> {
    let fac = EulerFactor::new(a, m)?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut worst = 0.0f64;
    for &x in xs {
        let (s, res) = euler_residual(fac, d, ctx, x, cfg)?;
        worst = worst.max(res);
        rows.push(vec![x.modulus(), x.arg(), s.re, s.im, res]);
        results.push(json!({"x": point(x), "value": cx(s), "residual": res}));
    }
    Ok(Outcome {
        inputs: json!({"a": cx(a), "m": m, "d": d.0}),
        results: json!({"points": results, "max_residual": worst, "threshold": threshold}),
        pass: worst < threshold,
        table: Some(Table {
            header: vec!["modulus", "arg", "re", "im", "residual"],
            rows,
        }),
    })
}

fn stokes_cmd(
    a: C64,
    d1: Direction,
    d2: Direction,
    xs: &[LogPoint],
    threshold: f64,
    ctx: &QContext,
    cfg: &QuadratureConfig,
) -> Result<Outcome> {
    let fac = EulerFactor::new(a, 0)?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut worst = 0.0f64;
    for &x in xs {
        let predicted = stokes_jump(fac, d1, d2, ctx, x)?;
        let measured = euler_sum(fac, d1, ctx, x, cfg)? - euler_sum(fac, d2, ctx, x, cfg)?;
        let dev = (predicted - measured).norm();
        worst = worst.max(dev);
        rows.push(vec![
            x.modulus(),
            x.arg(),
            predicted.re,
            predicted.im,
            measured.re,
            measured.im,
            dev,
        ]);
        results.push(json!({"x": point(x), "predicted": cx(predicted), "quadrature": cx(measured), "deviation": dev}));
    }
    Ok(Outcome {
        inputs: json!({"a": cx(a), "d1": d1.0, "d2": d2.0}),
        results: json!({"points": results, "max_deviation": worst, "threshold": threshold}),
        pass: worst < threshold,
        table: Some(Table {
            header: vec![
                "modulus",
                "arg",
                "predicted_re",
                "predicted_im",
                "quadrature_re",
                "quadrature_im",
                "deviation",
            ],
            rows,
        }),
    })
}

fn spiral_cmd(
    r: f64,
    ts: &[f64],
    d: Direction,
    margin: f64,
    ctx: &QContext,
    cfg: &QuadratureConfig,
) -> Result<Outcome> {
    let rows = spiral_inverse_scan(ctx, r, ts, d, cfg)?;
    let reference = spiral_inverse_scan(ctx, r, &[0.0], d, cfg)?[0].bound;
    let pass = rows.iter().all(|row| row.bound <= reference + margin);
    let samples: Vec<GrowthSample> = rows
        .iter()
        .map(|row| GrowthSample {
            parameter: row.t,
            log_abs: row.log_inverse,
        })
        .collect();
    let fit = if samples.len() >= 3 {
        Some(quadratic_fit(&samples)?[2])
    } else {
        None
    };
    Ok(Outcome {
        inputs: json!({"r": r, "d": d.0, "margin": margin}),
        results: json!({
            "rows": rows,
            "reference": reference,
            "max_bound": rows.iter().map(|row| row.bound).fold(f64::NEG_INFINITY, f64::max),
            "fitted_t2_coefficient": fit,
            "predicted_t2_coefficient": -1.0 / (2.0 * ctx.logq()),
        }),
        pass,
        table: Some(Table {
            header: vec!["t", "sheets", "log_inverse", "bound", "shifted_bound"],
            rows: rows
                .iter()
                .map(|row| {
                    vec![
                        row.t,
                        row.sheets as f64,
                        row.log_inverse,
                        row.bound,
                        row.shifted_bound,
                    ]
                })
                .collect(),
        }),
    })
}

fn newton_cmd(path: &Path) -> Result<Outcome> {
    let op = parse_operator(&read(path)?)?;
    let p = newton_polygon(&op)?;
    let slopes: Vec<String> = p.slopes.iter().map(|s| s.to_string()).collect();
    let positive: Vec<String> = p.positive_slopes().iter().map(|s| s.to_string()).collect();
    Ok(Outcome {
        inputs: json!({"operator": path.display().to_string()}),
        results: json!({"vertices": p.vertices, "slopes": slopes, "positive_slopes": positive}),
        pass: true,
        table: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn multisum_cmd(
    order: &[qborel::Ratio<i64>],
    germ: GermKind,
    a: C64,
    b: C64,
    d: Direction,
    xs: &[LogPoint],
    threshold: f64,
    ctx: &QContext,
    cfg: &QuadratureConfig,
) -> Result<Outcome> {
    let ord = tilde_sequence(order)?;
    let fa = EulerFactor::new(a, 0)?;
    let fb = EulerFactor::new(b, 0)?;
    let germ_fn: BorelGerm = match germ {
        GermKind::Euler => BorelGerm::new(
            Arc::new(qborel::euler_borel(fa)),
            qborel::euler_borel(fa).taylor(16),
            a.norm(),
        ),
        GermKind::F1 => BorelGerm::new(
            Arc::new(F1Germ::new(a, b, ctx)?),
            FormalSeries::new(qborel::product::f1_taylor(a, b, ctx, 17), 16),
            a.norm().min(b.norm()),
        ),
    };
    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for &x in xs {
        let v = multisum(&germ_fn, &ord, d, ctx, x, cfg)?;
        let reference = match germ {
            GermKind::Euler => euler_sum(fa, d, ctx, x, cfg)?,
            GermKind::F1 => euler_sum(fa, d, ctx, x, cfg)? * euler_sum(fb, d, ctx, x, cfg)?,
        };
        let dev = (v - reference).norm();
        worst = worst.max(dev);
        rows.push(vec![
            x.modulus(),
            x.arg(),
            v.re,
            v.im,
            reference.re,
            reference.im,
            dev,
        ]);
        results.push(
            json!({"x": point(x), "value": cx(v), "reference": cx(reference), "deviation": dev}),
        );
    }
    let s_tilde: Vec<String> = ord.s_tilde.iter().map(|s| s.to_string()).collect();
    let s: Vec<String> = ord.s.iter().map(|s| s.to_string()).collect();
    Ok(Outcome {
        inputs: json!({
            "order": s,
            "germ": match germ { GermKind::Euler => "euler", GermKind::F1 => "f1" },
            "a": cx(a), "b": cx(b), "d": d.0,
        }),
        results: json!({"s_tilde": s_tilde, "points": results, "max_deviation": worst, "threshold": threshold}),
        pass: worst < threshold,
        table: Some(Table {
            header: vec![
                "modulus",
                "arg",
                "re",
                "im",
                "reference_re",
                "reference_im",
                "deviation",
            ],
            rows,
        }),
    })
}

fn product_cmd(
    pa: &Path,
    pb: &Path,
    d: Direction,
    grid: Option<&str>,
    threshold: f64,
    ctx: &QContext,
    cfg: &QuadratureConfig,
) -> Result<Outcome> {
    let grid = crate::parse::grid(grid.unwrap_or("")).map_err(Error::InvalidInput)?;
    let fa = parse_decomposition(&read(pa)?)?;
    let fb = parse_decomposition(&read(pb)?)?;
    let rep = product_theorem_check(&fa, &fb, d, ctx, &grid, cfg)?;
    let rows = rep
        .points
        .iter()
        .map(|p| {
            vec![
                p.x.modulus(),
                p.x.arg(),
                p.lhs.re,
                p.lhs.im,
                p.rhs.re,
                p.rhs.im,
                p.deviation,
            ]
        })
        .collect();
    let points: Vec<Value> = rep
        .points
        .iter()
        .map(|p| json!({"x": point(p.x), "lhs": cx(p.lhs), "rhs": cx(p.rhs), "deviation": p.deviation}))
        .collect();
    Ok(Outcome {
        inputs: json!({"A": pa.display().to_string(), "B": pb.display().to_string(), "d": d.0}),
        results: json!({
            "points": points,
            "cells": rep.cells,
            "max_deviation": rep.max_deviation,
            "threshold": threshold,
        }),
        pass: rep.max_deviation < threshold,
        table: Some(Table {
            header: vec![
                "modulus",
                "arg",
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "deviation",
            ],
            rows,
        }),
    })
}

struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
}

fn monomial(n: i32) -> impl Fn(LogPoint) -> Result<C64> + Sync {
    move |x: LogPoint| Ok(x.powi_complex(n))
}

fn gauss_moments(cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let mut lap = 0.0f64;
    let mut bor = 0.0f64;
    let orders = [
        TransformOrder::integer(1),
        TransformOrder::integer(2),
        TransformOrder::fraction(1, 2)?,
    ];
    for q in [1.5, 2.0, 4.0] {
        let ctx = QContext::new(q)?;
        for k in orders {
            let l = k.logq_eff(&ctx);
            for n in -3..=6 {
                let g = 0.5 * (n * (n - 1)) as f64 * l;
                let x = LogPoint::new(0.7, 0.3)?;
                let v = laplace_numeric(&monomial(n), Direction(0.3), &ctx, k, x, cfg)?;
                let want = x.powi_complex(n) * g.exp();
                lap = lap.max((v - want).norm() / want.norm());
                let r = borel_radius_for_degree(x, &ctx, k, n as f64);
                let v = borel_numeric(&monomial(n), r, &ctx, k, x, cfg)?;
                let want = x.powi_complex(n) * (-g).exp();
                bor = bor.max((v - want).norm() / want.norm());
            }
        }
    }
    Ok((lap, bor))
}

fn identity_suite(ctx: &QContext, cfg: &QuadratureConfig) -> Result<Outcome> {
    let mut checks = Vec::new();
    let (lap, bor) = gauss_moments(cfg)?;
    checks.push(Check {
        name: "gauss_moments_laplace",
        value: lap,
        threshold: 1e-8,
    });
    checks.push(Check {
        name: "gauss_moments_borel",
        value: bor,
        threshold: 1e-8,
    });

    let series = FormalSeries::new(
        (0..24)
            .map(|n| C64::new((n as f64 * 0.7).sin(), (n as f64 * 1.3).cos()))
            .collect(),
        23,
    );
    let mut formal = 0.0f64;
    for k in [
        TransformOrder::integer(1),
        TransformOrder::integer(2),
        TransformOrder::fraction(1, 2)?,
        TransformOrder::fraction(3, 2)?,
    ] {
        let back = qlaplace_formal(&qborel_formal(&series, ctx, k), ctx, k);
        formal = formal.max(back.max_rel_diff(&series));
    }
    checks.push(Check {
        name: "formal_round_trip",
        value: formal,
        threshold: 1e-12,
    });

    let mut comm = 0.0f64;
    let shifted = qborel::formal::shift_power(&series, 2)?;
    for j in -2..=2 {
        for m in -2..=2 {
            comm = comm.max(check_commutation(j, m, &shifted, ctx)?);
        }
    }
    checks.push(Check {
        name: "borel_commutation",
        value: comm,
        threshold: 1e-12,
    });

    let one = TransformOrder::integer(1);
    let phi = |xi: LogPoint| Ok(1.0 / (1.0 + xi.to_complex()));
    let lap_phi = |x: LogPoint| laplace_numeric(&phi, Direction(0.0), ctx, one, x, cfg);
    let mut round = 0.0f64;
    for xi in [0.05, 0.2, 0.45] {
        let p = LogPoint::real(xi)?;
        let r = borel_radius_for_degree(p, ctx, one, 0.0);
        let v = borel_numeric(&lap_phi, r, ctx, one, p, cfg)?;
        round = round.max((v - phi(p)?).norm());
    }
    checks.push(Check {
        name: "analytic_round_trip",
        value: round,
        threshold: 1e-6,
    });

    let mut kern = 0.0f64;
    let mut half = 0.0f64;
    for i in 0..200 {
        let f = i as f64;
        let p = |s: f64, t: f64| {
            LogPoint::new(
                (0.3 * (f * s).sin()).exp(),
                10.0 * std::f64::consts::PI * (f * t).sin(),
            )
        };
        kern = kern.max(kernel_identity_residual(
            p(0.37, 0.11)?,
            p(0.91, 0.53)?,
            p(0.13, 0.77)?,
            ctx,
        ));
        half = half.max(halfpower_kernel_residual(p(0.29, 0.61)?, ctx));
    }
    checks.push(Check {
        name: "kernel_identity",
        value: kern,
        threshold: 1e-10,
    });
    checks.push(Check {
        name: "halfpower_identity",
        value: half,
        threshold: 1e-10,
    });

    let e1 = EulerFactor::new(C64::new(1.0, 0.0), 0)?;
    let e2 = EulerFactor::new(C64::new(2.0, 0.5), 0)?;
    let poly = FormalSeries::polynomial(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
    let grid: Vec<LogPoint> = [0.02, 0.05, 0.1]
        .iter()
        .map(|&r| LogPoint::real(r))
        .collect::<Result<_>>()?;
    let morph = morphism_checks(&[e1, e2], &[poly], Direction(0.0), ctx, &grid, cfg)?;
    checks.push(Check {
        name: "morphism_additivity",
        value: morph.additivity,
        threshold: 1e-6,
    });
    checks.push(Check {
        name: "morphism_equivariance",
        value: morph.equivariance,
        threshold: 1e-6,
    });
    checks.push(Check {
        name: "morphism_functional_equation",
        value: morph.functional_equation,
        threshold: 1e-6,
    });
    checks.push(Check {
        name: "morphism_pullout",
        value: morph.pullout,
        threshold: 1e-6,
    });

    let a = C64::new(1.0, 0.0);
    let b = C64::new(2.0, 0.0);
    let ea = qborel::euler_coeffs(EulerFactor::new(a, 0)?, ctx, 10)?;
    let eb = qborel::euler_coeffs(EulerFactor::new(b, 0)?, ctx, 10)?;
    let op = QDifferenceOperator::euler_carre(a, b, ctx);
    let lhs = op.apply(&qborel::series_mul(&ea, &eb), ctx);
    let scale = op.apply_magnitude(
        &qborel::series_mul(
            &ea.map_indexed(|_, c| c.norm().into()),
            &eb.map_indexed(|_, c| c.norm().into()),
        ),
        ctx,
    );
    let want = FormalSeries::polynomial(vec![-a * b, C64::new(0.0, 0.0), C64::new(ctx.q(), 0.0)]);
    let diff = &lhs - &want;
    let value = (0..=diff.truncation_order().unwrap_or(0))
        .map(|n| diff.coeff(n).norm() / scale.coeff(n).norm())
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "euler_carre_operator",
        value,
        threshold: 1e-10,
    });

    // Rotating both the point and the ray by a full turn leaves the sum unchanged.
    let x = LogPoint::new(0.2, 0.4)?;
    let s = euler_sum_scaled(e1, Direction(0.3), ctx, x, cfg)?.value();
    let sheet = euler_sum(e1, Direction(0.3 + TAU), ctx, x.rotate(TAU), cfg)?;
    checks.push(Check {
        name: "sheet_shift",
        value: (s - sheet).norm(),
        threshold: 1e-8,
    });

    let pass = checks.iter().all(|c| c.value < c.threshold);
    let results: Value = checks
        .iter()
        .map(|c| {
            (
                c.name.to_string(),
                json!({"value": c.value, "threshold": c.threshold, "pass": c.value < c.threshold}),
            )
        })
        .collect::<serde_json::Map<_, _>>()
        .into();
    Ok(Outcome {
        inputs: json!({}),
        results,
        pass,
        table: None,
    })
}
