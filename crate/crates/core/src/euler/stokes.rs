use std::f64::consts::TAU;

use num_complex::Complex64;

use super::EulerFactor;
use crate::error::{Error, Result};
use crate::kernel::log_eq;
use crate::qcore::{Direction, LogPoint, QContext};

fn on_lattice(d: f64, base: f64, period: f64, tol: f64) -> bool {
    let t = (d - base) / period;
    ((t - t.round()) * period).abs() < tol
}

/// Finite union of lattices `θ + pZ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SingularSet {
    lattices: Vec<(f64, f64)>,
}

impl SingularSet {
    /// Adds `θ + 2πZ`.
    pub fn insert(&mut self, theta: f64) {
        self.insert_lattice(theta, TAU);
    }

    /// Adds `θ + period·Z`.
    pub fn insert_lattice(&mut self, theta: f64, period: f64) {
        let base = theta.rem_euclid(period);
        let dup = self
            .lattices
            .iter()
            .any(|&(b, p)| p == period && on_lattice(base, b, p, 1e-12));
        if !dup {
            self.lattices.push((base, period));
        }
    }

    /// Base angles in `[0, period)` with their periods.
    pub fn lattices(&self) -> &[(f64, f64)] {
        &self.lattices
    }

    pub fn contains(&self, d: Direction) -> bool {
        self.contains_within(d, 1e-12)
    }

    pub fn contains_within(&self, d: Direction, tol: f64) -> bool {
        self.lattices
            .iter()
            .any(|&(b, p)| on_lattice(d.radians(), b, p, tol))
    }

    /// Representatives strictly between `d1` and `d2`, ascending.
    pub fn between(&self, d1: Direction, d2: Direction) -> Vec<f64> {
        let (lo, hi) = if d1.0 <= d2.0 {
            (d1.0, d2.0)
        } else {
            (d2.0, d1.0)
        };
        let mut out = Vec::new();
        for &(b, p) in &self.lattices {
            let mut k = ((lo - b) / p).floor();
            loop {
                let t = b + k * p;
                if t >= hi {
                    break;
                }
                if t > lo {
                    out.push(t);
                }
                k += 1.0;
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn is_empty(&self) -> bool {
        self.lattices.is_empty()
    }
}

/// `{arg(−a_i) + 2πZ}` over the given factors.
pub fn singular_directions(facs: &[EulerFactor]) -> SingularSet {
    let mut s = SingularSet::default();
    for f in facs {
        s.insert(f.pole_angle());
    }
    s
}

/// Predicted `S^{d1}(E_a)(x) − S^{d2}(E_a)(x)` from the residues at the
/// crossed poles `ξ = |a| e^{iθ}`, `θ ∈ arg(−a) + 2πZ`.
///
/// For `d1 < d2` the contour `ray d1 − ray d2` is positively oriented, so the
/// jump is `2πi Σ e_q(ξ_p/x)/ξ_p`; swapping the directions flips the sign.
pub fn stokes_jump(
    fac: EulerFactor,
    d1: Direction,
    d2: Direction,
    ctx: &QContext,
    x: LogPoint,
) -> Result<Complex64> {
    let fac = EulerFactor::new(fac.a, fac.m)?;
    if fac.m != 0 {
        return Err(Error::Unsupported(
            "Stokes jumps are implemented for m = 0".into(),
        ));
    }
    let set = singular_directions(&[fac]);
    for d in [d1, d2] {
        if set.contains_within(d, 1e-9) {
            return Err(Error::SingularDirection(d.radians()));
        }
    }
    let sign = if d1.0 <= d2.0 { 1.0 } else { -1.0 };
    let r = fac.a.norm();
    let mut total = Complex64::new(0.0, 0.0);
    for theta in set.between(d1, d2) {
        let xi = LogPoint::new(r, theta)?;
        let res = (log_eq(xi / x, ctx.logq()) - xi.log()).exp();
        total += res;
    }
    Ok(sign * Complex64::new(0.0, TAU) * total)
}
