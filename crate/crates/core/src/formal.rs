//! Formal q-Borel and q-Laplace transforms of arbitrary positive rational order.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qcore::{apply_sigma_q, FormalSeries, QContext};

/// Positive rational order `k`; the effective base is `q^{1/k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransformOrder(Ratio<i64>);

impl TransformOrder {
    pub fn new(k: Ratio<i64>) -> Result<Self> {
        if k <= Ratio::zero() {
            return Err(Error::InvalidInput(format!(
                "order must be positive, got {k}"
            )));
        }
        Ok(Self(k))
    }

    pub fn integer(k: i64) -> Self {
        Self::new(Ratio::from_integer(k)).expect("positive integer order")
    }

    pub fn fraction(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Self::new(Ratio::new(num, den))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        self.0.to_f64().expect("finite ratio")
    }

    /// `log q / k`.
    pub fn logq_eff(&self, ctx: &QContext) -> f64 {
        ctx.logq() / self.as_f64()
    }
}

impl fmt::Display for TransformOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn gauss_weight(n: usize, logq_eff: f64, sign: f64) -> f64 {
    let n = n as f64;
    (sign * 0.5 * n * (n - 1.0) * logq_eff).exp()
}

/// `c_n ↦ c_n q'^{-n(n-1)/2}` with `q' = q^{1/k}`.
pub fn qborel_formal(f: &FormalSeries, ctx: &QContext, k: TransformOrder) -> FormalSeries {
    let l = k.logq_eff(ctx);
    f.map_indexed(|n, c| c * gauss_weight(n, l, -1.0))
}

/// `c_n ↦ c_n q'^{n(n-1)/2}` with `q' = q^{1/k}`.
pub fn qlaplace_formal(f: &FormalSeries, ctx: &QContext, k: TransformOrder) -> FormalSeries {
    let l = k.logq_eff(ctx);
    f.map_indexed(|n, c| c * gauss_weight(n, l, 1.0))
}

/// Multiplication by `x^j`; negative `j` divides and needs valuation `>= |j|`.
pub fn shift_power(f: &FormalSeries, j: i64) -> Result<FormalSeries> {
    let zero = Complex64::new(0.0, 0.0);
    let coeffs = f.coeffs();
    let out: Vec<Complex64> = if j >= 0 {
        std::iter::repeat_n(zero, j as usize)
            .chain(coeffs.iter().copied())
            .collect()
    } else {
        let s = (-j) as usize;
        if f.valuation().is_some_and(|v| v < s) {
            return Err(Error::InvalidInput(format!(
                "x^{j} needs valuation at least {s}"
            )));
        }
        coeffs.iter().skip(s).copied().collect()
    };
    Ok(match f.truncation_order() {
        None => FormalSeries::polynomial(out),
        Some(n) => {
            let order = (n as i64 + j).max(0) as usize;
            FormalSeries::new(out, order)
        }
    })
}

/// Max relative coefficient deviation between `B̂(x^j σ_q^m f)` and
/// `q^{-j(j-1)/2} ξ^j σ_q^{m-j} B̂(f)` (order one).
pub fn check_commutation(j: i64, m: i64, f: &FormalSeries, ctx: &QContext) -> Result<f64> {
    let one = TransformOrder::integer(1);
    let lhs = qborel_formal(&shift_power(&apply_sigma_q(f, ctx, m), j)?, ctx, one);
    let factor = (-0.5 * (j * (j - 1)) as f64 * ctx.logq()).exp();
    let rhs = shift_power(&apply_sigma_q(&qborel_formal(f, ctx, one), ctx, m - j), j)?
        .scale(Complex64::new(factor, 0.0));
    Ok(lhs.max_rel_diff(&rhs))
}

/// Same as [`check_commutation`] for the Laplace side:
/// `L̂(ξ^j σ_q^m φ)` against `q^{j(j-1)/2} x^j σ_q^{m+j} L̂(φ)`.
pub fn check_commutation_laplace(
    j: i64,
    m: i64,
    phi: &FormalSeries,
    ctx: &QContext,
) -> Result<f64> {
    let one = TransformOrder::integer(1);
    let lhs = qlaplace_formal(&shift_power(&apply_sigma_q(phi, ctx, m), j)?, ctx, one);
    let factor = (0.5 * (j * (j - 1)) as f64 * ctx.logq()).exp();
    let rhs = shift_power(
        &apply_sigma_q(&qlaplace_formal(phi, ctx, one), ctx, m + j),
        j,
    )?
    .scale(Complex64::new(factor, 0.0));
    Ok(lhs.max_rel_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e1(q: f64, n: usize) -> FormalSeries {
        let l = q.ln();
        FormalSeries::new(
            (0..=n)
                .map(|k| {
                    let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                    Complex64::new(s * (0.5 * (k * k.saturating_sub(1)) as f64 * l).exp(), 0.0)
                })
                .collect(),
            n,
        )
    }

    #[test]
    fn borel_of_euler_is_geometric() {
        let ctx = QContext::new(2.0).unwrap();
        let b = qborel_formal(&e1(2.0, 10), &ctx, TransformOrder::integer(1));
        for (n, c) in b.coeffs().iter().enumerate() {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((c - Complex64::new(s, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn laplace_of_geometric_is_euler() {
        let ctx = QContext::new(2.0).unwrap();
        let g = FormalSeries::from_real(&[1.0, -1.0, 1.0, -1.0], 3);
        let e = qlaplace_formal(&g, &ctx, TransformOrder::integer(1));
        assert!(e.max_abs_diff(&FormalSeries::from_real(&[1.0, -1.0, 2.0, -8.0], 3)) < 1e-12);
    }

    #[test]
    fn low_coefficients_fixed() {
        let ctx = QContext::new(3.0).unwrap();
        let f = FormalSeries::from_real(&[2.5, -1.5], 1);
        assert_eq!(qborel_formal(&f, &ctx, TransformOrder::integer(1)), f);
    }

    #[test]
    fn order_two_q4_equals_order_one_q2() {
        let f = e1(2.0, 12);
        let a = qborel_formal(&f, &QContext::new(4.0).unwrap(), TransformOrder::integer(2));
        let b = qborel_formal(&f, &QContext::new(2.0).unwrap(), TransformOrder::integer(1));
        assert!(a.max_rel_diff(&b) < 1e-14);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(TransformOrder::fraction(0, 1).is_err());
        assert!(TransformOrder::fraction(-1, 2).is_err());
        assert!(TransformOrder::fraction(1, 0).is_err());
    }

    #[test]
    fn commutation_examples() {
        let ctx2 = QContext::new(2.0).unwrap();
        let f = e1(2.0, 12);
        assert!(check_commutation(0, 1, &f, &ctx2).unwrap() < 1e-12);
        assert!(check_commutation(1, 0, &f, &ctx2).unwrap() < 1e-12);
    }

    fn arb_series(n: usize) -> impl Strategy<Value = FormalSeries> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n + 1).prop_map(move |v| {
            FormalSeries::new(
                v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
                n,
            )
        })
    }

    proptest! {
        #[test]
        fn round_trip(f in arb_series(20), q in 1.05f64..4.0, num in 1i64..5, den in 1i64..5) {
            let ctx = QContext::new(q).unwrap();
            let k = TransformOrder::fraction(num, den).unwrap();
            let back = qlaplace_formal(&qborel_formal(&f, &ctx, k), &ctx, k);
            prop_assert!(back.max_rel_diff(&f) < 1e-12);
        }

        #[test]
        fn commutation_all_shifts(f in arb_series(16), q in 1.1f64..3.0, j in -2i64..=2, m in -2i64..=2) {
            let ctx = QContext::new(q).unwrap();
            // negative j needs a valuation of at least |j|
            let f = shift_power(&f, 2).unwrap();
            prop_assert!(check_commutation(j, m, &f, &ctx).unwrap() < 1e-12);
            prop_assert!(check_commutation_laplace(j, m, &f, &ctx).unwrap() < 1e-12);
        }
    }
}
