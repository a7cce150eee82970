//! Newton polygons of q-difference operators.

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qcore::QDifferenceOperator;

/// Coefficients below `VALUATION_TOL · max|a_j|` count as zero.
pub const VALUATION_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Corners `(j, v₀(a_j))`, increasing in `j`.
    pub vertices: Vec<(i64, i64)>,
    /// Strictly increasing edge slopes.
    pub slopes: Vec<Ratio<i64>>,
}

impl NewtonPolygon {
    /// Slopes that drive summation; slope 0 is dropped.
    pub fn positive_slopes(&self) -> Vec<Ratio<i64>> {
        self.slopes
            .iter()
            .copied()
            .filter(|s| *s > Ratio::zero())
            .collect()
    }
}

/// Lower convex hull of `{(j, v₀(a_j))}`; collinear points are not vertices.
pub fn newton_polygon(op: &QDifferenceOperator) -> Result<NewtonPolygon> {
    let points: Vec<(i64, i64)> = op
        .terms()
        .iter()
        .filter_map(|(&j, a)| {
            let scale = a.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
            a.valuation_with_tol(VALUATION_TOL * scale)
                .map(|v| (j as i64, v as i64))
        })
        .collect();
    if points.is_empty() {
        return Err(Error::DegenerateOperator);
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let slopes = hull
        .windows(2)
        .map(|w| Ratio::new(w[1].1 - w[0].1, w[1].0 - w[0].0))
        .collect();
    Ok(NewtonPolygon {
        vertices: hull,
        slopes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{FormalSeries, QContext};
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn euler_carre_polygon() {
        let ctx = QContext::new(2.0).unwrap();
        let l = QDifferenceOperator::euler_carre(c(1.0), c(2.0), &ctx);
        let p = newton_polygon(&l).unwrap();
        assert_eq!(p.vertices, vec![(0, 0), (2, 2), (3, 4)]);
        assert_eq!(
            p.slopes,
            vec![Ratio::from_integer(1), Ratio::from_integer(2)]
        );
    }

    #[test]
    fn euler_operator_polygon() {
        let p = newton_polygon(&QDifferenceOperator::euler(c(3.0))).unwrap();
        assert_eq!(p.vertices, vec![(0, 0), (1, 1)]);
        assert_eq!(p.slopes, vec![Ratio::from_integer(1)]);
    }

    #[test]
    fn flat_polygon() {
        let l =
            QDifferenceOperator::from_terms([(0, FormalSeries::one()), (1, FormalSeries::one())])
                .unwrap();
        let p = newton_polygon(&l).unwrap();
        assert_eq!(p.vertices, vec![(0, 0), (1, 0)]);
        assert_eq!(p.slopes, vec![Ratio::zero()]);
        assert!(p.positive_slopes().is_empty());
    }

    #[test]
    fn zero_coefficients_are_skipped() {
        let l = QDifferenceOperator::from_terms([
            (0, FormalSeries::one()),
            (1, FormalSeries::zero(5)),
            (2, FormalSeries::monomial(3, c(1.0))),
        ])
        .unwrap();
        let p = newton_polygon(&l).unwrap();
        assert_eq!(p.vertices, vec![(0, 0), (2, 3)]);
        assert_eq!(p.slopes, vec![Ratio::new(3, 2)]);
    }

    #[test]
    fn all_zero_is_degenerate() {
        let l = QDifferenceOperator::from_terms([(0, FormalSeries::zero(3))]).unwrap();
        assert_eq!(newton_polygon(&l), Err(Error::DegenerateOperator));
    }
}
