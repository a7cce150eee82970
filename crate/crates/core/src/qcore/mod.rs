//! Foundational types: the q-context, points of the logarithmic Riemann
//! surface, truncated formal series and q-difference operators.

mod context;
mod logpoint;
mod operator;
mod series;

pub use context::{Direction, QContext};
pub use logpoint::LogPoint;
pub use operator::QDifferenceOperator;
pub use series::{apply_sigma_q, series_mul, FormalSeries};

pub type C64 = num_complex::Complex64;
