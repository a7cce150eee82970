//! q-Borel–Laplace summation and multisummation for linear q-difference
//! equations.
//!
//! Points live on the Riemann surface of the logarithm ([`LogPoint`]), formal
//! objects are truncated series ([`FormalSeries`]), and analytic sums are
//! computed by Gaussian-kernel quadrature along rays ([`laplace_numeric`]).

pub mod error;
pub mod euler;
pub mod formal;
pub mod io;
pub mod kernel;
pub mod multisum;
pub mod newton;
pub mod product;
pub mod qcore;
pub mod quad;

pub use error::{Error, Result};
pub use euler::{
    euler_borel, euler_coeffs, euler_sum, euler_sum_on_ray, euler_sum_order, functional_residual,
    geometric_bound_ratio, geometric_bound_sum, sheet_correction, singular_directions,
    spiral_inverse_scan, stokes_jump, EulerFactor, InverseScanRow, SingularSet,
};
pub use formal::{check_commutation, qborel_formal, qlaplace_formal, TransformOrder};
pub use kernel::{eq_kernel, halfpower_kernel_residual, kernel_identity_residual, KernelValue};
pub use multisum::{
    morphism_checks, multisum, pullout_germ, tilde_sequence, BorelGerm, MorphismReport,
    MultisumOrder, StageFunction,
};
pub use newton::{newton_polygon, NewtonPolygon};
pub use num_rational::Ratio;
pub use product::{
    cell_sum, f1_eval, f2_eval, product_sum, product_theorem_check, psi_star, DecompositionTerm,
    EulerDecomposition, F1Germ, F2Function, F2Mode, ProductReport, PsiStar,
};
pub use qcore::{
    apply_sigma_q, series_mul, Direction, FormalSeries, LogPoint, QContext, QDifferenceOperator,
    C64,
};
pub use quad::{
    borel_numeric, borel_scaled, growth_scan, laplace_numeric, laplace_scaled, quadratic_fit,
    ComplexFunction, GrowthSample, QuadratureConfig, Scaled, ScanKind,
};
