use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::QContext;

/// Truncated power series `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`.
///
/// `order == None` marks a polynomial known exactly (no `O(·)` term).
/// Binary operations keep the smaller of the two truncation orders.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries {
    coeffs: Vec<Complex64>,
    order: Option<usize>,
}

impl FormalSeries {
    /// Series known modulo `x^{order+1}`; `coeffs` is padded or cut to fit.
    pub fn new(mut coeffs: Vec<Complex64>, order: usize) -> Self {
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self {
            coeffs,
            order: Some(order),
        }
    }

    /// Series whose truncation order is the last stored index.
    pub fn truncated(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs c_0");
        let order = coeffs.len() - 1;
        Self::new(coeffs, order)
    }

    /// Exact polynomial.
    pub fn polynomial(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self {
            coeffs,
            order: None,
        }
    }

    pub fn from_real(coeffs: &[f64], order: usize) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one() -> Self {
        Self::polynomial(vec![Complex64::new(1.0, 0.0)])
    }

    /// `c x^n`, exact.
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; zero past the end of an exact polynomial.
    ///
    /// Panics when `n` exceeds the truncation order of a truncated series.
    pub fn coeff(&self, n: usize) -> Complex64 {
        match self.coeffs.get(n) {
            Some(c) => *c,
            None if self.order.is_none() => Complex64::new(0.0, 0.0),
            None => panic!("coefficient {n} is beyond the truncation order"),
        }
    }

    /// `None` for exact polynomials.
    pub fn truncation_order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Index of the first nonzero coefficient; `None` stands for `+∞`.
    pub fn valuation(&self) -> Option<usize> {
        self.valuation_with_tol(0.0)
    }

    /// Valuation treating `|c| <= tol` as zero.
    pub fn valuation_with_tol(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm() > tol)
    }

    /// Degree of the stored data (last index of an exact polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = self.order.map_or(order, |n| n.min(order));
        let coeffs = (0..=order).map(|n| self.coeff(n)).collect();
        Self::new(coeffs, order)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            order: self.order,
        }
    }

    /// Coefficientwise map `c_n ↦ w(n) c_n`.
    pub fn map_indexed(&self, w: impl Fn(usize, Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| w(n, c))
                .collect(),
            order: self.order,
        }
    }

    /// Horner evaluation of the stored coefficients.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// Largest `|f_n - g_n|` over the indices both series know.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = common_len(self, other);
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|f_n - g_n| / max(|f_n|, |g_n|)`, skipping indices where both vanish.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let n = common_len(self, other);
        (0..n)
            .map(|i| {
                let (a, b) = (self.coeff(i), other.coeff(i));
                let scale = a.norm().max(b.norm());
                if scale == 0.0 {
                    0.0
                } else {
                    (a - b).norm() / scale
                }
            })
            .fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let order = min_order(self.order, other.order);
        let len = match order {
            Some(n) => n + 1,
            None => self.coeffs.len().max(other.coeffs.len()),
        };
        let coeffs = (0..len)
            .map(|n| op(self.coeff(n), other.coeff(n)))
            .collect();
        match order {
            Some(n) => Self::new(coeffs, n),
            None => Self::polynomial(coeffs),
        }
    }
}

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn common_len(f: &FormalSeries, g: &FormalSeries) -> usize {
    match min_order(f.order, g.order) {
        Some(n) => n + 1,
        None => f.coeffs.len().max(g.coeffs.len()),
    }
}

/// Cauchy product, truncated to the smaller order.
pub fn series_mul(f: &FormalSeries, g: &FormalSeries) -> FormalSeries {
    let order = min_order(f.order, g.order);
    let len = match order {
        Some(n) => n + 1,
        None => f.coeffs.len() + g.coeffs.len() - 1,
    };
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, fi) in f.coeffs.iter().enumerate().take(len) {
        if *fi == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, gj) in g.coeffs.iter().enumerate().take(len - i) {
            out[i + j] += fi * gj;
        }
    }
    match order {
        Some(n) => FormalSeries::new(out, n),
        None => FormalSeries::polynomial(out),
    }
}

/// `σ_q^m f`: coefficient `n` becomes `c_n q^{mn}`.
pub fn apply_sigma_q(f: &FormalSeries, ctx: &QContext, m: i64) -> FormalSeries {
    if m == 0 {
        return f.clone();
    }
    f.map_indexed(|n, c| c * ((m as f64) * (n as f64) * ctx.logq()).exp())
}

impl Add for &FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        series_mul(self, rhs)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
