use std::collections::BTreeMap;

use num_complex::Complex64;

use super::series::{apply_sigma_q, series_mul, FormalSeries};
use super::QContext;
use crate::error::{Error, Result};

/// `L = Σ_j a_j(x) σ_q^j` with finitely many nonzero shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct QDifferenceOperator {
    terms: BTreeMap<u32, FormalSeries>,
}

impl QDifferenceOperator {
    pub fn new(terms: BTreeMap<u32, FormalSeries>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::DegenerateOperator);
        }
        Ok(Self { terms })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, FormalSeries)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, a) in terms {
            match map.remove(&j) {
                Some(prev) => {
                    map.insert(j, &prev + &a);
                }
                None => {
                    map.insert(j, a);
                }
            }
        }
        Self::new(map)
    }

    /// `x σ_q + a`, the operator annihilated (up to 1) by `E_{a,q}`.
    pub fn euler(a: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self::from_terms([
            (0, FormalSeries::polynomial(vec![a])),
            (1, FormalSeries::polynomial(vec![zero, one])),
        ])
        .expect("two terms")
    }

    /// `x² σ_q − ab`.
    pub fn square_shift(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self::from_terms([
            (0, FormalSeries::polynomial(vec![-a * b])),
            (1, FormalSeries::polynomial(vec![zero, zero, one])),
        ])
        .expect("two terms")
    }

    /// `(x σ_q + a)(x σ_q + b)(x² σ_q − ab)`, which maps `E_a E_b` to `q x² − ab`.
    pub fn euler_carre(a: Complex64, b: Complex64, ctx: &QContext) -> Self {
        Self::euler(a)
            .compose(&Self::euler(b), ctx)
            .compose(&Self::square_shift(a, b), ctx)
    }

    pub fn terms(&self) -> &BTreeMap<u32, FormalSeries> {
        &self.terms
    }

    pub fn coefficient(&self, j: u32) -> Option<&FormalSeries> {
        self.terms.get(&j)
    }

    /// Highest shift exponent.
    pub fn order(&self) -> u32 {
        *self.terms.keys().next_back().expect("nonempty")
    }

    /// `Σ_j a_j σ_q^j f`, truncated by the min rule.
    pub fn apply(&self, f: &FormalSeries, ctx: &QContext) -> FormalSeries {
        self.terms
            .iter()
            .map(|(&j, a)| series_mul(a, &apply_sigma_q(f, ctx, j as i64)))
            .reduce(|acc, t| &acc + &t)
            .expect("nonempty")
    }

    /// Coefficientwise bound `Σ_j |a_j| σ_q^j |f|`, the natural scale for
    /// judging rounding in [`apply`](Self::apply).
    pub fn apply_magnitude(&self, f: &FormalSeries, ctx: &QContext) -> FormalSeries {
        let abs = |s: &FormalSeries| s.map_indexed(|_, c| Complex64::new(c.norm(), 0.0));
        let f = abs(f);
        self.terms
            .iter()
            .map(|(&j, a)| series_mul(&abs(a), &apply_sigma_q(&f, ctx, j as i64)))
            .reduce(|acc, t| &acc + &t)
            .expect("nonempty")
    }

    /// Composition `self ∘ other`, using `(A σ^i)(B σ^j) = A σ^i(B) σ^{i+j}`.
    pub fn compose(&self, other: &Self, ctx: &QContext) -> Self {
        let mut out: BTreeMap<u32, FormalSeries> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let term = series_mul(a, &apply_sigma_q(b, ctx, i as i64));
                let entry = out.remove(&(i + j));
                out.insert(i + j, entry.map_or(term.clone(), |e| &e + &term));
            }
        }
        Self { terms: out }
    }

    /// Multiplies every coefficient by `u`.
    pub fn left_mul(&self, u: &FormalSeries) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&j, a)| (j, series_mul(u, a)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn e1_q2(n: usize) -> FormalSeries {
        let coeffs = (0..=n)
            .map(|k| {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                c(s * 2f64.powi((k * (k.saturating_sub(1)) / 2) as i32))
            })
            .collect();
        FormalSeries::new(coeffs, n)
    }

    #[test]
    fn euler_operator_on_euler_series() {
        let ctx = QContext::new(2.0).unwrap();
        let r = QDifferenceOperator::euler(c(1.0)).apply(&e1_q2(6), &ctx);
        let one = FormalSeries::from_real(&[1.0], 6);
        assert!(r.max_abs_diff(&one) < 1e-12);
    }

    #[test]
    fn shift_on_constant() {
        let ctx = QContext::new(2.0).unwrap();
        let l = QDifferenceOperator::from_terms([(1, FormalSeries::one())]).unwrap();
        let f = FormalSeries::from_real(&[1.0], 4);
        assert_eq!(l.apply(&f, &ctx), f);
    }

    #[test]
    fn carre_expansion_a1_b2_q2() {
        let ctx = QContext::new(2.0).unwrap();
        let l = QDifferenceOperator::euler_carre(c(1.0), c(2.0), &ctx);
        let want: [(u32, &[f64]); 4] = [
            (0, &[-4.0]),
            (1, &[0.0, -6.0, 2.0]),
            (2, &[0.0, 0.0, -4.0, 12.0]),
            (3, &[0.0, 0.0, 0.0, 0.0, 32.0]),
        ];
        for (j, coeffs) in want {
            let got = l.coefficient(j).unwrap();
            let w = FormalSeries::polynomial(coeffs.iter().map(|&x| c(x)).collect());
            assert!(got.max_abs_diff(&w) < 1e-12, "σ^{j}: {:?}", got.coeffs());
        }
    }

    #[test]
    fn empty_operator_rejected() {
        assert_eq!(
            QDifferenceOperator::new(BTreeMap::new()),
            Err(Error::DegenerateOperator)
        );
    }
}
