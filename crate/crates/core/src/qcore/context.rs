use std::fmt;

use crate::error::{Error, Result};
use crate::formal::TransformOrder;

/// The base `q > 1` together with its cached natural logarithm.
///
/// Only `logq` enters the kernels, so a context rescaled to order `k`
/// is built from `logq / k` directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: f64,
    logq: f64,
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 1.0) {
            return Err(Error::InvalidBase(q));
        }
        Ok(Self { q, logq: q.ln() })
    }

    /// Builds a context from `log q` (must be positive).
    pub fn from_log(logq: f64) -> Result<Self> {
        if !(logq.is_finite() && logq > 0.0) {
            return Err(Error::InvalidBase(logq.exp()));
        }
        Ok(Self {
            q: logq.exp(),
            logq,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn logq(&self) -> f64 {
        self.logq
    }

    /// Context for base `q^{1/k}`.
    pub fn rescaled(&self, k: TransformOrder) -> Self {
        Self::from_log(self.logq / k.as_f64()).expect("positive order keeps log q positive")
    }

    /// `q^e` for a real exponent, computed as `exp(e log q)`.
    pub fn pow(&self, e: f64) -> f64 {
        (e * self.logq).exp()
    }
}

/// Direction of a ray on the logarithmic surface, in radians, never reduced.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
pub struct Direction(pub f64);

impl Direction {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_q_at_most_one() {
        assert_eq!(QContext::new(1.0), Err(Error::InvalidBase(1.0)));
        assert!(QContext::new(0.5).is_err());
        assert!(QContext::new(f64::NAN).is_err());
    }

    #[test]
    fn caches_log() {
        let ctx = QContext::new(3.0).unwrap();
        assert_eq!(ctx.logq(), 3.0f64.ln());
        assert!((ctx.pow(2.0) - 9.0).abs() < 1e-13);
    }

    #[test]
    fn rescaled_base_matches_root() {
        let ctx = QContext::new(4.0).unwrap();
        let half = ctx.rescaled(TransformOrder::integer(2));
        assert!((half.q() - 2.0).abs() < 1e-14);
        assert_eq!(half.logq(), 4.0f64.ln() / 2.0);
    }
}
