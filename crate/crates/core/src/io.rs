//! JSON formats: a series is an array of `[re, im]` pairs indexed by power,
//! an operator is a map `{"j": series}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::product::EulerDecomposition;
use crate::qcore::{FormalSeries, QDifferenceOperator};

fn invalid(e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(e.to_string())
}

/// Parses a series literal as an exact polynomial.
pub fn parse_series(text: &str) -> Result<FormalSeries> {
    series_from_value(&serde_json::from_str(text).map_err(invalid)?)
}

pub fn series_from_value(v: &Value) -> Result<FormalSeries> {
    let coeffs: Vec<Complex64> = serde_json::from_value(v.clone()).map_err(invalid)?;
    if coeffs.is_empty() {
        return Err(invalid("series literal has no coefficients"));
    }
    if coeffs
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(invalid("non-finite coefficient"));
    }
    Ok(FormalSeries::polynomial(coeffs))
}

pub fn series_to_value(f: &FormalSeries) -> Value {
    Value::Array(f.coeffs().iter().map(|c| json!([c.re, c.im])).collect())
}

pub fn parse_operator(text: &str) -> Result<QDifferenceOperator> {
    let raw: BTreeMap<String, Value> = serde_json::from_str(text).map_err(invalid)?;
    let mut terms = BTreeMap::new();
    for (k, v) in raw {
        let j: u32 = k.trim().parse().map_err(|_| {
            invalid(format!(
                "shift exponent {k:?} is not a non-negative integer"
            ))
        })?;
        terms.insert(j, series_from_value(&v)?);
    }
    QDifferenceOperator::new(terms)
}

pub fn operator_to_value(op: &QDifferenceOperator) -> Value {
    Value::Object(
        op.terms()
            .iter()
            .map(|(j, a)| (j.to_string(), series_to_value(a)))
            .collect(),
    )
}

pub fn parse_decomposition(text: &str) -> Result<EulerDecomposition> {
    let dec: EulerDecomposition = serde_json::from_str(text).map_err(invalid)?;
    dec.validate()?;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QContext;

    #[test]
    fn series_round_trip() {
        let f = parse_series("[[1, 0], [0.5, -2], [0, 0]]").unwrap();
        assert!(f.is_exact());
        assert_eq!(f.coeffs().len(), 2);
        assert_eq!(series_from_value(&series_to_value(&f)).unwrap(), f);
    }

    #[test]
    fn operator_round_trip() {
        let ctx = QContext::new(2.0).unwrap();
        let l = QDifferenceOperator::euler_carre(
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            &ctx,
        );
        let text = operator_to_value(&l).to_string();
        assert_eq!(parse_operator(&text).unwrap(), l);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_series("[]").is_err());
        assert!(parse_series("[[1]]").is_err());
        assert!(parse_series("{").is_err());
        assert!(parse_operator("{}").is_err());
        assert!(parse_operator(r#"{"-1": [[1,0]]}"#).is_err());
        assert!(parse_decomposition(r#"{"terms": []}"#).is_err());
        assert!(parse_decomposition(
            r#"{"terms": [{"prefactor": [[1,0]], "radius": 1, "factor": {"a": [0,0], "m": 0}}]}"#
        )
        .is_err());
    }

    #[test]
    fn decomposition_with_convergent_term() {
        let d = parse_decomposition(
            r#"{"terms": [{"prefactor": [[1,0],[1,0]], "radius": 1e300, "factor": null},
                          {"prefactor": [[1,0]], "radius": 1, "factor": {"a": [1,0], "m": 1}}]}"#,
        )
        .unwrap();
        assert_eq!(d.terms.len(), 2);
        assert!(d.terms[0].factor.is_none());
        assert_eq!(d.factors()[0].m, 1);
    }
}
