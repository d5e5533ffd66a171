//! JSON input format for algebras.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "brackets": [
//!     { "i": 1, "j": 2, "terms": [ { "k": 2, "c": "1" } ] },
//!     { "i": 1, "j": 3, "terms": [ { "k": 3, "c": "-1" } ] }
//!   ]
//! }
//! ```
//!
//! Indices are 1-based, `i < j`, and coefficients are exact rationals written
//! as `"p/q"` strings (plain JSON integers are accepted too).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{LieAlgebra, MAX_DIM};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub k: usize,
    pub c: Rational,
}

fn spec_error(field: String, message: impl Into<String>) -> Error {
    Error::Spec {
        field,
        message: message.into(),
    }
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Structural validation with field paths; the Jacobi identity is not checked.
    pub fn to_algebra_unchecked(&self) -> Result<LieAlgebra> {
        if self.dim == 0 {
            return Err(spec_error("dim".into(), "must be at least 1"));
        }
        if self.dim > MAX_DIM {
            return Err(spec_error("dim".into(), format!("must be at most {MAX_DIM}")));
        }
        if let Some(names) = &self.basis {
            if names.len() != self.dim {
                return Err(spec_error(
                    "basis".into(),
                    format!("has {} names, expected {}", names.len(), self.dim),
                ));
            }
        }
        let in_range = |v: usize| (1..=self.dim).contains(&v);
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (b, br) in self.brackets.iter().enumerate() {
            for (name, v) in [("i", br.i), ("j", br.j)] {
                if !in_range(v) {
                    return Err(spec_error(
                        format!("brackets[{b}].{name}"),
                        format!("index {v} out of range 1..={}", self.dim),
                    ));
                }
            }
            if br.i >= br.j {
                return Err(spec_error(format!("brackets[{b}]"), "requires i < j"));
            }
            if !seen.insert((br.i, br.j)) {
                return Err(spec_error(
                    format!("brackets[{b}]"),
                    format!("duplicate bracket ({}, {})", br.i, br.j),
                ));
            }
            let mut ks = std::collections::BTreeSet::new();
            let mut terms = Vec::with_capacity(br.terms.len());
            for (t, term) in br.terms.iter().enumerate() {
                if !in_range(term.k) {
                    return Err(spec_error(
                        format!("brackets[{b}].terms[{t}].k"),
                        format!("index {} out of range 1..={}", term.k, self.dim),
                    ));
                }
                if !ks.insert(term.k) {
                    return Err(spec_error(
                        format!("brackets[{b}].terms[{t}].k"),
                        format!("repeated index {}", term.k),
                    ));
                }
                terms.push((term.k - 1, term.c.clone()));
            }
            entries.push(((br.i - 1, br.j - 1), terms));
        }
        LieAlgebra::from_parts(self.dim, self.basis.clone(), entries)
    }

    /// Structural validation followed by the Jacobi identity.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        self.to_algebra_unchecked()?.validated()
    }

    /// SHA-256 of the canonical (compact) JSON form, hex encoded.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("spec serializes");
        hex::encode(Sha256::digest(&canonical))
    }
}

/// Canonical spec of an algebra: brackets sorted, zero terms dropped.
pub fn to_spec(alg: &LieAlgebra) -> AlgebraSpec {
    AlgebraSpec {
        dim: alg.dim(),
        basis: Some(alg.names().to_vec()),
        brackets: alg
            .brackets()
            .iter()
            .map(|(&(i, j), terms)| BracketSpec {
                i: i + 1,
                j: j + 1,
                terms: terms
                    .iter()
                    .map(|(k, c)| TermSpec { k: k + 1, c: c.clone() })
                    .collect(),
            })
            .collect(),
    }
}

/// Parses and fully validates an algebra document.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    AlgebraSpec::from_json(text)?.to_algebra()
}

/// Digest of the canonical spec of `alg`.
pub fn digest(alg: &LieAlgebra) -> String {
    to_spec(alg).digest()
}

#[cfg(test)]
mod tests {
    use super::*;

    const G0: &str = r#"{
        "dim": 3,
        "brackets": [
            { "i": 1, "j": 2, "terms": [ { "k": 2, "c": "1" } ] },
            { "i": 1, "j": 3, "terms": [ { "k": 3, "c": "-1" } ] }
        ]
    }"#;

    #[test]
    fn parses_g0() {
        let g = parse_algebra(G0).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.structure_constant(0, 2, 2), &Rational::from(-1));
        assert_eq!(g.names(), &["e1", "e2", "e3"]);
    }

    #[test]
    fn round_trip_is_digest_equal() {
        let g = parse_algebra(G0).unwrap();
        let spec = to_spec(&g);
        let again = AlgebraSpec::from_json(&spec.to_json()).unwrap().to_algebra().unwrap();
        assert_eq!(again, g);
        assert_eq!(digest(&again), digest(&g));
        assert_eq!(digest(&g).len(), 64);
    }

    #[test]
    fn fractional_coefficients() {
        let text = r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 2, "c": "3/4"}]}]}"#;
        let g = parse_algebra(text).unwrap();
        assert_eq!(g.structure_constant(0, 1, 1), &Rational::new(3, 4));
    }

    fn field_of(text: &str) -> String {
        match AlgebraSpec::from_json(text).and_then(|s| s.to_algebra()) {
            Err(Error::Spec { field, .. }) => field,
            other => panic!("expected a spec error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_name_the_field() {
        assert_eq!(field_of(r#"{"dim": 0}"#), "dim");
        assert_eq!(
            field_of(r#"{"dim": 2, "brackets": [{"i": 1, "j": 3, "terms": []}]}"#),
            "brackets[0].j"
        );
        assert_eq!(
            field_of(r#"{"dim": 2, "brackets": [{"i": 2, "j": 1, "terms": []}]}"#),
            "brackets[0]"
        );
        assert_eq!(
            field_of(r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": 1}, {"k": 3, "c": 2}]}]}"#),
            "brackets[0].terms[1].k"
        );
        assert_eq!(
            field_of(
                r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": []}, {"i": 1, "j": 2, "terms": []}]}"#
            ),
            "brackets[1]"
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = AlgebraSpec::from_json("{\"dim\": 3,\n \"brackets\": [{\"i\": 1, \"j\": 2, \"terms\": [{\"k\": 1, \"c\": \"1/0\"}]}]}")
            .unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(AlgebraSpec::from_json(r#"{"dim": 2, "extra": 1}"#).is_err());
    }

    #[test]
    fn jacobi_failures_are_reported() {
        let text = r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
            {"i": 1, "j": 3, "terms": [{"k": 2, "c": "1"}]},
            {"i": 2, "j": 3, "terms": [{"k": 2, "c": "1"}]}
        ]}"#;
        assert!(matches!(parse_algebra(text), Err(Error::JacobiViolation(_))));
    }
}
