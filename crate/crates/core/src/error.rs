use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One failing triple of the Jacobi identity (0-based indices) and the
/// nonzero cyclic sum it produced.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("{}", jacobi_message(.0))]
    JacobiViolation(Vec<JacobiFailure>),

    #[error("invalid algebra specification at `{field}`: {message}")]
    Spec { field: String, message: String },

    #[error("could not parse algebra specification: {0}")]
    Json(#[from] serde_json::Error),

    #[error("the 1-form is not closed: d(omega) has a nonzero coefficient on w{}^w{}", .pair.0 + 1, .pair.1 + 1)]
    OmegaNotClosed { pair: (usize, usize) },

    #[error("invalid 1-form: {0}")]
    InvalidForm(String),

    #[error("the 1-form must be nonzero")]
    OmegaZero,

    #[error("degree {degree} is out of range for a {dim}-dimensional algebra")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("the Lie algebra is not solvable")]
    NotSolvable,

    #[error("an eigenvalue needed for triangularization is irrational; residual factor {residual}")]
    RationalSpectrumRequired { residual: String },

    #[error("probe with lambda*omega = {theta} lies in the exceptional set {{0}} u Omega_g")]
    ProbeInExceptionalSet { theta: String },

    #[error("unknown zoo entry `{0}`")]
    UnknownZoo(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn jacobi_message(failures: &[JacobiFailure]) -> String {
    let triples: Vec<String> = failures
        .iter()
        .map(|f| format!("({},{},{})", f.triple.0 + 1, f.triple.1 + 1, f.triple.2 + 1))
        .collect();
    format!("Jacobi identity fails on triples {}", triples.join(", "))
}
