//! Exact twisted cohomology of finite-dimensional Lie algebras.
//!
//! For a Lie algebra `g` with rational structure constants and a closed
//! 1-form `ω`, the deformed differential `d_{λω} a = da + λω ∧ a` on `Λ(g*)`
//! computes the cohomology of `g` with coefficients in the one-dimensional
//! representation `ξ ↦ λω(ξ)`. Everything here is exact over `ℚ`:
//!
//! - [`cohomology`]: Betti tables, representative cocycles, `λ`-line scans
//!   and generic-`λ` reports.
//! - [`dixmier`]: the splitting along `ker ω`, the operator `adX*` on the
//!   cohomology of the ideal, and the resulting nontriviality sets.
//! - [`weights`]: triangular bases of solvable algebras, weights and the
//!   finite exceptional sets of twists.
//! - [`zoo`]: named examples with recorded expected results.
//!
//! ```
//! use twisted_cohomology::{betti, zoo, Covector, Rational, Twist};
//!
//! let g = zoo::g0().unwrap().algebra;
//! let twist = Twist::new(&g, Covector::basis(3, 0), Rational::from(1)).unwrap();
//! assert_eq!(betti(&g, &twist).unwrap().betti, vec![0, 1, 1, 0]);
//! ```

pub mod algebra;
pub mod cohomology;
pub mod commands;
pub mod dixmier;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod rational;
pub mod spec_format;
pub mod weights;
pub mod zoo;

pub use algebra::{Classification, JacobiReport, LieAlgebra};
pub use cohomology::{betti, cohomology_space, novikov_report, scan_line, BettiTable, CochainComplex, NovikovReport};
pub use dixmier::{
    contraction_identity_check, nontriviality_set, operator_spectrum, split, verify_les, LESReport, NontrivialitySet,
    OperatorSpectrum, SubalgebraView,
};
pub use error::{Error, Result};
pub use exterior::{differential_rep_form, differential_wedge_form, Covector, DifferentialMatrix, Twist};
pub use linalg::{Matrix, Polynomial};
pub use rational::Rational;
pub use spec_format::{parse_algebra, AlgebraSpec};
pub use weights::{adapted_basis, omega_set, omega_tilde, verify_vanishing, weight_system, WeightSystem};
