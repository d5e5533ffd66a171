//! Codimension-one splitting `g = ⟨X⟩ ⊕ b_ω` and the derivation `adX*` on the
//! cohomology of the ideal `b_ω = ker ω`.
//!
//! The twisted Betti numbers of `g` along the line through `ω` are determined
//! by the action of `adX*` on `H*(b_ω)`: with
//! `k^i = dim ker(adX* + λ)` on `H^i(b_ω)` one has `b^i_{λω} = k^i + k^{i-1}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{unit, LieAlgebra};
use crate::cohomology::{betti, BettiTable, CochainComplex};
use crate::error::{Error, Result};
use crate::exterior::{
    ce_matrix, check_closed, contraction, derivation_matrix, wedge_covectors, Covector, ExteriorBasis, Monomial,
    Twist,
};
use crate::linalg::{factor_rational_roots, char_poly, Matrix, Polynomial};
use crate::rational::Rational;

/// The ideal `b_ω` with a basis, its induced structure, and a transversal `X`.
#[derive(Clone, Debug)]
pub struct SubalgebraView {
    parent: LieAlgebra,
    omega: Covector,
    inclusion: Matrix,
    induced: LieAlgebra,
    transversal: Vec<Rational>,
    ad_x: Matrix,
}

impl SubalgebraView {
    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn omega(&self) -> &Covector {
        &self.omega
    }

    /// `n × (n-1)` matrix whose columns span `b_ω`.
    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    /// `b_ω` with structure constants in the column basis.
    pub fn induced(&self) -> &LieAlgebra {
        &self.induced
    }

    /// `X` with `ω(X) = 1`.
    pub fn transversal(&self) -> &[Rational] {
        &self.transversal
    }

    /// Matrix of `x ↦ [X, x]` on `b_ω` in the column basis.
    pub fn ad_x(&self) -> &Matrix {
        &self.ad_x
    }

    /// Dual basis of `g*` adapted to `(X, b_1, …, b_{n-1})`: first `ω`, then
    /// the forms dual to the ideal basis that vanish on `X`.
    pub fn adapted_dual_basis(&self) -> Vec<Covector> {
        let n = self.parent.dim();
        let mut columns = vec![self.transversal.clone()];
        columns.extend(self.inclusion.columns());
        let frame = Matrix::from_columns(n, &columns);
        let inv = frame.inverse().expect("X is transversal to the kernel");
        (0..n).map(|i| Covector(inv.row(i).to_vec())).collect()
    }
}

/// Splits `g` along a nonzero closed `ω`, with `X = e_i / ω_i` for the
/// smallest `i` such that `ω_i ≠ 0`.
pub fn split(alg: &LieAlgebra, omega: &Covector) -> Result<SubalgebraView> {
    check_closed(alg, omega)?;
    let pivot = omega
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::OmegaZero)?;
    let x: Vec<Rational> = unit(alg.dim(), pivot)
        .into_iter()
        .map(|c| c / &omega.coords()[pivot])
        .collect();
    split_with_transversal(alg, omega, x)
}

/// As [`split`] with a caller-chosen transversal (must satisfy `ω(X) = 1`).
pub fn split_with_transversal(alg: &LieAlgebra, omega: &Covector, x: Vec<Rational>) -> Result<SubalgebraView> {
    check_closed(alg, omega)?;
    if omega.is_zero() {
        return Err(Error::OmegaZero);
    }
    if x.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: x.len(),
        });
    }
    if !omega.apply(&x).is_one() {
        return Err(Error::Internal("transversal must satisfy omega(X) = 1".into()));
    }
    let n = alg.dim();
    let kernel = Matrix::from_rows(vec![omega.coords().to_vec()]).kernel_basis();
    let m = kernel.len();
    let inclusion = Matrix::from_columns(n, &kernel);
    let coords = |v: &[Rational]| -> Result<Vec<Rational>> {
        if m == 0 {
            return Ok(Vec::new());
        }
        inclusion
            .solve(v)
            .ok_or_else(|| Error::Internal("kernel of a closed form is not an ideal".into()))
    };

    let induced = if m == 0 {
        LieAlgebra::zero()
    } else {
        let mut builder = LieAlgebra::builder(m).names((1..=m).map(|i| format!("b{i}")));
        for a in 0..m {
            for b in a + 1..m {
                let c = coords(&alg.bracket(&kernel[a], &kernel[b]))?;
                let terms: Vec<(usize, Rational)> =
                    c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                if !terms.is_empty() {
                    builder = builder.bracket(a, b, &terms);
                }
            }
        }
        builder.build()?
    };

    let mut ad_x = Matrix::zeros(m, m);
    for (j, u) in kernel.iter().enumerate() {
        for (i, c) in coords(&alg.bracket(&x, u))?.into_iter().enumerate() {
            ad_x[(i, j)] = c;
        }
    }
    Ok(SubalgebraView {
        parent: alg.clone(),
        omega: omega.clone(),
        inclusion,
        induced,
        transversal: x,
        ad_x,
    })
}

/// `adX*` restricted to one degree of `H*(b_ω)`, with its rational spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSpectrum {
    pub degree: usize,
    /// Matrix in the basis of representative cocycles.
    pub matrix: Matrix,
    pub char_poly: Polynomial,
    pub eigenvalues: Vec<(Rational, usize)>,
    /// Factor of the characteristic polynomial without rational roots.
    pub residual: Polynomial,
}

impl DegreeSpectrum {
    pub fn is_rational(&self) -> bool {
        self.residual.degree().unwrap_or(0) == 0
    }
}

/// `Spec^k` for every degree `k` of `H*(b_ω)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorSpectrum {
    pub degrees: Vec<DegreeSpectrum>,
    /// Union of all rational eigenvalues, sorted.
    pub union: Vec<Rational>,
}

impl OperatorSpectrum {
    pub fn is_rational(&self) -> bool {
        self.degrees.iter().all(DegreeSpectrum::is_rational)
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeSpectrum> {
        self.degrees.get(k)
    }
}

/// Matrices of `adX*` on `Λ^k(b*)` for every `k`, as a degree-zero derivation.
fn derivations(view: &SubalgebraView, basis: &ExteriorBasis) -> Vec<Matrix> {
    (0..=view.induced.dim())
        .map(|k| derivation_matrix(basis, k, &view.ad_x))
        .collect()
}

/// Cochain-level data of `b_ω` reused across degrees and `λ` values.
struct IdealComplex {
    complex: CochainComplex,
    derivations: Vec<Matrix>,
}

impl IdealComplex {
    fn new(view: &SubalgebraView) -> Result<Self> {
        let complex = CochainComplex::untwisted(&view.induced);
        let derivations = derivations(view, complex.basis());
        // adX* is a chain map: d ∘ D = D ∘ d in every degree
        for k in 0..view.induced.dim() {
            let lhs = complex.differential(k).mul(&derivations[k]);
            let rhs = derivations[k + 1].mul(complex.differential(k));
            if lhs != rhs {
                return Err(Error::Internal(format!("adX* does not commute with d in degree {k}")));
            }
        }
        Ok(IdealComplex { complex, derivations })
    }

    fn operator_on_cohomology(&self, k: usize) -> Result<Matrix> {
        let space = self.complex.cohomology_space(k)?;
        let mut m = Matrix::zeros(space.dimension, space.dimension);
        for (j, z) in space.representatives.iter().enumerate() {
            let image = self.derivations[k].mul_vec(z);
            let coords = space
                .coordinates(&image)
                .ok_or_else(|| Error::Internal(format!("adX* image not expressible in degree {k}")))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }

    fn spectrum(&self, k: usize) -> Result<DegreeSpectrum> {
        let matrix = self.operator_on_cohomology(k)?;
        let cp = char_poly(&matrix)?;
        let f = factor_rational_roots(&cp);
        Ok(DegreeSpectrum {
            degree: k,
            matrix,
            char_poly: cp,
            eigenvalues: f.rational_roots,
            residual: f.residual,
        })
    }
}

/// `adX*` on `H^k(b_ω)` with its rational eigenvalues.
pub fn ad_star_on_cohomology(view: &SubalgebraView, k: usize) -> Result<DegreeSpectrum> {
    if k > view.induced.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            dim: view.induced.dim(),
        });
    }
    IdealComplex::new(view)?.spectrum(k)
}

/// Spectra of `adX*` in all degrees `0..=dim b_ω`.
pub fn operator_spectrum(view: &SubalgebraView) -> Result<OperatorSpectrum> {
    let ideal = IdealComplex::new(view)?;
    let degrees: Vec<DegreeSpectrum> = (0..=view.induced.dim())
        .into_par_iter()
        .map(|k| ideal.spectrum(k))
        .collect::<Result<_>>()?;
    let mut union: Vec<Rational> = degrees
        .iter()
        .flat_map(|d| d.eigenvalues.iter().map(|(r, _)| r.clone()))
        .collect();
    union.sort();
    union.dedup();
    Ok(OperatorSpectrum { degrees, union })
}

/// `{λ ∈ ℚ : H*_{λω}(g) ≠ 0}`, each member certified by a direct computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NontrivialitySet {
    pub omega: Covector,
    pub lambdas: Vec<Rational>,
    pub certified: Vec<BettiTable>,
    /// Some spectrum has an irrational part; the set is complete over ℚ but
    /// not over ℝ.
    pub partial: bool,
    /// Irrational residual factors by degree.
    pub residuals: Vec<(usize, Polynomial)>,
}

pub fn nontriviality_set(alg: &LieAlgebra, omega: &Covector) -> Result<NontrivialitySet> {
    let view = split(alg, omega)?;
    let spectrum = operator_spectrum(&view)?;
    let lambdas: Vec<Rational> = spectrum.union.iter().rev().map(|mu| -mu).collect();
    let certified: Vec<BettiTable> = lambdas
        .par_iter()
        .map(|l| betti(alg, &Twist::new(alg, omega.clone(), l.clone())?))
        .collect::<Result<_>>()?;
    if let Some(t) = certified.iter().find(|t| t.is_zero()) {
        return Err(Error::Internal(format!(
            "spectral value lambda = {} gives vanishing cohomology",
            t.twist.lambda()
        )));
    }
    let residuals: Vec<(usize, Polynomial)> = spectrum
        .degrees
        .iter()
        .filter(|d| !d.is_rational())
        .map(|d| (d.degree, d.residual.clone()))
        .collect();
    Ok(NontrivialitySet {
        omega: omega.clone(),
        lambdas,
        certified,
        partial: !residuals.is_empty(),
        residuals,
    })
}

/// Degreewise comparison of `k^i + k^{i-1}` with directly computed Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LESReport {
    pub lambda: Rational,
    /// `k^i` for `i = 0..=dim b_ω`.
    pub kernel_dims: Vec<usize>,
    pub predicted_betti: Vec<usize>,
    pub actual_betti: Vec<usize>,
    pub equal: Vec<bool>,
}

impl LESReport {
    pub fn holds(&self) -> bool {
        self.equal.iter().all(|&e| e)
    }
}

pub fn verify_les(alg: &LieAlgebra, omega: &Covector, lambda: &Rational) -> Result<LESReport> {
    Ok(verify_les_grid(alg, omega, std::slice::from_ref(lambda))?.remove(0))
}

/// [`verify_les`] for many `λ`, sharing the cohomology of `b_ω`.
pub fn verify_les_grid(alg: &LieAlgebra, omega: &Covector, lambdas: &[Rational]) -> Result<Vec<LESReport>> {
    let view = split(alg, omega)?;
    let ideal = IdealComplex::new(&view)?;
    let operators: Vec<Matrix> = (0..=view.induced.dim())
        .map(|k| ideal.operator_on_cohomology(k))
        .collect::<Result<_>>()?;
    lambdas
        .par_iter()
        .map(|lambda| {
            let kernel_dims: Vec<usize> = operators
                .iter()
                .map(|m| {
                    let shifted = m.add(&Matrix::identity(m.rows()).scale(lambda));
                    m.rows() - shifted.rank()
                })
                .collect();
            let predicted_betti: Vec<usize> = (0..=alg.dim())
                .map(|i| {
                    let here = kernel_dims.get(i).copied().unwrap_or(0);
                    let below = if i == 0 { 0 } else { kernel_dims[i - 1] };
                    here + below
                })
                .collect();
            let actual_betti = betti(alg, &Twist::new(alg, omega.clone(), lambda.clone())?)?.betti;
            let equal = predicted_betti.iter().zip(&actual_betti).map(|(p, a)| p == a).collect();
            Ok(LESReport {
                lambda: lambda.clone(),
                kernel_dims,
                predicted_betti,
                actual_betti,
                equal,
            })
        })
        .collect()
}

/// One form for which the contraction identity failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionFailure {
    pub degree: usize,
    pub form: String,
    pub embedded: bool,
}

/// Result of checking `(df)_X` against `adX* f` and `d(f_X)` on basis forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub checked: usize,
    pub failures: Vec<ContractionFailure>,
    /// Monomials of `g*` for which `(df)_X = adX* f + d(f_X)` fails while the
    /// identity with `- d(f_X)` holds; only forms with `f_X` not closed appear.
    pub plus_sign_mismatches: usize,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `(df)_X = adX* f - d(f_X)` on every monomial of `Λ^q(g*)` and
/// `(df)_X = adX* f + d(f_X)` on every monomial of `Λ^q(b_ω*)` embedded in
/// `Λ^q(g*)` (where `f_X = 0`), for `q ≤ max_degree`. Here `adX*` is the
/// derivation of `Λ(g*)` extending `α ↦ α ∘ ad X`.
pub fn contraction_identity_check(alg: &LieAlgebra, omega: &Covector, max_degree: usize) -> Result<ContractionReport> {
    let view = split(alg, omega)?;
    let n = alg.dim();
    let basis = ExteriorBasis::new(n);
    let x = view.transversal();
    let ad = alg.ad_matrix(x);
    let top = max_degree.min(n);
    let d: Vec<Matrix> = (0..=top).map(|q| ce_matrix(alg, &basis, q)).collect();
    let zero = |len: usize| vec![Rational::zero(); len];

    // returns (df)_X, adX* f, d(f_X)
    let sides = |q: usize, f: &[Rational]| -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
        let df = d[q].mul_vec(f);
        let df_x = contraction(&basis, q, x).mul_vec(&df);
        let ad_f = derivation_matrix(&basis, q, &ad).mul_vec(f);
        let d_fx = if q == 0 {
            zero(basis.dim(0))
        } else {
            d[q - 1].mul_vec(&contraction(&basis, q - 1, x).mul_vec(f))
        };
        (df_x, ad_f, d_fx)
    };
    let combine = |a: &[Rational], b: &[Rational], sign: i64| -> Vec<Rational> {
        a.iter().zip(b).map(|(u, v)| u + v * Rational::from(sign)).collect()
    };

    let mut report = ContractionReport {
        checked: 0,
        failures: Vec::new(),
        plus_sign_mismatches: 0,
    };
    for q in 0..=top {
        for (pos, mon) in basis.monomials(q).iter().enumerate() {
            let mut f = zero(basis.dim(q));
            f[pos] = Rational::one();
            let (lhs, ad_f, d_fx) = sides(q, &f);
            report.checked += 1;
            let minus_holds = lhs == combine(&ad_f, &d_fx, -1);
            if !minus_holds {
                report.failures.push(ContractionFailure {
                    degree: q,
                    form: mon.label(alg.names()),
                    embedded: false,
                });
            } else if lhs != combine(&ad_f, &d_fx, 1) {
                report.plus_sign_mismatches += 1;
            }
        }
        let duals = view.adapted_dual_basis();
        let ideal_basis = ExteriorBasis::new(n - 1);
        for mon in ideal_basis.monomials(q) {
            let factors: Vec<Covector> = mon.indices().map(|a| duals[a + 1].clone()).collect();
            let f = wedge_covectors(&basis, &factors);
            let (lhs, ad_f, d_fx) = sides(q, &f);
            report.checked += 1;
            if lhs != combine(&ad_f, &d_fx, 1) {
                report.failures.push(ContractionFailure {
                    degree: q,
                    form: format!("embedded {}", embedded_label(*mon)),
                    embedded: true,
                });
            }
        }
    }
    Ok(report)
}

fn embedded_label(mon: Monomial) -> String {
    if mon.0 == 0 {
        return "1".into();
    }
    mon.indices().map(|a| format!("b{}", a + 1)).collect::<Vec<_>>().join("^")
}
