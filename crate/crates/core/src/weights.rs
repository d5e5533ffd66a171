//! Triangular bases of solvable algebras and their weights.
//!
//! For a solvable `g` whose adjoint action on `[g,g]` has rational
//! eigenvalues, we build a basis `e'_1..e'_n` where `e'_1..e'_k` complete
//! `[g,g]` and `e'_{k+1}..e'_n` is a flag basis of `[g,g]`: every
//! `span(e'_j..e'_n)` is `ad(g)`-invariant. In the dual basis
//!
//! ```text
//! dω'_i = 0                                  (i ≤ k)
//! dω'_j = α_j ∧ ω'_j + P_j(ω'_1, …, ω'_{j-1}) (j > k)
//! ```
//!
//! with closed weights `α_j`. Twisted cohomology along `θ` can only be nonzero
//! when `-θ` is `0` or a sum of distinct weights.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{unit, LieAlgebra};
use crate::cohomology::{betti, BettiTable};
use crate::error::{Error, Result};
use crate::exterior::{ce_matrix, wedge_covectors, Covector, ExteriorBasis, Monomial, Twist};
use crate::linalg::{char_poly_rational_roots, normalize_leading, rank_of, span_basis, Matrix};
use crate::rational::Rational;

fn flatten(m: &Matrix) -> Vec<Rational> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn unflatten(v: &[Rational], dim: usize) -> Matrix {
    Matrix::from_rows(v.chunks(dim).map(<[Rational]>::to_vec).collect())
}

/// A common eigenvector of a family of `dim × dim` matrices spanning a
/// solvable Lie algebra of matrices, normalized to a leading 1.
///
/// Recursion: pick a codimension-one ideal containing the derived algebra,
/// find a common eigenvector of the ideal, and diagonalize the remaining
/// generator on the (invariant) joint weight space of the ideal.
pub fn common_eigenvector(family: &[Matrix], dim: usize) -> Result<Vec<Rational>> {
    let flat: Vec<Vec<Rational>> = family.iter().map(flatten).collect();
    let span: Vec<Matrix> = span_basis(dim * dim, &flat)
        .iter()
        .map(|v| unflatten(v, dim))
        .collect();
    eigenvector_of_span(&span, dim)
}

fn eigenvector_of_span(algebra: &[Matrix], dim: usize) -> Result<Vec<Rational>> {
    if algebra.is_empty() {
        return Ok(unit(dim, 0));
    }
    let commutators: Vec<Vec<Rational>> = algebra
        .iter()
        .enumerate()
        .flat_map(|(i, a)| algebra[i + 1..].iter().map(move |b| flatten(&a.mul(b).sub(&b.mul(a)))))
        .collect();
    let mut ideal = span_basis(dim * dim, &commutators);
    if ideal.len() >= algebra.len() {
        return Err(Error::NotSolvable);
    }
    let mut extra = None;
    for a in algebra {
        let v = flatten(a);
        ideal.push(v);
        if rank_of(&ideal) < ideal.len() {
            ideal.pop();
        } else if ideal.len() == algebra.len() {
            extra = ideal.pop();
            break;
        }
    }
    let z = unflatten(&extra.expect("a codimension-one ideal leaves one generator"), dim);
    let ideal: Vec<Matrix> = ideal.iter().map(|v| unflatten(v, dim)).collect();

    let v0 = eigenvector_of_span(&ideal, dim)?;
    let pivot = v0.iter().position(|c| !c.is_zero()).expect("eigenvectors are nonzero");
    let weight_space = if ideal.is_empty() {
        (0..dim).map(|i| unit(dim, i)).collect()
    } else {
        let shifted: Vec<Matrix> = ideal
            .iter()
            .map(|a| {
                let mu = &a.mul_vec(&v0)[pivot] / &v0[pivot];
                a.sub(&Matrix::identity(dim).scale(&mu))
            })
            .collect();
        let stacked = shifted[1..].iter().fold(shifted[0].clone(), |acc, m| acc.vstack(m));
        stacked.kernel_basis()
    };
    let frame = Matrix::from_columns(dim, &weight_space);
    let restricted = frame
        .solve_many(&z.mul(&frame))
        .ok_or_else(|| Error::Internal("weight space is not invariant".into()))?;
    let f = char_poly_rational_roots(&restricted)?;
    let Some((root, _)) = f.rational_roots.first() else {
        return Err(Error::RationalSpectrumRequired {
            residual: f.residual.to_string(),
        });
    };
    let shifted = restricted.sub(&Matrix::identity(restricted.rows()).scale(root));
    let y = shifted.kernel_basis().remove(0);
    let mut v = frame.mul_vec(&y);
    normalize_leading(&mut v);
    Ok(v)
}

/// Flag basis `e'_{k+1}..e'_n` of `[g,g]`, top to bottom.
fn invariant_flag(alg: &LieAlgebra) -> Result<Vec<Vec<Rational>>> {
    let n = alg.dim();
    let derived = alg.derived_subalgebra();
    let ads: Vec<Matrix> = (0..n).map(|i| alg.ad_basis(i)).collect();
    let mut bottom_up: Vec<Vec<Rational>> = Vec::new();
    while bottom_up.len() < derived.len() {
        let mut complement = Vec::new();
        let mut spanned = bottom_up.clone();
        for v in &derived {
            spanned.push(v.clone());
            if rank_of(&spanned) == spanned.len() {
                complement.push(v.clone());
            } else {
                spanned.pop();
            }
        }
        let mut columns = bottom_up.clone();
        columns.extend(complement.iter().cloned());
        let frame = Matrix::from_columns(n, &columns);
        let offset = bottom_up.len();
        let size = complement.len();
        let quotient_ops: Vec<Matrix> = ads
            .iter()
            .map(|ad| {
                let images = Matrix::from_columns(n, &complement.iter().map(|c| ad.mul_vec(c)).collect::<Vec<_>>());
                let coords = frame
                    .solve_many(&images)
                    .ok_or_else(|| Error::Internal("derived algebra is not an ideal".into()))?;
                let rows: Vec<usize> = (offset..offset + size).collect();
                let cols: Vec<usize> = (0..size).collect();
                Ok(coords.select(&rows, &cols))
            })
            .collect::<Result<_>>()?;
        let u = common_eigenvector(&quotient_ops, size)?;
        let mut lifted = vec![Rational::zero(); n];
        for (c, ua) in complement.iter().zip(&u) {
            for (l, x) in lifted.iter_mut().zip(c) {
                *l += ua * x;
            }
        }
        normalize_leading(&mut lifted);
        bottom_up.push(lifted);
    }
    bottom_up.reverse();
    Ok(bottom_up)
}

/// `dω'_j = α_j ∧ ω'_j + P_j` for one flag index `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureEquation {
    /// 0-based index of `ω'_j` in the adapted basis.
    pub index: usize,
    /// `α_j` in the original dual basis.
    pub weight: Covector,
    /// Nonzero coefficients of `ω'_a ∧ ω'_b` in `P_j` (0-based, `a < b < j`).
    pub quadratic: Vec<((usize, usize), Rational)>,
}

/// Triangular basis adapted to the derived flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdaptedBasis {
    /// Columns are `e'_1..e'_n` in original coordinates.
    pub change_of_basis: Matrix,
    /// `n - dim [g,g]`.
    pub k: usize,
    pub structure_equations: Vec<StructureEquation>,
}

impl AdaptedBasis {
    /// `ω'_i` in the original dual basis.
    pub fn dual_forms(&self) -> Vec<Covector> {
        let inv = self.change_of_basis.inverse().expect("basis change is invertible");
        (0..inv.rows()).map(|i| Covector(inv.row(i).to_vec())).collect()
    }

    pub fn weights(&self) -> Vec<Covector> {
        self.structure_equations.iter().map(|s| s.weight.clone()).collect()
    }
}

pub fn adapted_basis(alg: &LieAlgebra) -> Result<AdaptedBasis> {
    if !alg.classify().solvable {
        return Err(Error::NotSolvable);
    }
    let n = alg.dim();
    let flag = invariant_flag(alg)?;
    let k = n - flag.len();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut spanned = flag.clone();
    for i in 0..n {
        spanned.push(unit(n, i));
        if rank_of(&spanned) == spanned.len() {
            columns.push(unit(n, i));
        } else {
            spanned.pop();
        }
    }
    columns.extend(flag.iter().cloned());
    let p = Matrix::from_columns(n, &columns);
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::Internal("adapted frame is singular".into()))?;
    let duals: Vec<Covector> = (0..n).map(|i| Covector(p_inv.row(i).to_vec())).collect();

    // α_j(e_i) = coefficient of e'_j in [e_i, e'_j]
    let weights: Vec<Covector> = (k..n)
        .map(|j| {
            Covector(
                (0..n)
                    .map(|i| duals[j].apply(&alg.bracket(&unit(n, i), &columns[j])))
                    .collect(),
            )
        })
        .collect();
    let derived = alg.derived_subalgebra();
    for a in &weights {
        if alg.closedness_witness(a.coords()).is_some() || derived.iter().any(|v| !a.apply(v).is_zero()) {
            return Err(Error::Internal("weight form does not vanish on [g,g]".into()));
        }
    }

    let basis = ExteriorBasis::new(n);
    let d1 = ce_matrix(alg, &basis, 1);
    let mut structure_equations = Vec::new();
    for (offset, j) in (k..n).enumerate() {
        let alpha = &weights[offset];
        let d_wj = d1.mul_vec(duals[j].coords());
        let linear = wedge_covectors(&basis, &[alpha.clone(), duals[j].clone()]);
        let remainder: Vec<Rational> = d_wj.iter().zip(&linear).map(|(a, b)| a - b).collect();
        // expand the remainder in the basis ω'_a ∧ ω'_b
        let pairs: Vec<Monomial> = basis.monomials(2).to_vec();
        let pair_forms: Vec<Vec<Rational>> = pairs
            .iter()
            .map(|m| {
                let ix: Vec<usize> = m.indices().collect();
                wedge_covectors(&basis, &[duals[ix[0]].clone(), duals[ix[1]].clone()])
            })
            .collect();
        let coeffs = Matrix::from_columns(basis.dim(2), &pair_forms)
            .solve(&remainder)
            .ok_or_else(|| Error::Internal("2-forms in the adapted basis are dependent".into()))?;
        let mut quadratic = Vec::new();
        for (m, c) in pairs.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let ix: Vec<usize> = m.indices().collect();
            if ix[1] >= j {
                return Err(Error::Internal(format!(
                    "structure equation of w'{} is not triangular",
                    j + 1
                )));
            }
            quadratic.push(((ix[0], ix[1]), c));
        }
        structure_equations.push(StructureEquation {
            index: j,
            weight: alpha.clone(),
            quadratic,
        });
    }
    for w in &duals[..k] {
        if !d1.mul_vec(w.coords()).iter().all(Rational::is_zero) {
            return Err(Error::Internal("complement form is not closed".into()));
        }
    }
    Ok(AdaptedBasis {
        change_of_basis: p,
        k,
        structure_equations,
    })
}

/// All sums of nonempty sets of weights (distinct indices), deduplicated and sorted.
pub fn omega_set(weights: &[Covector]) -> Vec<Covector> {
    let Some(n) = weights.first().map(Covector::len) else {
        return Vec::new();
    };
    // sums of subsets of the first i weights, built incrementally
    let mut sums: BTreeSet<Covector> = BTreeSet::new();
    for w in weights {
        let extended: Vec<Covector> = sums.iter().map(|s| s.add(w)).collect();
        sums.extend(extended);
        sums.insert(w.clone());
    }
    debug_assert!(sums.iter().all(|s| s.len() == n));
    sums.into_iter().collect()
}

/// Members `θ ≠ 0` of `Ω_g` whose twist `-θ` has nonzero cohomology.
pub fn omega_tilde(alg: &LieAlgebra, omega_set: &[Covector]) -> Result<Vec<Covector>> {
    let flags: Vec<bool> = omega_set
        .par_iter()
        .map(|theta| {
            if theta.is_zero() {
                return Ok(false);
            }
            Ok(!betti(alg, &Twist::from_effective(alg, theta.neg())?)?.is_zero())
        })
        .collect::<Result<_>>()?;
    Ok(omega_set
        .iter()
        .zip(flags)
        .filter(|(_, keep)| *keep)
        .map(|(t, _)| t.clone())
        .collect())
}

/// Weights, `Ω_g` and its certified part `~Ω_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSystem {
    pub adapted: AdaptedBasis,
    pub weights: Vec<Covector>,
    pub omega_set: Vec<Covector>,
    pub omega_tilde: Vec<Covector>,
    pub sum_of_all: Covector,
}

impl WeightSystem {
    /// `θ ∈ {0} ∪ Ω_g`.
    pub fn is_exceptional(&self, theta: &Covector) -> bool {
        theta.is_zero() || self.omega_set.contains(theta)
    }

    /// `{0} ∪ {λ : -λω ∈ Ω_g}` on the line through `omega`, sorted.
    pub fn line_candidates(&self, omega: &Covector) -> Vec<Rational> {
        let mut out: BTreeSet<Rational> = BTreeSet::new();
        out.insert(Rational::zero());
        for theta in &self.omega_set {
            if let Some(l) = theta.neg().ratio_to(omega) {
                out.insert(l);
            }
        }
        out.into_iter().collect()
    }
}

pub fn weight_system(alg: &LieAlgebra) -> Result<WeightSystem> {
    let adapted = adapted_basis(alg)?;
    let weights = adapted.weights();
    let omega_set = omega_set(&weights);
    let omega_tilde = omega_tilde(alg, &omega_set)?;
    let sum_of_all = weights.iter().fold(Covector::zero(alg.dim()), |acc, w| acc.add(w));
    Ok(WeightSystem {
        adapted,
        weights,
        omega_set,
        omega_tilde,
        sum_of_all,
    })
}

/// Outcome for one probe twist outside the exceptional set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeVerdict {
    pub theta: Covector,
    pub table: BettiTable,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub verdicts: Vec<ProbeVerdict>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.vanishes)
    }
}

/// Checks that every probe with `-λω ∉ {0} ∪ Ω_g` has vanishing cohomology.
pub fn verify_vanishing(alg: &LieAlgebra, probes: &[Twist]) -> Result<VanishingReport> {
    let ws = weight_system(alg)?;
    verify_vanishing_with(alg, &ws, probes)
}

pub fn verify_vanishing_with(alg: &LieAlgebra, ws: &WeightSystem, probes: &[Twist]) -> Result<VanishingReport> {
    for t in probes {
        let minus = t.effective().neg();
        if ws.is_exceptional(&minus) {
            return Err(Error::ProbeInExceptionalSet {
                theta: t.effective().to_string(),
            });
        }
    }
    let verdicts = probes
        .par_iter()
        .map(|t| {
            let table = betti(alg, t)?;
            Ok(ProbeVerdict {
                theta: t.effective().clone(),
                vanishes: table.is_zero(),
                table,
            })
        })
        .collect::<Result<_>>()?;
    Ok(VanishingReport { verdicts })
}
