//! Finite-dimensional Lie algebras given by rational structure constants.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are stored; the opposite order is
//! recovered by antisymmetry. Indices are 0-based in the API and 1-based in
//! everything user-facing (names, JSON, error messages).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, JacobiFailure, Result};
use crate::linalg::{span_basis, Matrix};
use crate::rational::Rational;

/// Largest supported dimension. The exterior algebra has `2^dim` monomials.
pub const MAX_DIM: usize = 20;

/// Sparse bracket table: `(i, j) -> [(k, c_ij^k)]` for `i < j`, nonzero terms only.
pub type BracketTable = BTreeMap<(usize, usize), Vec<(usize, Rational)>>;

/// One bracket `[e_i, e_j]` as `((i, j), [(k, c_ij^k)])`, used while building.
pub type BracketEntry = ((usize, usize), Vec<(usize, Rational)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    brackets: BracketTable,
    /// Dense `c[i][j][k]` at `(i * dim + j) * dim + k`, filled antisymmetrically.
    table: Vec<Rational>,
}

/// Outcome of [`LieAlgebra::jacobi_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Nilpotency and solvability flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub nilpotent: bool,
    pub solvable: bool,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match (self.nilpotent, self.solvable) {
            (true, _) => "nilpotent",
            (false, true) => "solvable",
            (false, false) => "non-solvable",
        }
    }
}

/// Incremental constructor; [`Builder::build`] insists on the Jacobi identity.
#[derive(Clone, Debug)]
pub struct Builder {
    dim: usize,
    names: Option<Vec<String>>,
    entries: Vec<BracketEntry>,
}

impl Builder {
    pub fn names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.names = Some(names.into_iter().map(Into::into).collect());
        self
    }

    /// Sets `[e_i, e_j] = sum c e_k` (0-based). Order `i > j` is stored negated.
    pub fn bracket<C: Into<Rational> + Clone>(mut self, i: usize, j: usize, terms: &[(usize, C)]) -> Self {
        let terms: Vec<(usize, Rational)> = terms.iter().map(|(k, c)| (*k, c.clone().into())).collect();
        if i > j {
            let negated = terms.into_iter().map(|(k, c)| (k, -c)).collect();
            self.entries.push(((j, i), negated));
        } else {
            self.entries.push(((i, j), terms));
        }
        self
    }

    pub fn build(self) -> Result<LieAlgebra> {
        self.build_unchecked()?.validated()
    }

    /// Structural validation only; the Jacobi identity is not checked.
    pub fn build_unchecked(self) -> Result<LieAlgebra> {
        LieAlgebra::from_parts(self.dim, self.names, self.entries)
    }
}

impl LieAlgebra {
    pub fn builder(dim: usize) -> Builder {
        Builder {
            dim,
            names: None,
            entries: Vec::new(),
        }
    }

    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Result<Self> {
        Self::from_parts(dim, None, Vec::new())
    }

    /// The zero algebra. Only arises internally, as the kernel of a form on a line.
    pub(crate) fn zero() -> Self {
        LieAlgebra {
            dim: 0,
            names: Vec::new(),
            brackets: BracketTable::new(),
            table: Vec::new(),
        }
    }

    /// Structural constructor: checks indices, ordering and duplicates.
    pub fn from_parts(
        dim: usize,
        names: Option<Vec<String>>,
        entries: Vec<BracketEntry>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::InvalidAlgebra(format!(
                "dimension {dim} exceeds the supported maximum {MAX_DIM}"
            )));
        }
        let names = match names {
            Some(n) if n.len() != dim => {
                return Err(Error::InvalidAlgebra(format!(
                    "{} basis names given for dimension {dim}",
                    n.len()
                )))
            }
            Some(n) => n,
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let mut brackets = BracketTable::new();
        for ((i, j), terms) in entries {
            if i >= dim || j >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket index ({}, {}) out of range 1..={dim}",
                    i + 1,
                    j + 1
                )));
            }
            if i >= j {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket ({}, {}) must have i < j",
                    i + 1,
                    j + 1
                )));
            }
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "term index {} in bracket ({}, {}) out of range",
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
                if merged.insert(k, c).is_some() {
                    return Err(Error::InvalidAlgebra(format!(
                        "term e{} repeated in bracket ({}, {})",
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
            let terms: Vec<(usize, Rational)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if brackets.contains_key(&(i, j)) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate bracket ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            brackets.insert((i, j), terms);
        }
        brackets.retain(|_, t| !t.is_empty());

        let mut table = vec![Rational::zero(); dim * dim * dim];
        for (&(i, j), terms) in &brackets {
            for (k, c) in terms {
                table[(i * dim + j) * dim + k] = c.clone();
                table[(j * dim + i) * dim + k] = -c;
            }
        }
        Ok(LieAlgebra {
            dim,
            names,
            brackets,
            table,
        })
    }

    /// Returns the algebra if it satisfies the Jacobi identity.
    pub fn validated(self) -> Result<Self> {
        let report = self.jacobi_check();
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::JacobiViolation(report.failures))
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `c_ij^k`, valid for any order of `i, j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        assert_eq!(y.len(), self.dim, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.dim];
        for ((i, j), terms) in &self.brackets {
            let coeff = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += &coeff * c;
            }
        }
        out
    }

    /// Matrix of `ad x`: column `j` holds `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad_matrix(&unit(self.dim, i))
    }

    /// Checks the cyclic sum `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`
    /// for every `i < j < k`.
    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim;
        let mut failures = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut residual = vec![Rational::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_basis(b, c);
                        for (m, coeff) in inner.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            for (r, v) in self.bracket_basis(a, m).iter().enumerate() {
                                if !v.is_zero() {
                                    residual[r] += coeff * v;
                                }
                            }
                        }
                    }
                    if residual.iter().any(|v| !v.is_zero()) {
                        failures.push(JacobiFailure {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        JacobiReport { failures }
    }

    /// Row-reduced basis of `span{[a, b] : a in A, b in B}`.
    pub fn bracket_span(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut products = Vec::new();
        for x in a {
            for y in b {
                let z = self.bracket(x, y);
                if z.iter().any(|v| !v.is_zero()) {
                    products.push(z);
                }
            }
        }
        span_basis(self.dim, &products)
    }

    fn full_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.dim).map(|i| unit(self.dim, i)).collect()
    }

    /// Echelonized basis of `[g, g]`.
    pub fn derived_subalgebra(&self) -> Vec<Vec<Rational>> {
        let products: Vec<Vec<Rational>> = self
            .brackets
            .keys()
            .map(|&(i, j)| self.bracket_basis(i, j).to_vec())
            .collect();
        span_basis(self.dim, &products)
    }

    pub fn derived_dim(&self) -> usize {
        self.derived_subalgebra().len()
    }

    /// Dimensions of the derived series `g, [g,g], ...` until it stabilizes.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut current = self.full_basis();
        loop {
            let next = self.bracket_span(&current, &current);
            if next.len() == current.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            current = next;
        }
    }

    /// Dimensions of the lower central series `g, [g,g], [g,[g,g]], ...` until it stabilizes.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let full = self.full_basis();
        let mut dims = vec![self.dim];
        let mut current = full.clone();
        loop {
            let next = self.bracket_span(&full, &current);
            if next.len() == current.len() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            current = next;
        }
    }

    pub fn classify(&self) -> Classification {
        Classification {
            nilpotent: self.lower_central_series_dims().last() == Some(&0) || self.is_abelian(),
            solvable: self.derived_series_dims().last() == Some(&0) || self.is_abelian(),
        }
    }

    /// `trace(ad e_i) = 0` for every basis element.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_trace(i).is_zero())
    }

    /// `trace(ad e_i)`.
    pub fn ad_trace(&self, i: usize) -> Rational {
        (0..self.dim).map(|j| self.structure_constant(i, j, j)).sum()
    }

    /// First pair `(i, j)`, `i < j`, with `omega([e_i, e_j]) != 0`, i.e. a witness
    /// that `d(omega) != 0`.
    pub fn closedness_witness(&self, omega: &[Rational]) -> Option<(usize, usize)> {
        self.brackets.iter().find_map(|(&(i, j), terms)| {
            let v: Rational = terms.iter().map(|(k, c)| &omega[*k] * c).sum();
            (!v.is_zero()).then_some((i, j))
        })
    }

    /// Basis of the closed 1-forms (the annihilator of `[g, g]`), one per free coordinate.
    pub fn closed_forms_basis(&self) -> Vec<Vec<Rational>> {
        let derived = self.derived_subalgebra();
        if derived.is_empty() {
            return self.full_basis();
        }
        Matrix::from_rows(derived).kernel_basis()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> LieAlgebra {
        LieAlgebra::builder(3).bracket(0, 1, &[(2, 1)]).build().unwrap()
    }

    fn g0() -> LieAlgebra {
        LieAlgebra::builder(3)
            .bracket(0, 1, &[(1, 1)])
            .bracket(0, 2, &[(2, -1)])
            .build()
            .unwrap()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::builder(3)
            .bracket(0, 1, &[(2, 1)])
            .bracket(2, 0, &[(0, 2)])
            .bracket(2, 1, &[(1, -2)])
            .build()
            .unwrap()
    }

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn brackets_and_antisymmetry() {
        let h = h3();
        assert_eq!(h.bracket(&unit(3, 0), &unit(3, 1)), unit(3, 2));
        assert_eq!(h.bracket(&unit(3, 1), &unit(3, 0)), vec![r(0), r(0), r(-1)]);
        let x = vec![r(2), r(-1), r(5)];
        assert!(h.bracket(&x, &x).iter().all(Rational::is_zero));
        assert_eq!(g0().bracket(&unit(3, 0), &unit(3, 2)), vec![r(0), r(0), r(-1)]);
    }

    #[test]
    fn jacobi_detects_corruption() {
        assert!(h3().jacobi_check().passed());
        // h3 with an extra [e1,e3] = e2 is still a Lie algebra (ad e1 acting on
        // the abelian ideal span(e2,e3)): every term of the cyclic sum vanishes.
        let semidirect = LieAlgebra::builder(3)
            .bracket(0, 1, &[(2, 1)])
            .bracket(0, 2, &[(1, 1)])
            .build_unchecked()
            .unwrap();
        assert!(semidirect.jacobi_check().passed());
        // Adding [e2,e3] = e2 breaks it:
        // [e1,[e2,e3]] = [e1,e2] = e3, [e2,[e3,e1]] = [e2,-e2] = 0, [e3,[e1,e2]] = [e3,e3] = 0.
        let bad = LieAlgebra::builder(3)
            .bracket(0, 1, &[(2, 1)])
            .bracket(0, 2, &[(1, 1)])
            .bracket(1, 2, &[(1, 1)])
            .build_unchecked()
            .unwrap();
        let report = bad.jacobi_check();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].triple, (0, 1, 2));
        assert_eq!(report.failures[0].residual, vec![r(0), r(0), r(1)]);
        assert!(matches!(bad.validated(), Err(Error::JacobiViolation(_))));
    }

    #[test]
    fn structural_validation() {
        assert!(LieAlgebra::abelian(0).is_err());
        assert!(LieAlgebra::from_parts(2, None, vec![((1, 0), vec![])]).is_err());
        assert!(LieAlgebra::from_parts(2, None, vec![((0, 2), vec![])]).is_err());
        assert!(LieAlgebra::from_parts(
            2,
            None,
            vec![((0, 1), vec![(0, r(1))]), ((0, 1), vec![(1, r(1))])]
        )
        .is_err());
        assert!(LieAlgebra::from_parts(2, Some(vec!["x".into()]), vec![]).is_err());
        assert!(LieAlgebra::abelian(1).is_ok());
    }

    #[test]
    fn derived_algebras() {
        assert!(LieAlgebra::abelian(4).unwrap().derived_subalgebra().is_empty());
        assert_eq!(h3().derived_subalgebra(), vec![unit(3, 2)]);
        assert_eq!(g0().derived_subalgebra(), vec![unit(3, 1), unit(3, 2)]);
    }

    #[test]
    fn classification() {
        assert_eq!(h3().classify().label(), "nilpotent");
        assert_eq!(g0().classify().label(), "solvable");
        assert_eq!(sl2().classify().label(), "non-solvable");
        assert_eq!(LieAlgebra::abelian(2).unwrap().classify().label(), "nilpotent");
        assert_eq!(sl2().derived_series_dims(), vec![3]);
    }

    #[test]
    fn unimodularity() {
        assert!(h3().is_unimodular());
        assert!(g0().is_unimodular());
        assert_eq!(g0().ad_trace(0), r(0));
        let diag = LieAlgebra::builder(3)
            .bracket(0, 1, &[(1, 1)])
            .bracket(0, 2, &[(2, 1)])
            .build()
            .unwrap();
        assert!(!diag.is_unimodular());
        assert_eq!(diag.ad_trace(0), r(2));
    }

    #[test]
    fn closed_forms() {
        let g = g0();
        assert_eq!(g.closed_forms_basis(), vec![unit(3, 0)]);
        assert_eq!(g.closedness_witness(&unit(3, 1)), Some((0, 1)));
        assert_eq!(g.closedness_witness(&unit(3, 0)), None);
    }
}
