//! Betti numbers, explicit cohomology classes and λ-line scans for the
//! deformed complex `(Λ(g*), d_θ)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::exterior::{check_closed, wedge_form_with_basis, Covector, ExteriorBasis, Twist};
use crate::linalg::{normalize_leading, rank_of, span_basis, Matrix};
use crate::rational::Rational;

/// Dimensions `b^0..b^n` of the twisted cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub twist: Twist,
    pub betti: Vec<usize>,
    pub euler: i64,
}

impl BettiTable {
    fn new(twist: Twist, betti: Vec<usize>) -> Self {
        let euler = betti
            .iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        BettiTable { twist, betti, euler }
    }

    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    pub fn total(&self) -> usize {
        self.betti.iter().sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.betti.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A basis of `H^q` given by cocycles that are independent modulo coboundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySpace {
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<Vec<Rational>>,
    #[serde(skip)]
    coboundaries: Vec<Vec<Rational>>,
}

impl CohomologySpace {
    /// Coordinates of the class of a cocycle `z` in the representative basis,
    /// or `None` when `z` is not congruent to a combination of representatives.
    pub fn coordinates(&self, z: &[Rational]) -> Option<Vec<Rational>> {
        let mut columns = self.representatives.clone();
        columns.extend(self.coboundaries.iter().cloned());
        if columns.is_empty() {
            return z.iter().all(Rational::is_zero).then(Vec::new);
        }
        let m = Matrix::from_columns(z.len(), &columns);
        let x = m.solve(z)?;
        Some(x[..self.dimension].to_vec())
    }

    pub fn coboundaries(&self) -> &[Vec<Rational>] {
        &self.coboundaries
    }
}

/// All differentials `d_0..d_n` of one twisted complex.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    twist: Twist,
    basis: ExteriorBasis,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(alg: &LieAlgebra, twist: &Twist) -> Result<Self> {
        check_closed(alg, twist.omega())?;
        let basis = ExteriorBasis::new(alg.dim());
        let differentials = (0..=alg.dim())
            .into_par_iter()
            .map(|q| wedge_form_with_basis(alg, &basis, q, twist))
            .collect();
        Ok(CochainComplex {
            twist: twist.clone(),
            basis,
            differentials,
        })
    }

    /// The ordinary Chevalley–Eilenberg complex.
    pub fn untwisted(alg: &LieAlgebra) -> Self {
        Self::new(alg, &Twist::trivial(alg.dim())).expect("the zero form is closed")
    }

    pub fn dim(&self) -> usize {
        self.basis.generators()
    }

    pub fn basis(&self) -> &ExteriorBasis {
        &self.basis
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    /// `d_q : Λ^q → Λ^{q+1}`.
    pub fn differential(&self, q: usize) -> &Matrix {
        &self.differentials[q]
    }

    /// `d_{q+1} ∘ d_q = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(Matrix::rank).collect()
    }

    pub fn betti(&self) -> BettiTable {
        let ranks = self.ranks();
        let betti = (0..=self.dim())
            .map(|q| {
                let incoming = if q == 0 { 0 } else { ranks[q - 1] };
                self.basis.dim(q) - ranks[q] - incoming
            })
            .collect();
        BettiTable::new(self.twist.clone(), betti)
    }

    pub fn cohomology_space(&self, q: usize) -> Result<CohomologySpace> {
        let n = self.dim();
        if q > n {
            return Err(Error::DegreeOutOfRange { degree: q, dim: n });
        }
        let len = self.basis.dim(q);
        let cycles = self.differentials[q].kernel_basis();
        let coboundaries = if q == 0 {
            Vec::new()
        } else {
            span_basis(len, &self.differentials[q - 1].columns())
        };
        let mut chosen = coboundaries.clone();
        let mut representatives = Vec::new();
        for z in cycles {
            chosen.push(z.clone());
            if rank_of(&chosen) == chosen.len() {
                representatives.push(z);
            } else {
                chosen.pop();
            }
        }
        for r in &mut representatives {
            normalize_leading(r);
        }
        Ok(CohomologySpace {
            degree: q,
            dimension: representatives.len(),
            representatives,
            coboundaries,
        })
    }
}

/// Betti table of `H*_θ(g)`.
pub fn betti(alg: &LieAlgebra, twist: &Twist) -> Result<BettiTable> {
    Ok(CochainComplex::new(alg, twist)?.betti())
}

/// Representative cocycles of `H^q_θ(g)`.
pub fn cohomology_space(alg: &LieAlgebra, twist: &Twist, q: usize) -> Result<CohomologySpace> {
    CochainComplex::new(alg, twist)?.cohomology_space(q)
}

/// One Betti table per `λ` on the line through `omega`, in input order.
pub fn scan_line(alg: &LieAlgebra, omega: &Covector, lambdas: &[Rational]) -> Result<Vec<BettiTable>> {
    check_closed(alg, omega)?;
    lambdas
        .par_iter()
        .map(|l| betti(alg, &Twist::new(alg, omega.clone(), l.clone())?))
        .collect()
}

pub const COMMENSURABILITY_NOTE: &str = "generic-lambda Betti numbers equal the Novikov numbers of the \
     corresponding closed 1-form when all periods of the form are commensurable";

/// Generic and exceptional Betti data along the `λ`-line through `ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NovikovReport {
    pub omega: Covector,
    pub generic_lambda: Rational,
    pub generic_betti: Vec<usize>,
    pub exceptional_lambdas: Vec<(Rational, BettiTable)>,
    pub morse_lower_bounds: Vec<usize>,
    pub note: &'static str,
}

/// Smallest positive integer not among `candidates`.
pub fn generic_probe(candidates: &[Rational]) -> Rational {
    (1i64..)
        .map(Rational::from)
        .find(|l| !candidates.contains(l))
        .expect("finitely many candidates")
}

/// Novikov-type report for the line through `omega`. `candidates` must contain
/// every `λ` at which the cohomology can be nonzero; the generic value is
/// the smallest positive integer outside it.
pub fn novikov_report(alg: &LieAlgebra, omega: &Covector, candidates: &[Rational]) -> Result<NovikovReport> {
    check_closed(alg, omega)?;
    if omega.is_zero() {
        return Err(Error::OmegaZero);
    }
    let mut candidates = candidates.to_vec();
    candidates.sort();
    candidates.dedup();
    let generic_lambda = generic_probe(&candidates);
    let mut lambdas = candidates.clone();
    lambdas.push(generic_lambda.clone());
    let mut tables = scan_line(alg, omega, &lambdas)?;
    let generic = tables.pop().expect("generic table");
    let exceptional_lambdas: Vec<(Rational, BettiTable)> = candidates
        .into_iter()
        .zip(tables)
        .filter(|(_, t)| !t.is_zero())
        .collect();
    let morse_lower_bounds = (0..=alg.dim())
        .map(|p| {
            exceptional_lambdas
                .iter()
                .map(|(_, t)| t.betti[p])
                .chain([generic.betti[p]])
                .max()
                .unwrap_or(0)
        })
        .collect();
    Ok(NovikovReport {
        omega: omega.clone(),
        generic_lambda,
        generic_betti: generic.betti,
        exceptional_lambdas,
        morse_lower_bounds,
        note: COMMENSURABILITY_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    fn g0() -> LieAlgebra {
        LieAlgebra::builder(3)
            .bracket(0, 1, &[(1, 1)])
            .bracket(0, 2, &[(2, -1)])
            .build()
            .unwrap()
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::builder(3).bracket(0, 1, &[(2, 1)]).build().unwrap()
    }

    fn w1() -> Covector {
        Covector::basis(3, 0)
    }

    #[test]
    fn g0_tables() {
        let g = g0();
        assert_eq!(betti(&g, &Twist::trivial(3)).unwrap().betti, vec![1, 1, 1, 1]);
        for l in [1, -1] {
            let t = Twist::new(&g, w1(), r(l)).unwrap();
            let table = betti(&g, &t).unwrap();
            assert_eq!(table.betti, vec![0, 1, 1, 0]);
            assert_eq!(table.euler, 0);
        }
    }

    #[test]
    fn torus_is_binomial() {
        let a = LieAlgebra::abelian(4).unwrap();
        assert_eq!(betti(&a, &Twist::trivial(4)).unwrap().betti, vec![1, 4, 6, 4, 1]);
        let s = cohomology_space(&LieAlgebra::abelian(2).unwrap(), &Twist::trivial(2), 1).unwrap();
        assert_eq!(s.representatives, vec![vec![r(1), r(0)], vec![r(0), r(1)]]);
    }

    #[test]
    fn heisenberg_vanishes_when_twisted() {
        let h = h3();
        assert_eq!(betti(&h, &Twist::trivial(3)).unwrap().betti, vec![1, 2, 2, 1]);
        let t = Twist::new(&h, w1(), r(1)).unwrap();
        assert!(betti(&h, &t).unwrap().is_zero());
        assert_eq!(cohomology_space(&h, &t, 0).unwrap().dimension, 0);
    }

    #[test]
    fn g0_first_class_is_w1() {
        let s = cohomology_space(&g0(), &Twist::trivial(3), 1).unwrap();
        assert_eq!(s.representatives, vec![vec![r(1), r(0), r(0)]]);
    }

    #[test]
    fn representatives_are_cocycles_and_independent() {
        let g = g0();
        for l in [-1, 0, 1] {
            let t = Twist::new(&g, w1(), r(l)).unwrap();
            let c = CochainComplex::new(&g, &t).unwrap();
            assert!(c.is_complex());
            let table = c.betti();
            for q in 0..=3 {
                let s = c.cohomology_space(q).unwrap();
                assert_eq!(s.dimension, table.betti[q]);
                for z in &s.representatives {
                    assert!(c.differential(q).mul_vec(z).iter().all(Rational::is_zero));
                    assert_eq!(s.coordinates(z).unwrap().len(), s.dimension);
                }
                let mut all = s.coboundaries().to_vec();
                all.extend(s.representatives.iter().cloned());
                assert_eq!(rank_of(&all), all.len());
            }
        }
    }

    #[test]
    fn scan_preserves_order() {
        let g = g0();
        let lambdas: Vec<Rational> = (-2..=2).map(r).collect();
        let tables = scan_line(&g, &w1(), &lambdas).unwrap();
        let nonzero: Vec<bool> = tables.iter().map(|t| !t.is_zero()).collect();
        assert_eq!(nonzero, vec![false, true, true, true, false]);
        assert!(scan_line(&g, &w1(), &[]).unwrap().is_empty());
    }

    #[test]
    fn novikov_for_g0_and_torus() {
        let rep = novikov_report(&g0(), &w1(), &[r(-1), r(0), r(1)]).unwrap();
        assert_eq!(rep.generic_lambda, r(2));
        assert_eq!(rep.generic_betti, vec![0; 4]);
        let ex: Vec<Rational> = rep.exceptional_lambdas.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(ex, vec![r(-1), r(0), r(1)]);
        assert_eq!(rep.morse_lower_bounds, vec![1, 1, 1, 1]);

        let torus = LieAlgebra::abelian(3).unwrap();
        let rep = novikov_report(&torus, &w1(), &[r(0)]).unwrap();
        assert_eq!(rep.exceptional_lambdas.len(), 1);
        assert_eq!(rep.exceptional_lambdas[0].1.betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn open_forms_are_rejected() {
        assert!(matches!(
            scan_line(&g0(), &Covector::basis(3, 2), &[r(1)]),
            Err(Error::OmegaNotClosed { .. })
        ));
    }
}
