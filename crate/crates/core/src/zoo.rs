//! Named example algebras with recorded expected results.
//!
//! Each family has a fixture file of exact expectations (Betti tables at
//! given twists, `adX*` spectra, nontriviality sets, weights). The fixtures
//! are data, shared by the test suite and the command line, and
//! [`verify_fixture`] recomputes every recorded value.

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::cohomology::betti;
use crate::dixmier::{nontriviality_set, operator_spectrum, split};
use crate::error::{Error, Result};
use crate::exterior::{Covector, Twist};
use crate::rational::Rational;
use crate::weights::weight_system;

pub const NAMES: &[&str] = &["torus", "heisenberg", "v_family", "g0", "diag_example"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiExpectation {
    pub omega: Covector,
    pub lambda: Rational,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumExpectation {
    pub omega: Covector,
    /// Distinct rational eigenvalues of `adX*` per degree, sorted.
    pub spec: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NontrivialityExpectation {
    pub omega: Covector,
    pub lambdas: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureCase {
    #[serde(default)]
    pub n: Option<usize>,
    pub classification: String,
    pub unimodular: bool,
    pub derived_dim: usize,
    #[serde(default)]
    pub betti: Vec<BettiExpectation>,
    #[serde(default)]
    pub spectra: Vec<SpectrumExpectation>,
    #[serde(default)]
    pub nontriviality: Vec<NontrivialityExpectation>,
    /// Weights sorted lexicographically; absent when not recorded.
    #[serde(default)]
    pub weights: Option<Vec<Covector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub provenance: String,
    #[serde(default)]
    pub note: Option<String>,
    pub cases: Vec<FixtureCase>,
}

fn fixture_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "torus" => include_str!("../fixtures/torus.json"),
        "heisenberg" => include_str!("../fixtures/heisenberg.json"),
        "v_family" => include_str!("../fixtures/v_family.json"),
        "g0" => include_str!("../fixtures/g0.json"),
        "diag_example" => include_str!("../fixtures/diag_example.json"),
        _ => return None,
    })
}

/// The fixture file of a zoo family.
pub fn fixture(name: &str) -> Result<Fixture> {
    let text = fixture_source(name).ok_or_else(|| Error::UnknownZoo(name.to_string()))?;
    Ok(serde_json::from_str(text)?)
}

/// A zoo algebra with its parameter and recorded expectations (if any).
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub n: Option<usize>,
    pub algebra: LieAlgebra,
    pub provenance: String,
    pub note: Option<String>,
    pub expected: Option<FixtureCase>,
}

impl ZooEntry {
    fn new(name: &str, n: Option<usize>, algebra: LieAlgebra) -> Result<Self> {
        let fx = fixture(name)?;
        let expected = fx.cases.into_iter().find(|c| c.n == n);
        Ok(ZooEntry {
            name: name.to_string(),
            n,
            algebra,
            provenance: fx.provenance,
            note: fx.note,
            expected,
        })
    }

    /// `name` or `name(n)`.
    pub fn label(&self) -> String {
        match self.n {
            Some(n) => format!("{}({n})", self.name),
            None => self.name.clone(),
        }
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidAlgebra(what.to_string()))
    }
}

/// Abelian algebra of dimension `n ≥ 1`.
pub fn torus(n: usize) -> Result<ZooEntry> {
    require(n >= 1, "torus needs n >= 1")?;
    ZooEntry::new("torus", Some(n), LieAlgebra::abelian(n)?)
}

/// `[e1, e2] = e3`.
pub fn heisenberg() -> Result<ZooEntry> {
    let alg = LieAlgebra::builder(3).bracket(0, 1, &[(2, 1)]).build()?;
    ZooEntry::new("heisenberg", None, alg)
}

/// `[e_i, e_j] = (j - i) e_{i+j}` for `i + j ≤ n`, `n ≥ 3`.
pub fn v_family(n: usize) -> Result<ZooEntry> {
    require(n >= 3, "v_family needs n >= 3")?;
    let mut b = LieAlgebra::builder(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if i + j <= n {
                b = b.bracket(i - 1, j - 1, &[(i + j - 1, (j - i) as i64)]);
            }
        }
    }
    ZooEntry::new("v_family", Some(n), b.build()?)
}

/// `[e1, e2] = e2`, `[e1, e3] = -e3`.
pub fn g0() -> Result<ZooEntry> {
    let alg = LieAlgebra::builder(3)
        .bracket(0, 1, &[(1, 1)])
        .bracket(0, 2, &[(2, -1)])
        .build()?;
    ZooEntry::new("g0", None, alg)
}

/// Basis `(X, e_1, …, e_n)` with `[X, e_i] = e_i`, `n ≥ 1`.
pub fn diag_example(n: usize) -> Result<ZooEntry> {
    require(n >= 1, "diag_example needs n >= 1")?;
    let mut b = LieAlgebra::builder(n + 1).names(std::iter::once("X".to_string()).chain((1..=n).map(|i| format!("e{i}"))));
    for i in 1..=n {
        b = b.bracket(0, i, &[(i, 1)]);
    }
    ZooEntry::new("diag_example", Some(n), b.build()?)
}

/// Looks up a family by name. Parametric families default to their smallest
/// interesting size when `n` is omitted.
pub fn by_name(name: &str, n: Option<usize>) -> Result<ZooEntry> {
    match name {
        "torus" => torus(n.unwrap_or(3)),
        "heisenberg" | "h3" => heisenberg(),
        "v_family" => v_family(n.unwrap_or(4)),
        "g0" => g0(),
        "diag_example" => diag_example(n.unwrap_or(2)),
        other => Err(Error::UnknownZoo(other.to_string())),
    }
}

/// The entries exercised by the test suites, with a few closed probe forms each.
pub fn standard_entries() -> Result<Vec<ZooEntry>> {
    let mut out = vec![torus(1)?, torus(2)?, torus(3)?, heisenberg()?, g0()?];
    for n in 3..=5 {
        out.push(v_family(n)?);
    }
    for n in 1..=3 {
        out.push(diag_example(n)?);
    }
    Ok(out)
}

/// Nonzero closed 1-forms used as probes: each basis form of `g/[g,g]`
/// plus, when available, the sum of two of them with a rational weight.
pub fn probe_forms(alg: &LieAlgebra) -> Vec<Covector> {
    let basis: Vec<Covector> = alg.closed_forms_basis().into_iter().map(Covector).collect();
    let mut out = basis.clone();
    if basis.len() >= 2 {
        out.push(basis[0].add(&basis[1].scale(&Rational::new(-2, 3))));
    }
    out
}

/// Recomputes every expectation of `entry`, returning one message per mismatch.
pub fn verify_fixture(entry: &ZooEntry) -> Result<Vec<String>> {
    let Some(case) = &entry.expected else {
        return Ok(Vec::new());
    };
    let alg = &entry.algebra;
    let mut mismatches = Vec::new();
    let mut check = |ok: bool, msg: String| {
        if !ok {
            mismatches.push(msg);
        }
    };
    let class = alg.classify().label();
    check(class == case.classification, format!("classification {class} != {}", case.classification));
    check(
        alg.is_unimodular() == case.unimodular,
        format!("unimodular flag differs (expected {})", case.unimodular),
    );
    check(
        alg.derived_dim() == case.derived_dim,
        format!("dim [g,g] = {} != {}", alg.derived_dim(), case.derived_dim),
    );
    for e in &case.betti {
        let got = betti(alg, &Twist::new(alg, e.omega.clone(), e.lambda.clone())?)?.betti;
        check(
            got == e.betti,
            format!("betti at lambda={} omega={}: {got:?} != {:?}", e.lambda, e.omega, e.betti),
        );
    }
    for e in &case.spectra {
        let spec = operator_spectrum(&split(alg, &e.omega)?)?;
        let got: Vec<Vec<Rational>> = spec
            .degrees
            .iter()
            .map(|d| d.eigenvalues.iter().map(|(r, _)| r.clone()).collect())
            .collect();
        check(got == e.spec, format!("spectrum for omega={}: {got:?} != {:?}", e.omega, e.spec));
    }
    for e in &case.nontriviality {
        let got = nontriviality_set(alg, &e.omega)?.lambdas;
        check(
            got == e.lambdas,
            format!("nontriviality set for omega={}: {got:?} != {:?}", e.omega, e.lambdas),
        );
    }
    if let Some(expected) = &case.weights {
        let mut got = weight_system(alg)?.weights;
        got.sort();
        check(got == *expected, format!("weights {got:?} != {expected:?}"));
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for name in NAMES {
            let fx = fixture(name).unwrap();
            assert_eq!(fx.name, *name);
        }
    }

    #[test]
    fn every_entry_matches_its_fixture() {
        for entry in standard_entries().unwrap() {
            assert!(entry.algebra.jacobi_check().passed());
            let bad = verify_fixture(&entry).unwrap();
            assert!(bad.is_empty(), "{}: {bad:?}", entry.label());
        }
        let v4 = v_family(4).unwrap();
        assert!(verify_fixture(&v4).unwrap().is_empty());
    }

    #[test]
    fn v_family_brackets() {
        let v5 = v_family(5).unwrap().algebra;
        assert_eq!(v5.structure_constant(0, 1, 2), &Rational::from(1));
        assert_eq!(v5.structure_constant(0, 3, 4), &Rational::from(3));
        assert_eq!(v5.structure_constant(1, 2, 4), &Rational::from(1));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("diag_example", Some(3)).unwrap().algebra.dim(), 4);
        assert!(matches!(by_name("nope", None), Err(Error::UnknownZoo(_))));
        assert!(torus(0).is_err());
        assert_eq!(diag_example(2).unwrap().algebra.names()[0], "X");
    }
}
