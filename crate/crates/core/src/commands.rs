//! Command dispatch and rendering behind the `twcoh` binary.
//!
//! Every command produces an [`OutputDocument`] that renders either as an
//! aligned text table or as deterministic JSON. Exit codes: 0 success,
//! 2 invalid algebra, 3 invalid 1-form, 4 refusal because an eigenvalue is
//! irrational, 1 for anything else.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::algebra::{JacobiReport, LieAlgebra};
use crate::cohomology::{betti, novikov_report, BettiTable, NovikovReport};
use crate::dixmier::{nontriviality_set, operator_spectrum, split, verify_les_grid, LESReport, NontrivialitySet, OperatorSpectrum};
use crate::error::{Error, Result};
use crate::exterior::{Covector, Twist};
use crate::rational::Rational;
use crate::spec_format::{digest, AlgebraSpec};
use crate::weights::{weight_system, WeightSystem};
use crate::zoo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_INVALID_ALGEBRA: i32 = 2;
pub const EXIT_INVALID_FORM: i32 = 3;
pub const EXIT_IRRATIONAL: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidAlgebra(_)
        | Error::JacobiViolation(_)
        | Error::Spec { .. }
        | Error::Json(_)
        | Error::UnknownZoo(_)
        | Error::NotSolvable => EXIT_INVALID_ALGEBRA,
        Error::OmegaNotClosed { .. }
        | Error::OmegaZero
        | Error::InvalidForm(_)
        | Error::DimensionMismatch { .. }
        | Error::ProbeInExceptionalSet { .. } => EXIT_INVALID_FORM,
        Error::RationalSpectrumRequired { .. } => EXIT_IRRATIONAL,
        _ => EXIT_OTHER,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    File(PathBuf),
    Zoo { name: String, n: Option<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Betti { omega: Option<Covector>, lambda: Rational },
    Spectrum { omega: Covector },
    Weights,
    OmegaSet,
    NontrivialSet { omega: Covector },
    LesVerify { omega: Covector, lambdas: Vec<Rational> },
    Novikov { omega: Covector },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Betti { .. } => "betti",
            Command::Spectrum { .. } => "spectrum",
            Command::Weights => "weights",
            Command::OmegaSet => "omega-set",
            Command::NontrivialSet { .. } => "nontrivial-set",
            Command::LesVerify { .. } => "les-verify",
            Command::Novikov { .. } => "novikov",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub source: AlgebraSource,
    pub command: Command,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraInfo {
    pub label: String,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub jacobi: JacobiReport,
    pub passed: bool,
    pub classification: Option<&'static str>,
    pub unimodular: Option<bool>,
    pub derived_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Validation(ValidationReport),
    Betti(BettiTable),
    Spectrum {
        spectrum: OperatorSpectrum,
        nontriviality: NontrivialitySet,
    },
    Weights(WeightSystem),
    NontrivialSet {
        set: NontrivialitySet,
        weight_candidates: Option<Vec<Rational>>,
    },
    Les(Vec<LESReport>),
    Novikov(NovikovReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputDocument {
    pub command: &'static str,
    pub algebra: AlgebraInfo,
    pub input_digest: String,
    pub result: Payload,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub exit_code: i32,
}

/// Parses `"a1,a2,..."` into a covector of rationals.
pub fn parse_covector(text: &str) -> Result<Covector> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|e| Error::InvalidForm(format!("coordinate `{}`: {e}", s.trim())))
        })
        .collect::<Result<Vec<_>>>()
        .map(Covector)
}

/// Parses a λ grid: an integer range `a..b` (inclusive) or a comma list.
pub fn parse_lambda_grid(text: &str) -> Result<Vec<Rational>> {
    if let Some((a, b)) = text.split_once("..") {
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidForm(format!("range bound `{}` is not an integer", s.trim())))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a > b {
            return Err(Error::InvalidForm(format!("empty range {a}..{b}")));
        }
        return Ok((a..=b).map(Rational::from).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|e| Error::InvalidForm(format!("lambda `{}`: {e}", s.trim())))
        })
        .collect()
}

fn load(source: &AlgebraSource, validate: bool) -> Result<(LieAlgebra, String)> {
    match source {
        AlgebraSource::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let spec = AlgebraSpec::from_json(&text)?;
            let alg = if validate {
                spec.to_algebra()?
            } else {
                spec.to_algebra_unchecked()?
            };
            Ok((alg, path.display().to_string()))
        }
        AlgebraSource::Zoo { name, n } => {
            let entry = zoo::by_name(name, *n)?;
            Ok((entry.algebra.clone(), entry.label()))
        }
    }
}

fn irrational_warnings(set: &NontrivialitySet) -> Vec<String> {
    set.residuals
        .iter()
        .map(|(k, p)| {
            format!(
                "adX* on H^{k} has eigenvalues outside Q (residual factor {p}); the set is complete over Q only (partial)"
            )
        })
        .collect()
}

pub fn execute(req: &Request) -> Result<OutputDocument> {
    let is_check = matches!(req.command, Command::Check);
    let (alg, label) = load(&req.source, !is_check)?;
    let info = AlgebraInfo {
        label,
        dim: alg.dim(),
        basis: alg.names().to_vec(),
    };
    let mut warnings = Vec::new();
    let mut exit = EXIT_OK;
    let result = match &req.command {
        Command::Check => {
            let jacobi = alg.jacobi_check();
            let passed = jacobi.passed();
            if !passed {
                exit = EXIT_INVALID_ALGEBRA;
            }
            Payload::Validation(ValidationReport {
                passed,
                classification: passed.then(|| alg.classify().label()),
                unimodular: passed.then(|| alg.is_unimodular()),
                derived_dim: passed.then(|| alg.derived_dim()),
                jacobi,
            })
        }
        Command::Betti { omega, lambda } => {
            let twist = match omega {
                Some(w) => Twist::new(&alg, w.clone(), lambda.clone())?,
                None => Twist::trivial(alg.dim()),
            };
            Payload::Betti(betti(&alg, &twist)?)
        }
        Command::Spectrum { omega } => {
            let spectrum = operator_spectrum(&split(&alg, omega)?)?;
            let nontriviality = nontriviality_set(&alg, omega)?;
            warnings.extend(irrational_warnings(&nontriviality));
            Payload::Spectrum {
                spectrum,
                nontriviality,
            }
        }
        Command::Weights | Command::OmegaSet => Payload::Weights(weight_system(&alg)?),
        Command::NontrivialSet { omega } => {
            let set = nontriviality_set(&alg, omega)?;
            warnings.extend(irrational_warnings(&set));
            let weight_candidates = match weight_system(&alg) {
                Ok(ws) => Some(ws.line_candidates(omega)),
                Err(e) => {
                    warnings.push(format!("weights unavailable: {e}"));
                    None
                }
            };
            Payload::NontrivialSet { set, weight_candidates }
        }
        Command::LesVerify { omega, lambdas } => {
            let reports = verify_les_grid(&alg, omega, lambdas)?;
            if reports.iter().any(|r| !r.holds()) {
                return Err(Error::Internal("dimension identity failed".into()));
            }
            Payload::Les(reports)
        }
        Command::Novikov { omega } => {
            let set = nontriviality_set(&alg, omega)?;
            warnings.extend(irrational_warnings(&set));
            let mut candidates = set.lambdas.clone();
            if let Ok(ws) = weight_system(&alg) {
                candidates.extend(ws.line_candidates(omega));
            }
            Payload::Novikov(novikov_report(&alg, omega, &candidates)?)
        }
    };
    Ok(OutputDocument {
        command: req.command.name(),
        algebra: info,
        input_digest: digest(&alg),
        result,
        warnings,
        exit_code: exit,
    })
}

pub fn render_json(doc: &OutputDocument) -> String {
    serde_json::to_string_pretty(doc).expect("output serializes")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn set_of<T: ToString>(items: &[T]) -> String {
    format!("{{{}}}", join(items))
}

fn twist_label(t: &Twist) -> String {
    if t.is_trivial() {
        "0".to_string()
    } else {
        format!("lambda = {}, omega = {}", t.lambda(), t.omega())
    }
}

fn betti_rows(out: &mut String, betti: &[usize]) {
    let _ = writeln!(out, "  q | b^q");
    let _ = writeln!(out, "  --+----");
    for (q, b) in betti.iter().enumerate() {
        let _ = writeln!(out, "  {q:>1} | {b}");
    }
}

pub fn render_table(doc: &OutputDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra: {} (dim {})", doc.algebra.label, doc.algebra.dim);
    match &doc.result {
        Payload::Validation(v) => {
            if v.passed {
                let _ = writeln!(out, "jacobi: pass");
                let _ = writeln!(out, "class: {}", v.classification.unwrap_or("-"));
                let _ = writeln!(out, "unimodular: {}", v.unimodular.unwrap_or(false));
                let _ = writeln!(out, "dim [g,g]: {}", v.derived_dim.unwrap_or(0));
            } else {
                let _ = writeln!(out, "jacobi: FAIL");
                for f in &v.jacobi.failures {
                    let (i, j, k) = f.triple;
                    let _ = writeln!(out, "  triple ({},{},{}): residual {}", i + 1, j + 1, k + 1, Covector(f.residual.clone()).to_string().replace('w', "e"));
                }
            }
        }
        Payload::Betti(t) => {
            let _ = writeln!(out, "twist: {}", twist_label(&t.twist));
            betti_rows(&mut out, &t.betti);
            let _ = writeln!(out, "  euler = {}", t.euler);
        }
        Payload::Spectrum { spectrum, nontriviality } => {
            let _ = writeln!(out, "omega: {}", nontriviality.omega);
            let _ = writeln!(out, "  k | dim H^k(b) | Spec^k");
            for d in &spectrum.degrees {
                let roots: Vec<String> = d
                    .eigenvalues
                    .iter()
                    .map(|(r, m)| if *m == 1 { r.to_string() } else { format!("{r} (x{m})") })
                    .collect();
                let residual = if d.is_rational() {
                    String::new()
                } else {
                    format!("  + roots of {}", d.residual)
                };
                let _ = writeln!(out, "  {} | {:>10} | {}{}", d.degree, d.matrix.rows(), set_of(&roots), residual);
            }
            let _ = writeln!(out, "nontrivial lambda: {}", set_of(&nontriviality.lambdas));
            if nontriviality.partial {
                let _ = writeln!(out, "partial: true");
            }
        }
        Payload::Weights(ws) => {
            if doc.command == "omega-set" {
                let _ = writeln!(out, "Omega_g: {}", set_of(&ws.omega_set));
                let _ = writeln!(out, "~Omega_g: {}", set_of(&ws.omega_tilde));
            } else {
                let _ = writeln!(out, "k = {}", ws.adapted.k);
                for s in &ws.adapted.structure_equations {
                    let _ = writeln!(out, "  alpha_{} = {}", s.index + 1, s.weight);
                }
                let _ = writeln!(out, "sum = {}", ws.sum_of_all);
            }
        }
        Payload::NontrivialSet { set, weight_candidates } => {
            let _ = writeln!(out, "omega: {}", set.omega);
            let _ = writeln!(out, "nontrivial lambda: {}", set_of(&set.lambdas));
            for t in &set.certified {
                let _ = writeln!(out, "  lambda = {:>4}: {}", t.twist.lambda(), t);
            }
            if let Some(c) = weight_candidates {
                let _ = writeln!(out, "weight bound: {}", set_of(c));
            }
        }
        Payload::Les(reports) => {
            let _ = writeln!(out, "  lambda | k^i | k^i + k^(i-1) | b^i | verdict");
            for r in reports {
                let verdict = if r.holds() { "equal" } else { "UNEQUAL" };
                let _ = writeln!(
                    out,
                    "  {:>6} | {:?} | {:?} | {:?} | {verdict}",
                    r.lambda, r.kernel_dims, r.predicted_betti, r.actual_betti
                );
            }
        }
        Payload::Novikov(n) => {
            let _ = writeln!(out, "omega: {}", n.omega);
            let _ = writeln!(out, "generic lambda = {}: {:?}", n.generic_lambda, n.generic_betti);
            for (l, t) in &n.exceptional_lambdas {
                let _ = writeln!(out, "exceptional lambda = {l}: {t}");
            }
            let _ = writeln!(out, "lower bounds: {:?}", n.morse_lower_bounds);
            let _ = writeln!(out, "note: {}", n.note);
        }
    }
    for w in &doc.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn render(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Table => render_table(doc),
        Format::Json => render_json(doc),
    }
}
