//! End-to-end analysis: decompose, certify, run oracles, and assemble a
//! JSON-serializable report.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::certify::{certify_family, CertifyError, CollisionWitness, FamilyParams, Status, Verdict};
use crate::decompose::{decompose_quartic, family_params, DecomposeError, Decomposition, QuadDecomposition};
use crate::oracle::{
    boundary_scan, collision_scan, winding_scan, OracleConfig, OracleError, OracleMethod, OracleReport,
};
use crate::polycore::{parse_poly, ParseError, Poly};

/// Bumped on any change to the report layout.
pub const SCHEMA_VERSION: &str = "1.0.0";
const WITNESSES_PER_SOURCE: usize = 4;

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(usize),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug)]
pub enum AnalysisInput {
    /// Polynomial text format.
    Text(String),
    Family(FamilyParams),
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub tol: f64,
    pub oracle: OracleConfig,
    pub methods: Vec<OracleMethod>,
    pub require_quartic: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tol: crate::decompose::DEFAULT_DECOMPOSE_TOL,
            oracle: OracleConfig::default(),
            methods: vec![
                OracleMethod::CollisionScan,
                OracleMethod::BoundarySimplicity,
                OracleMethod::WindingScan,
            ],
            require_quartic: false,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub decompose_ms: f64,
    pub certify_ms: f64,
    pub oracle_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub certificate: Option<Verdict>,
    pub oracle: Vec<OracleReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub input: String,
    pub decomposition: Option<QuadDecomposition>,
    pub decomposition_note: Option<String>,
    pub params: Option<FamilyParams>,
    pub verdicts: Verdicts,
    /// Certificate and conclusive oracle verdicts all point the same way.
    pub agreement: bool,
    pub witnesses: Vec<CollisionWitness>,
    pub timings: Timings,
}

impl AnalysisReport {
    /// Either the certificate flagged a disagreement or the verdicts conflict.
    pub fn has_disagreement(&self) -> bool {
        !self.agreement
            || self
                .verdicts
                .certificate
                .as_ref()
                .is_some_and(|v| v.disagreement)
    }
}

fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn run_oracles(
    p: &Poly<Complex64>,
    cfg: &OracleConfig,
    methods: &[OracleMethod],
) -> Result<Vec<OracleReport>, OracleError> {
    methods
        .iter()
        .map(|m| match m {
            OracleMethod::CollisionScan => collision_scan(p, cfg),
            OracleMethod::BoundarySimplicity => boundary_scan(p, cfg),
            OracleMethod::WindingScan => winding_scan(p, cfg.max_radius(), cfg),
        })
        .collect()
}

/// True when every conclusive opinion (certificate status and oracle
/// verdicts) is the same.
pub fn verdicts_agree(certificate: Option<&Verdict>, oracles: &[OracleReport]) -> bool {
    let cert = certificate.and_then(|v| match v.status {
        Status::CertifiedUnivalent => Some(true),
        Status::CertifiedNotUnivalent => Some(false),
        Status::Inconclusive => None,
    });
    let mut opinions = cert
        .into_iter()
        .chain(oracles.iter().filter_map(|r| r.verdict.supports_univalence()));
    match opinions.next() {
        Some(first) => opinions.all(|o| o == first),
        None => true,
    }
}

pub fn analyze(input: &AnalysisInput, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let mut timings = Timings::default();
    let started = Instant::now();

    let (text, poly, decomposition, note, params) = match input {
        AnalysisInput::Text(text) => {
            let parsed = parse_poly(text)?;
            timings.parse_ms = elapsed_ms(started);
            let degree = parsed.degree();
            if degree != 4 && opts.require_quartic {
                return Err(AnalyzeError::NotQuartic(degree));
            }
            let t = Instant::now();
            let (decomposition, note, params) = if degree == 4 {
                match decompose_quartic(&parsed, opts.tol)? {
                    Decomposition::Composite(d) => {
                        let params = family_params(&d).ok();
                        (Some(d), None, params)
                    }
                    Decomposition::NotDecomposable { reason } => (None, Some(reason), None),
                }
            } else {
                (None, Some(format!("degree {degree}: oracle-only analysis")), None)
            };
            timings.decompose_ms = elapsed_ms(t);
            (text.clone(), parsed.to_complex(), decomposition, note, params)
        }
        AnalysisInput::Family(params) => {
            let poly = params.quartic();
            let d = QuadDecomposition {
                a: params.a,
                q: [params.gamma, params.alpha * params.c, params.alpha],
                exact: None,
            };
            (poly.to_string(), poly, Some(d), None, Some(*params))
        }
    };

    let t = Instant::now();
    let mut certificate = params.as_ref().map(certify_family).transpose()?;
    timings.certify_ms = elapsed_ms(t);

    let t = Instant::now();
    let oracle = run_oracles(&poly, &opts.oracle, &opts.methods)?;
    timings.oracle_ms = elapsed_ms(t);

    if let Some(v) = certificate.as_mut() {
        for r in &oracle {
            v.note_oracle(r.verdict);
        }
    }
    let agreement = verdicts_agree(certificate.as_ref(), &oracle);

    let mut witnesses: Vec<CollisionWitness> = certificate
        .as_ref()
        .and_then(|v| v.witness)
        .into_iter()
        .collect();
    for r in &oracle {
        witnesses.extend(r.witnesses.iter().take(WITNESSES_PER_SOURCE).copied());
    }

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input: text,
        decomposition,
        decomposition_note: note,
        params,
        verdicts: Verdicts { certificate, oracle },
        agreement,
        witnesses,
        timings,
    })
}
