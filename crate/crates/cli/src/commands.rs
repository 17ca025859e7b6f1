use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Serialize;
use univalence_core::certify::{CertifyError, FamilyParams};
use univalence_core::decompose::{decompose_quartic, DecomposeError, Decomposition};
use univalence_core::oracle::{OracleConfig, OracleError, OracleReport};
use univalence_core::plot::{boundary_plot, region_plot, roots_plot, PlotFormat, PlotKind};
use univalence_core::polycore::{parse_poly, Poly};
use univalence_core::report::{
    analyze, run_oracles, verdicts_agree, AnalysisInput, AnalysisReport, AnalyzeError, AnalyzeOptions,
    SCHEMA_VERSION,
};
use univalence_core::sweep::{run_sweep, sweep_oracle_config, SweepGrid, SweepOptions};

use crate::args::{parse_family, Cli, Command, GlobalOpts, OracleArgs, PlotArgs, Source, SweepArgs};

pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 3;

/// The reference example, `q((z+1)^2)` with
/// `q(t) = (t^2 + t - 2) / 6`.
const F4: &str = "0, 1, 7/6, 2/3, 1/6";

pub enum Outcome {
    Agreement,
    Disagreement,
}

impl Outcome {
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Agreement => 0,
            Outcome::Disagreement => EXIT_DISAGREEMENT,
        }
    }

    fn from_flag(disagreement: bool) -> Self {
        if disagreement {
            Outcome::Disagreement
        } else {
            Outcome::Agreement
        }
    }
}

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: anyhow!(msg.into()),
        }
    }

    pub fn numerical(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_NUMERICAL,
            error: error.into(),
        }
    }

    fn io(error: io::Error, what: &Path) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: anyhow::Error::new(error).context(format!("writing {}", what.display())),
        }
    }
}

fn oracle_error_code(e: &OracleError) -> u8 {
    match e {
        OracleError::InvalidRadius(_)
        | OracleError::InvalidConfig(_)
        | OracleError::TooFewVertices { .. }
        | OracleError::DegreeTooSmall(_) => EXIT_USAGE,
        OracleError::TooClose { .. } | OracleError::Poly(_) => EXIT_NUMERICAL,
    }
}

impl From<AnalyzeError> for Failure {
    fn from(e: AnalyzeError) -> Self {
        let code = match &e {
            AnalyzeError::Parse(_) | AnalyzeError::NotQuartic(_) => EXIT_USAGE,
            AnalyzeError::Decompose(DecomposeError::WrongDegree(_) | DecomposeError::NonFinite) => EXIT_USAGE,
            AnalyzeError::Decompose(DecomposeError::DegenerateOuter) => EXIT_NUMERICAL,
            AnalyzeError::Certify(CertifyError::InvalidParams(_)) => EXIT_USAGE,
            AnalyzeError::Certify(CertifyError::NoInteriorWitness(_)) => EXIT_NUMERICAL,
            AnalyzeError::Oracle(o) => oracle_error_code(o),
        };
        Failure { code, error: e.into() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure {
            code: oracle_error_code(&e),
            error: e.into(),
        }
    }
}

fn usage_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: e.into(),
    }
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|e| Failure::io(e, p)),
        None => io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| Failure::io(e, Path::new("<stdout>"))),
    }
}

fn emit_json<T: Serialize>(global: &GlobalOpts, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(Failure::numerical)?;
    text.push('\n');
    write_output(global.json_out.as_deref(), &text)
}

fn checked_oracle_config(global: &GlobalOpts, base: OracleConfig) -> Result<OracleConfig, Failure> {
    let cfg = global.oracle_config(base);
    cfg.validate()?;
    Ok(cfg)
}

fn analysis_input(source: &Source) -> Result<AnalysisInput, Failure> {
    match (&source.poly, &source.family) {
        (Some(text), _) => Ok(AnalysisInput::Text(text.clone())),
        (None, Some(items)) => Ok(AnalysisInput::Family(parse_family(items).map_err(usage_err)?)),
        (None, None) => Err(Failure::usage("give polynomial coefficients or --family")),
    }
}

pub fn run(cli: Cli) -> Result<Outcome, Failure> {
    if !(cli.global.tol > 0.0 && cli.global.tol.is_finite()) {
        return Err(Failure::usage(format!("--tol must be positive, got {}", cli.global.tol)));
    }
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(&cli.global, &args.source),
        Command::Sweep(args) => cmd_sweep(&cli.global, args),
        Command::Plot(args) => cmd_plot(args),
        Command::Decompose { poly } => cmd_decompose(&cli.global, poly),
        Command::Oracle(args) => cmd_oracle(&cli.global, args),
    }
}

fn summarize(report: &AnalysisReport) -> String {
    let cert = report
        .verdicts
        .certificate
        .as_ref()
        .map_or("none".to_string(), |v| format!("{:?}", v.status));
    let oracles: Vec<String> = report
        .verdicts
        .oracle
        .iter()
        .map(|o| format!("{:?}={:?}", o.method, o.verdict))
        .collect();
    format!(
        "certificate: {cert}; oracles: {}; agreement: {}; disagreement: {}",
        oracles.join(", "),
        report.agreement,
        report.has_disagreement()
    )
}

fn cmd_analyze(global: &GlobalOpts, source: &Source) -> Result<Outcome, Failure> {
    let input = analysis_input(source)?;
    let opts = AnalyzeOptions {
        tol: global.tol,
        oracle: checked_oracle_config(global, OracleConfig::default())?,
        require_quartic: global.require_quartic,
        ..AnalyzeOptions::default()
    };
    let report = analyze(&input, &opts)?;
    emit_json(global, &report)?;
    eprintln!("{}", summarize(&report));
    Ok(Outcome::from_flag(report.has_disagreement()))
}

#[derive(Serialize)]
struct DecomposeReport<'a> {
    schema_version: &'static str,
    input: &'a str,
    exact: bool,
    decomposition: Decomposition,
    params: Option<FamilyParams>,
}

fn cmd_decompose(global: &GlobalOpts, text: &str) -> Result<Outcome, Failure> {
    let parsed = parse_poly(text).map_err(|e| Failure::from(AnalyzeError::from(e)))?;
    let decomposition =
        decompose_quartic(&parsed, global.tol).map_err(|e| Failure::from(AnalyzeError::from(e)))?;
    let params = decomposition
        .composite()
        .and_then(|d| univalence_core::decompose::family_params(d).ok());
    emit_json(
        global,
        &DecomposeReport {
            schema_version: SCHEMA_VERSION,
            input: text,
            exact: parsed.is_exact(),
            decomposition,
            params,
        },
    )?;
    Ok(Outcome::Agreement)
}

#[derive(Serialize)]
struct OracleOnlyReport {
    schema_version: &'static str,
    input: String,
    agreement: bool,
    oracle: Vec<OracleReport>,
}

fn cmd_oracle(global: &GlobalOpts, args: &OracleArgs) -> Result<Outcome, Failure> {
    let (input, poly) = match analysis_input(&args.source)? {
        AnalysisInput::Text(text) => {
            let parsed = parse_poly(&text).map_err(|e| Failure::from(AnalyzeError::from(e)))?;
            if global.require_quartic && parsed.degree() != 4 {
                return Err(AnalyzeError::NotQuartic(parsed.degree()).into());
            }
            (text, parsed.to_complex())
        }
        AnalysisInput::Family(params) => {
            let p = params.quartic();
            (p.to_string(), p)
        }
    };
    let cfg = checked_oracle_config(global, OracleConfig::default())?;
    let methods: Vec<_> = args.methods.iter().map(|&m| m.into()).collect();
    let reports = run_oracles(&poly, &cfg, &methods)?;
    let agreement = verdicts_agree(None, &reports);
    emit_json(
        global,
        &OracleOnlyReport {
            schema_version: SCHEMA_VERSION,
            input,
            agreement,
            oracle: reports,
        },
    )?;
    Ok(Outcome::from_flag(!agreement))
}

fn cmd_sweep(global: &GlobalOpts, args: &SweepArgs) -> Result<Outcome, Failure> {
    let grid = SweepGrid {
        a: args.a,
        c: args.c,
        step: args.step,
    };
    let opts = SweepOptions {
        with_oracle: global.with_oracle,
        oracle: checked_oracle_config(global, sweep_oracle_config())?,
    };
    let result = run_sweep(&grid, &opts).map_err(|e| match e {
        univalence_core::sweep::SweepError::InvalidGrid(_) | univalence_core::sweep::SweepError::Certify(_) => {
            usage_err(e)
        }
        univalence_core::sweep::SweepError::Oracle(o) => Failure::from(o),
    })?;

    let mut csv = Vec::new();
    result.write_csv(&mut csv).map_err(Failure::numerical)?;
    let csv = String::from_utf8(csv).context("CSV is UTF-8").map_err(Failure::numerical)?;
    write_output(args.out.as_deref(), &csv)?;
    if let Some(path) = &global.json_out {
        let mut text = serde_json::to_string_pretty(&result.cells).map_err(Failure::numerical)?;
        text.push('\n');
        fs::write(path, text).map_err(|e| Failure::io(e, path))?;
    }
    let conflicts = result.conflicts();
    eprintln!("{} cells, {conflicts} certificate/oracle conflicts", result.cells.len());
    Ok(Outcome::from_flag(conflicts > 0))
}

fn plot_poly(args: &PlotArgs) -> Result<Poly<num_complex::Complex64>, Failure> {
    if let Some(items) = &args.family {
        return Ok(parse_family(items).map_err(usage_err)?.quartic());
    }
    let text = args.poly.as_deref().unwrap_or(F4);
    Ok(parse_poly(text)
        .map_err(|e| Failure::from(AnalyzeError::from(e)))?
        .to_complex())
}

fn cmd_plot(args: &PlotArgs) -> Result<Outcome, Failure> {
    let kind: PlotKind = args.kind.parse().map_err(usage_err)?;
    let format: PlotFormat = args.format.parse().map_err(usage_err)?;
    let out = match kind {
        PlotKind::Roots => roots_plot(&plot_poly(args)?, format).map_err(Failure::numerical)?,
        PlotKind::BoundaryImage => {
            if !(args.radius > 0.0 && args.radius.is_finite()) {
                return Err(Failure::usage(format!("--radius must be positive, got {}", args.radius)));
            }
            if args.samples < 16 {
                return Err(Failure::usage("--samples must be at least 16"));
            }
            boundary_plot(&plot_poly(args)?, args.radius, args.samples, format)
        }
        PlotKind::Region => {
            if !(args.a.is_finite() && args.t.is_finite()) {
                return Err(Failure::usage("--a and --t must be finite"));
            }
            region_plot(args.a, args.t, format)
        }
    };
    write_output(args.out.as_deref(), &out)?;
    Ok(Outcome::Agreement)
}
