//! Certificate (and optionally oracle) verdicts over an `(a, C)` grid for
//! the monic family `q(t) = t^2 + C t`.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::certify::{certify_family, CertifyError, FamilyParams, Relation, Status};
use crate::oracle::{collision_scan, OracleConfig, OracleError, OracleVerdict};

pub const CSV_HEADER: &str =
    "a,C,certificate_status,region_relation,remark_verdict,oracle_verdict,disagreement,conflict";

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepGrid {
    pub a: (f64, f64),
    pub c: (f64, f64),
    pub step: f64,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub with_oracle: bool,
    pub oracle: OracleConfig,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            with_oracle: false,
            oracle: sweep_oracle_config(),
        }
    }
}

/// Collision-scan resolution used per sweep cell: a quarter of the
/// single-instance default, relying on the descent step for collisions
/// that sit between sampled rings.
pub fn sweep_oracle_config() -> OracleConfig {
    OracleConfig {
        radial_steps: 50,
        angular_steps: 100,
        ..OracleConfig::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub a: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub certificate_status: Status,
    pub region_relation: Relation,
    pub remark_verdict: bool,
    pub oracle_verdict: Option<OracleVerdict>,
    pub disagreement: bool,
    /// A conclusive certificate contradicts a conclusive oracle.
    pub conflict: bool,
}

/// Decimal places needed to print every grid value exactly.
fn decimals_for(values: &[f64]) -> usize {
    (0..=12)
        .find(|&d| {
            let scale = 10f64.powi(d as i32);
            values
                .iter()
                .all(|v| ((v * scale).round() - v * scale).abs() < 1e-6)
        })
        .unwrap_or(12)
}

/// Grid points `min, min + step, ...` up to `max`, rounded to the step's
/// decimal precision so printed and computed values coincide.
pub fn axis_values(min: f64, max: f64, step: f64) -> Result<(Vec<f64>, usize), SweepError> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) {
        return Err(SweepError::InvalidGrid("non-finite bound or step".into()));
    }
    if !(step > 0.0) || min > max {
        return Err(SweepError::InvalidGrid(format!(
            "need step > 0 and min <= max (got {min}..{max} step {step})"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(SweepError::InvalidGrid(format!("{count} points per axis")));
    }
    let decimals = decimals_for(&[min, step]);
    let values = (0..count)
        .map(|i| {
            let v = min + i as f64 * step;
            format!("{v:.decimals$}").parse().expect("formatted float")
        })
        .collect();
    Ok((values, decimals))
}

pub fn sweep_cell(a: f64, c: f64, opts: &SweepOptions) -> Result<SweepCell, SweepError> {
    let params = FamilyParams::monic(a, c)?;
    let mut verdict = certify_family(&params)?;
    let oracle_verdict = if opts.with_oracle {
        Some(collision_scan(&params.quartic(), &opts.oracle)?.verdict)
    } else {
        None
    };
    let mut conflict = false;
    if let Some(o) = oracle_verdict {
        verdict.note_oracle(o);
        if let (Some(cert), Some(orc)) = (verdict.region_verdict, o.supports_univalence()) {
            conflict = cert != orc;
        }
    }
    Ok(SweepCell {
        a,
        c,
        certificate_status: verdict.status,
        region_relation: verdict.region.relation,
        remark_verdict: verdict.remark_verdict,
        oracle_verdict,
        disagreement: verdict.disagreement,
        conflict,
    })
}

pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    pub a_decimals: usize,
    pub c_decimals: usize,
}

/// Row-major over `a`, then `C`.
pub fn run_sweep(grid: &SweepGrid, opts: &SweepOptions) -> Result<SweepResult, SweepError> {
    let (a_values, a_decimals) = axis_values(grid.a.0, grid.a.1, grid.step)?;
    let (c_values, c_decimals) = axis_values(grid.c.0, grid.c.1, grid.step)?;
    let mut cells = Vec::with_capacity(a_values.len() * c_values.len());
    for &a in &a_values {
        for &c in &c_values {
            cells.push(sweep_cell(a, c, opts)?);
        }
    }
    Ok(SweepResult {
        cells,
        a_decimals,
        c_decimals,
    })
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        let (da, dc) = (self.a_decimals, self.c_decimals);
        for cell in &self.cells {
            let oracle = cell
                .oracle_verdict
                .map_or_else(|| "NotRun".to_string(), |v| format!("{v:?}"));
            writeln!(
                out,
                "{:.da$},{:.dc$},{:?},{:?},{},{},{},{}",
                cell.a,
                cell.c,
                cell.certificate_status,
                cell.region_relation,
                cell.remark_verdict,
                oracle,
                cell.disagreement,
                cell.conflict
            )?;
        }
        Ok(())
    }

    pub fn conflicts(&self) -> usize {
        self.cells.iter().filter(|c| c.conflict).count()
    }
}
