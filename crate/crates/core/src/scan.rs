//! Frequency scans: one [`ScanRecord`] per grid point, evaluated in parallel
//! and returned in ascending `omega`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::continuation::ContinuationReport;
use crate::error::{Error, Result};
use crate::kernel::PhotonFrequency;
use crate::observables::Evaluator;

/// Column order of the CSV export.
pub const CSV_HEADER: [&str; 8] = [
    "omega",
    "tau_re",
    "tau_im",
    "m_re",
    "m_im",
    "m_abs2",
    "near_resonance",
    "continuation_depth",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub omega: f64,
    pub tau_re: Option<f64>,
    pub tau_im: Option<f64>,
    pub m_re: Option<f64>,
    pub m_im: Option<f64>,
    pub m_abs2: Option<f64>,
    pub near_resonance: bool,
    pub continuation_depth: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservableSet {
    pub tau2: bool,
    pub kh: bool,
}

impl ObservableSet {
    pub const ALL: Self = Self { tau2: true, kh: true };
    pub const TAU2: Self = Self { tau2: true, kh: false };
    pub const KH: Self = Self { tau2: false, kh: true };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScanOptions {
    pub spacing: Spacing,
    /// Drop points whose resonance denominator falls inside the warning band.
    pub skip_resonances: bool,
}

/// Evaluate one point, failing on any domain or numerical error.
pub fn eval_point(evaluator: &Evaluator, omega: f64, which: ObservableSet) -> Result<ScanRecord> {
    let w = PhotonFrequency::new(omega)?;
    let mut report = ContinuationReport::trivial();
    let mut rec = ScanRecord {
        omega,
        tau_re: None,
        tau_im: None,
        m_re: None,
        m_im: None,
        m_abs2: None,
        near_resonance: false,
        continuation_depth: 0,
        error: None,
    };
    if which.tau2 {
        let r = evaluator.tau2(w)?;
        rec.tau_re = Some(r.value.re);
        rec.tau_im = Some(r.value.im);
        report = report.merge(r.report);
    }
    if which.kh {
        let r = evaluator.kh_matrix(w)?;
        rec.m_re = Some(r.value.re);
        rec.m_im = Some(r.value.im);
        rec.m_abs2 = Some(r.value.re * r.value.re + r.value.im * r.value.im);
        report = report.merge(r.report);
    }
    rec.near_resonance = report.near_resonance;
    rec.continuation_depth = report.depth;
    Ok(rec)
}

/// Like [`eval_point`], but a failure is recorded in the row.
pub fn eval_record(evaluator: &Evaluator, omega: f64, which: ObservableSet) -> ScanRecord {
    eval_point(evaluator, omega, which).unwrap_or_else(|e| ScanRecord {
        omega,
        tau_re: None,
        tau_im: None,
        m_re: None,
        m_im: None,
        m_abs2: None,
        near_resonance: matches!(e, Error::ResonancePole { .. }),
        continuation_depth: 0,
        error: Some(e.to_string()),
    })
}

/// `steps` points from `start` to `end` inclusive.
pub fn frequency_grid(start: f64, end: f64, steps: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !(start > 0.0 && end > start && start.is_finite() && end.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "scan range must satisfy 0 < start < end, got [{start}, {end}]"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("steps must be at least 2, got {steps}")));
    }
    let last = (steps - 1) as f64;
    let grid = (0..steps)
        .map(|i| {
            if i == steps - 1 {
                return end;
            }
            let t = i as f64 / last;
            match spacing {
                Spacing::Linear => start + (end - start) * t,
                Spacing::Log => (start.ln() + (end.ln() - start.ln()) * t).exp(),
            }
        })
        .collect();
    Ok(grid)
}

/// Distance, in units of `1/lambda`, to the nearest integer `n >= 2`; this is
/// the smallest recurrence denominator the plain sector can meet at `omega`.
pub fn resonance_denominator(omega: f64) -> Option<f64> {
    if !(omega > 0.0 && omega < 0.5) {
        return None;
    }
    let inv = 1.0 / (1.0 - 2.0 * omega).sqrt();
    Some((inv - inv.round().max(2.0)).abs())
}

pub fn scan(evaluator: &Evaluator, grid: &[f64], which: ObservableSet, opts: ScanOptions) -> Vec<ScanRecord> {
    let band = evaluator.config().continuation.warn_band;
    let points: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|&w| !opts.skip_resonances || resonance_denominator(w).is_none_or(|d| d >= band))
        .collect();
    points.par_iter().map(|&w| eval_record(evaluator, w, which)).collect()
}
