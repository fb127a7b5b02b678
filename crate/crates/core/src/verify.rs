//! Recompute reference tables and compare at printed precision.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::kernel::PhotonFrequency;
use crate::observables::Evaluator;
use crate::tables::{parse_value, printed_resolution, reference_table, Quantity, TableId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ToleranceMode {
    /// Accept `|computed - printed| <= units * (last printed digit)`.
    Printed { units: f64 },
    /// Accept `|computed - printed| <= rel * max(|printed|, last printed digit)`.
    Relative { rel: f64 },
}

impl Default for ToleranceMode {
    fn default() -> Self {
        ToleranceMode::Printed { units: 1.5 }
    }
}

impl ToleranceMode {
    pub fn tolerance(&self, printed: &str) -> f64 {
        let res = printed_resolution(printed);
        match *self {
            ToleranceMode::Printed { units } => units * res,
            ToleranceMode::Relative { rel } => rel * parse_value(printed).abs().max(res),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    Re,
    Im,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCheck {
    pub omega: f64,
    pub component: Component,
    pub printed: String,
    pub computed: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Comparison-column entry, informational only.
    pub external: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowFailure {
    pub omega: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub table: TableId,
    pub cells: Vec<CellCheck>,
    pub errors: Vec<RowFailure>,
    pub skipped: Vec<(String, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.cells.iter().all(|c| c.pass)
    }

    pub fn failing_cells(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

fn check(omega: f64, component: Component, printed: &str, computed: f64, mode: ToleranceMode, external: Option<&str>) -> CellCheck {
    let delta = computed - parse_value(printed);
    let tolerance = mode.tolerance(printed);
    CellCheck {
        omega,
        component,
        printed: printed.to_owned(),
        computed,
        delta,
        tolerance,
        pass: delta.abs() <= tolerance,
        external: external.map(str::to_owned),
    }
}

/// Recompute every active row of `table`. Rows are evaluated in parallel and
/// reported in table order.
pub fn verify_table(evaluator: &Evaluator, table: TableId, mode: ToleranceMode) -> VerifyReport {
    let t = reference_table(table);
    let results: Vec<Result<Vec<CellCheck>, RowFailure>> = t
        .active_rows()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|row| {
            let omega = parse_value(row.omega);
            let value = PhotonFrequency::new(omega)
                .and_then(|w| match t.quantity {
                    Quantity::Tau2 => evaluator.tau2(w),
                    Quantity::KHMatrix => evaluator.kh_matrix(w),
                })
                .map_err(|e: Error| RowFailure {
                    omega,
                    message: e.to_string(),
                })?
                .value;
            let mut cells = vec![check(omega, Component::Re, row.re, value.re, mode, row.external_re)];
            if let Some(im) = row.im {
                cells.push(check(omega, Component::Im, im, value.im, mode, row.external_im));
            }
            Ok(cells)
        })
        .collect();
    let mut cells = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(c) => cells.extend(c),
            Err(e) => errors.push(e),
        }
    }
    let skipped = t
        .rows
        .iter()
        .filter_map(|r| r.skip.map(|why| (r.omega.to_owned(), why.to_owned())))
        .collect();
    VerifyReport {
        table,
        cells,
        errors,
        skipped,
    }
}
