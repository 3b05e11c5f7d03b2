//! CSV and JSON artifacts: field dumps, iteration history, radial profiles,
//! reports. All numeric CSV columns carry 12 significant digits.

use crate::config::RunConfig;
use crate::diagnostics::DiagnosticsReport;
use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};
use crate::radial::{eval_radial, RadialSolution};
use crate::solver::IterationHistory;
use serde::Serialize;
use std::fmt::Write as _;

/// 12 significant digits, scientific.
fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Field dump: `x,y,u`, row-major over nodes (y outer, x inner).
pub fn field_to_csv(u: &ScalarField) -> String {
    let g = &u.grid;
    let mut out = String::with_capacity(g.node_count() * 40);
    out.push_str("x,y,u\n");
    for j in 0..g.n {
        for i in 0..g.n {
            let _ = writeln!(
                out,
                "{},{},{}",
                fmt12(g.coord(i)),
                fmt12(g.coord(j)),
                fmt12(u.at(i, j))
            );
        }
    }
    out
}

/// Parse a field dump, reconstructing the grid from the coordinates.
pub fn field_from_csv(text: &str) -> Result<ScalarField> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "x,y,u" => {}
        other => {
            return Err(Error::FieldData(format!(
                "expected header `x,y,u`, got {other:?}"
            )))
        }
    }
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let mut next = |name: &str| -> Result<f64> {
            parts
                .next()
                .ok_or_else(|| Error::FieldData(format!("row {}: missing {name}", k + 2)))?
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::FieldData(format!("row {}: bad {name}", k + 2)))
        };
        rows.push((next("x")?, next("y")?, next("u")?));
    }
    let n2 = rows.len();
    let n = (n2 as f64).sqrt().round() as usize;
    if n * n != n2 || n < 3 {
        return Err(Error::FieldData(format!("{n2} rows do not form an n x n grid")));
    }
    let xs: Vec<f64> = rows[..n].iter().map(|r| r.0).collect();
    let spacing = xs[1] - xs[0];
    let half_width = xs[n - 1];
    if !(spacing > 0.0 && half_width > 0.0) {
        return Err(Error::FieldData("grid coordinates are not increasing".into()));
    }
    let grid = Grid { half_width, spacing, n };
    let mut values = vec![0.0; n2];
    for (k, (_, _, u)) in rows.into_iter().enumerate() {
        values[k] = u;
    }
    let f = ScalarField { grid, values };
    f.check_invariants()?;
    Ok(f)
}

/// History dump: `iter,energy,sup_change,contact_area,linear_iters`.
/// `sup_change` is the relative sup-norm change used by the stopping rule.
pub fn history_to_csv(history: &IterationHistory) -> String {
    let mut out = String::new();
    out.push_str("iter,energy,sup_change,contact_area,linear_iters\n");
    for r in &history.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.iter,
            fmt12(r.energy),
            fmt12(r.sup_change),
            fmt12(r.contact_area),
            r.linear_iters
        );
    }
    out
}

/// Radial profile: `r,u` over `samples` radii in [0, r_max].
pub fn radial_profile_to_csv(sol: &RadialSolution, r_max: f64, samples: usize) -> String {
    let mut out = String::new();
    out.push_str("r,u\n");
    for k in 0..=samples {
        let r = r_max * (k as f64) / (samples as f64);
        let _ = writeln!(out, "{},{}", fmt12(r), fmt12(eval_radial(sol, r)));
    }
    out
}

/// Paired profile of comparison solutions: `r,u_lower,u_upper`.
pub fn radial_bounds_to_csv(
    lower: &RadialSolution,
    upper: &RadialSolution,
    r_max: f64,
    samples: usize,
) -> String {
    let mut out = String::new();
    out.push_str("r,u_lower,u_upper\n");
    for k in 0..=samples {
        let r = r_max * (k as f64) / (samples as f64);
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt12(r),
            fmt12(eval_radial(lower, r)),
            fmt12(eval_radial(upper, r))
        );
    }
    out
}

/// Summary block of the run metadata.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub iterations: usize,
    pub stopped_early: bool,
    pub final_energy: f64,
    pub final_sup_change: f64,
    pub final_contact_area: f64,
    pub total_linear_iters: usize,
}

impl RunSummary {
    pub fn from_history(history: &IterationHistory) -> RunSummary {
        let last = history.records.last();
        RunSummary {
            iterations: history.records.len(),
            stopped_early: history.stopped_early,
            final_energy: last.map_or(0.0, |r| r.energy),
            final_sup_change: last.map_or(0.0, |r| r.sup_change),
            final_contact_area: last.map_or(0.0, |r| r.contact_area),
            total_linear_iters: history.records.iter().map(|r| r.linear_iters).sum(),
        }
    }
}

/// Run metadata: the resolved config, grid parameters, and the diagnostics
/// summary, as one JSON object.
#[derive(Debug, Clone, Serialize)]
pub struct RunMetadata<'a> {
    pub config: &'a RunConfig,
    pub grid: Grid,
    pub summary: RunSummary,
    pub report: &'a DiagnosticsReport,
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{radial_minimizer, RadialParams};

    #[test]
    fn field_roundtrip() {
        let g = Grid::new(1.0, 0.25).unwrap();
        let sol = radial_minimizer(&RadialParams::new(2, 9.0, 5.0, 0.9).unwrap()).unwrap();
        let u = ScalarField::from_radial(g, &sol);
        let csv = field_to_csv(&u);
        let back = field_from_csv(&csv).unwrap();
        assert_eq!(back.grid.n, g.n);
        assert!((back.grid.spacing - g.spacing).abs() < 1e-12);
        for (a, b) in u.values.iter().zip(back.values.iter()) {
            assert!((a - b).abs() <= 1e-11 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn csv_has_twelve_significant_digits() {
        assert_eq!(fmt12(std::f64::consts::PI), "3.14159265359e0");
        let g = Grid::new(1.0, 0.5).unwrap();
        let u = ScalarField::zeros(g);
        let csv = field_to_csv(&u);
        assert!(csv.starts_with("x,y,u\n"));
        assert_eq!(csv.lines().count(), 1 + g.node_count());
    }

    #[test]
    fn malformed_field_csv_is_rejected() {
        assert!(field_from_csv("nope\n1,2,3\n").is_err());
        assert!(field_from_csv("x,y,u\n1,2\n").is_err());
        assert!(field_from_csv("x,y,u\n0,0,0.5\n0,1,0\n").is_err());
    }
}
