//! Analytic-versus-simulation validation reports.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::scenario::{default_thresholds, Scenario};
use super::sweep::{round_sig12, Metric};
use crate::analytic::{CoverageThresholds, QuadratureOptions};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_batch, McSettings};

/// Agreement radius in Wilson half-widths.
pub const AGREEMENT: f64 = 3.0;

/// The metrics a validation run compares.
pub const VALIDATED: [Metric; 4] = [Metric::Ps, Metric::Po, Metric::Pe, Metric::Pj];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationPoint {
    pub x: f64,
    /// `None` when the analytic value could not be computed.
    pub analytic: Option<f64>,
    pub mc: f64,
    pub ci: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub scenario: String,
    pub variable: &'static str,
    pub trials: u64,
    pub seed: u64,
    pub thresholds: CoverageThresholds,
    pub metrics: BTreeMap<&'static str, Vec<ValidationPoint>>,
    pub pass: bool,
}

/// Ten log-spaced transmit powers from 0.5 W to 20 W.
pub fn validation_grid() -> Vec<f64> {
    (0..10)
        .map(|i| round_sig12(0.5 * 40f64.powf(i as f64 / 9.0)))
        .collect()
}

/// Test hook: shift one analytic value so the failure path can be exercised.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tamper(pub f64);

pub fn validate(scenario: &Scenario, mc: &McSettings, tamper: Tamper) -> Result<ValidationReport> {
    let p = &scenario.params;
    p.validate()?;
    let th = default_thresholds();
    let grid = validation_grid();
    let cases: Vec<_> = grid.iter().map(|&x| (x, th)).collect();
    let estimates = estimate_batch(p, &cases, mc)?;
    let opts = QuadratureOptions::default();

    let mut metrics = BTreeMap::new();
    for m in VALIDATED {
        let mut points: Vec<ValidationPoint> = grid
            .par_iter()
            .zip(&estimates)
            .map(|(&x, e)| {
                let q = crate::model::NetworkParams { p_t: x, ..*p };
                let analytic = m.analytic(&q, &th, &opts).ok();
                let sim = m.simulated(e);
                ValidationPoint {
                    x,
                    analytic,
                    mc: sim.value,
                    ci: sim.ci_half_width,
                    pass: false,
                }
            })
            .collect();
        if m == Metric::Ps && tamper.0 != 0.0 {
            if let Some(a) = points[0].analytic.as_mut() {
                *a += tamper.0;
            }
        }
        for pt in &mut points {
            pt.pass = pt
                .analytic
                .is_some_and(|a| (a - pt.mc).abs() <= AGREEMENT * pt.ci);
        }
        metrics.insert(m.as_str(), points);
    }
    let pass = metrics.values().flatten().all(|pt| pt.pass);
    Ok(ValidationReport {
        scenario: scenario.name.as_str().to_string(),
        variable: "p_t",
        trials: mc.trials,
        seed: mc.seed,
        thresholds: th,
        metrics,
        pass,
    })
}

pub fn write_report(report: &ValidationReport, out: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(out, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", out.display())))
}
