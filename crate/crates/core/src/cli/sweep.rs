//! Parameter sweeps written as CSV.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;

use super::scenario::Scenario;
use crate::analytic::{
    energy_coverage, info_coverage, joint_coverage, joint_with_mpe, mpe_prob, CoverageThresholds,
    QuadratureOptions,
};
use crate::error::{Error, Result};
use crate::model::NetworkParams;
use crate::montecarlo::{estimate, estimate_batch, Estimates, McSettings, ProbabilityEstimate};

/// Version of the CSV column layout; bumped whenever columns change.
pub const CSV_LAYOUT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    PT,
    Tau,
    PLos,
    Lambda,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::PT => "p_t",
            SweepVariable::Tau => "tau",
            SweepVariable::PLos => "p_los",
            SweepVariable::Lambda => "lambda",
        }
    }

    /// Parameters and thresholds with the swept quantity set to `x`.
    pub fn apply(
        self,
        x: f64,
        p: &NetworkParams,
        th: &CoverageThresholds,
    ) -> (NetworkParams, CoverageThresholds) {
        let (mut p, mut th) = (*p, *th);
        match self {
            SweepVariable::PT => p.p_t = x,
            SweepVariable::Tau => th.tau = x,
            SweepVariable::PLos => p.p_los = x,
            SweepVariable::Lambda => p.lambda = x,
        }
        (p, th)
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p_t" | "pt" => Ok(SweepVariable::PT),
            "tau" => Ok(SweepVariable::Tau),
            "p_los" | "p_l" => Ok(SweepVariable::PLos),
            "lambda" => Ok(SweepVariable::Lambda),
            other => Err(Error::range(
                "variable",
                format!("unknown sweep variable `{other}` (expected p_t, tau, p_los or lambda)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    /// P{MPE < τ}.
    Ps,
    /// P{SINR > γ}.
    Po,
    /// P{E > ε}.
    Pe,
    /// P{SINR > γ, E > ε}.
    Pj,
    /// P{MPE < τ}·P{SINR > γ, E > ε}; its Monte Carlo column is the exact joint event.
    JointMpe,
}

impl Metric {
    pub const ALL: [Metric; 5] = [Metric::Ps, Metric::Po, Metric::Pe, Metric::Pj, Metric::JointMpe];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Ps => "p_s",
            Metric::Po => "p_o",
            Metric::Pe => "p_e",
            Metric::Pj => "p_J",
            Metric::JointMpe => "joint_mpe",
        }
    }

    pub fn analytic(
        self,
        p: &NetworkParams,
        th: &CoverageThresholds,
        opts: &QuadratureOptions,
    ) -> Result<f64> {
        match self {
            Metric::Ps => mpe_prob(th.tau, p, opts),
            Metric::Po => info_coverage(th.gamma, p, opts),
            Metric::Pe => energy_coverage(th.eps, p, opts),
            Metric::Pj => joint_coverage(th, p, opts),
            Metric::JointMpe => joint_with_mpe(th, p, opts),
        }
    }

    pub fn simulated(self, e: &Estimates) -> ProbabilityEstimate {
        match self {
            Metric::Ps => e.mpe,
            Metric::Po => e.info,
            Metric::Pe => e.energy,
            Metric::Pj => e.joint,
            Metric::JointMpe => e.joint_with_mpe,
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::range(
                    "metrics",
                    format!("unknown metric `{s}` (expected p_s, p_o, p_e, p_J or joint_mpe)"),
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub spacing: Spacing,
    pub thresholds: CoverageThresholds,
    pub metrics: Vec<Metric>,
    pub mc: Option<McSettings>,
}

/// `x` rounded to the 12 significant digits the CSV stores.
pub fn round_sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

impl SweepSpec {
    pub fn validate(&self, p: &NetworkParams) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::range("steps", "need at least 2 grid points"));
        }
        if !(self.start < self.stop) {
            return Err(Error::range("start", "start must be below stop"));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0) {
            return Err(Error::range("start", "log spacing needs a positive start"));
        }
        if self.metrics.is_empty() {
            return Err(Error::range("metrics", "no metrics requested"));
        }
        for x in self.grid() {
            let (q, th) = self.variable.apply(x, p, &self.thresholds);
            q.validate().map_err(|e| match e {
                Error::Range { msg, .. } => Error::range(self.variable.as_str(), msg),
                other => other,
            })?;
            validate_thresholds(&th, &q)?;
        }
        Ok(())
    }

    /// Grid values, rounded so that they survive a trip through the CSV unchanged.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps.max(2);
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                let x = match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                };
                round_sig12(x)
            })
            .collect()
    }
}

/// Threshold validation with the saturation case reported against the `eps` key.
pub fn validate_thresholds(th: &CoverageThresholds, p: &NetworkParams) -> Result<()> {
    th.validate(&p.rectenna).map_err(|e| match e {
        Error::Saturation { eps, bound } => Error::range(
            "eps",
            format!("{eps} W must stay below the rectenna saturation a_bar - b_bar/c_bar = {bound:.4} W"),
        ),
        other => other,
    })
}

/// One evaluated grid point: analytic values and, when requested, simulation estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub analytic: Vec<Result<f64>>,
    pub mc: Option<Vec<ProbabilityEstimate>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Number of analytic cells that failed to evaluate.
    pub failures: usize,
}

pub fn evaluate_sweep(spec: &SweepSpec, scenario: &Scenario) -> Result<SweepOutcome> {
    let p = &scenario.params;
    spec.validate(p)?;
    let opts = QuadratureOptions::default();
    let grid = spec.grid();
    let analytic: Vec<Vec<Result<f64>>> = grid
        .par_iter()
        .map(|&x| {
            let (q, th) = spec.variable.apply(x, p, &spec.thresholds);
            spec.metrics.iter().map(|m| m.analytic(&q, &th, &opts)).collect()
        })
        .collect();

    let mc = match &spec.mc {
        None => None,
        Some(s) => {
            let estimates = match spec.variable {
                // snapshots do not depend on P_t or τ, so one batch serves the grid
                SweepVariable::PT | SweepVariable::Tau => {
                    let cases: Vec<_> = grid
                        .iter()
                        .map(|&x| {
                            let (q, th) = spec.variable.apply(x, p, &spec.thresholds);
                            (q.p_t, th)
                        })
                        .collect();
                    estimate_batch(p, &cases, s)?
                }
                SweepVariable::PLos | SweepVariable::Lambda => grid
                    .iter()
                    .map(|&x| {
                        let (q, th) = spec.variable.apply(x, p, &spec.thresholds);
                        estimate(&q, &th, s)
                    })
                    .collect::<Result<_>>()?,
            };
            Some(estimates)
        }
    };

    let failures = analytic.iter().flatten().filter(|v| v.is_err()).count();
    let rows = grid
        .into_iter()
        .enumerate()
        .zip(analytic)
        .map(|((i, x), analytic)| SweepRow {
            x,
            analytic,
            mc: mc
                .as_ref()
                .map(|e| spec.metrics.iter().map(|m| m.simulated(&e[i])).collect()),
        })
        .collect();
    Ok(SweepOutcome { rows, failures })
}

pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Column names of the CSV for a given spec.
pub fn columns(spec: &SweepSpec) -> Vec<String> {
    let mut cols = vec![spec.variable.as_str().to_string()];
    cols.extend(spec.metrics.iter().map(|m| m.as_str().to_string()));
    if spec.mc.is_some() {
        for m in &spec.metrics {
            cols.push(format!("{}_mc", m.as_str()));
            cols.push(format!("{}_ci", m.as_str()));
        }
    }
    cols
}

pub fn render_csv(spec: &SweepSpec, scenario: &Scenario, outcome: &SweepOutcome) -> String {
    let cols = columns(spec);
    let mut out = String::new();
    let _ = writeln!(out, "# swipt-mpe {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# scenario: {}", scenario.name.as_str());
    match &spec.mc {
        Some(s) => {
            let _ = writeln!(out, "# seed: {}", s.seed);
            let _ = writeln!(out, "# trials: {}", s.trials);
        }
        None => {
            let _ = writeln!(out, "# seed: none");
        }
    }
    let th = &spec.thresholds;
    let _ = writeln!(
        out,
        "# thresholds: tau={} gamma={} eps={}",
        format_value(th.tau),
        format_value(th.gamma),
        format_value(th.eps)
    );
    let _ = writeln!(out, "# columns v{CSV_LAYOUT}: {}", cols.join(","));
    let _ = writeln!(out, "{}", cols.join(","));
    for row in &outcome.rows {
        let mut cells = vec![format_value(row.x)];
        cells.extend(row.analytic.iter().map(|v| match v {
            Ok(v) => format_value(*v),
            Err(_) => String::new(),
        }));
        if let Some(mc) = &row.mc {
            for e in mc {
                cells.push(format_value(e.value));
                cells.push(format_value(e.ci_half_width));
            }
        }
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// Evaluates the sweep and writes it to `out`; returns the evaluated rows.
pub fn run_sweep(spec: &SweepSpec, scenario: &Scenario, out: &Path) -> Result<SweepOutcome> {
    let outcome = evaluate_sweep(spec, scenario)?;
    let text = render_csv(spec, scenario, &outcome);
    let mut file = std::fs::File::create(out)
        .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    file.write_all(text.as_bytes())
        .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    Ok(outcome)
}

/// A CSV file as written by [`run_sweep`]; empty cells read as `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

pub fn read_csv(text: &str) -> Result<CsvTable> {
    let mut comments = Vec::new();
    let mut columns = None;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if columns.is_none() {
            columns = Some(line.split(',').map(str::to_string).collect::<Vec<_>>());
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse().map(Some).map_err(|_| Error::Parse {
                        line: i + 1,
                        key: cell.to_string(),
                        msg: "not a number".into(),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(CsvTable {
        comments,
        columns: columns.unwrap_or_default(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SweepSpec {
        SweepSpec {
            steps: 4,
            ..SweepSpec::default()
        }
    }

    #[test]
    fn grid_shapes() {
        let s = spec();
        let g = s.grid();
        assert_eq!(g.len(), 4);
        assert_eq!((g[0], g[3]), (0.1, 20.0));
        let log = SweepSpec {
            spacing: Spacing::Log,
            start: 0.01,
            stop: 100.0,
            steps: 5,
            ..spec()
        };
        assert_eq!(log.grid(), vec![0.01, 0.1, 1.0, 10.0, 100.0]);
        for x in g {
            assert_eq!(x, format_value(x).parse::<f64>().unwrap());
        }
    }

    #[test]
    fn csv_layout() {
        let sc = Scenario::mmwave();
        let s = SweepSpec {
            steps: 2,
            metrics: vec![Metric::Ps, Metric::JointMpe],
            ..spec()
        };
        let outcome = evaluate_sweep(&s, &sc).unwrap();
        let text = render_csv(&s, &sc, &outcome);
        let table = read_csv(&text).unwrap();
        assert_eq!(table.columns, vec!["p_t", "p_s", "joint_mpe"]);
        assert_eq!(table.rows.len(), 2);
        assert!(table.comments.iter().any(|c| c == "scenario: mmwave"));
        assert!(table.comments.iter().any(|c| c == "columns v1: p_t,p_s,joint_mpe"));
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.as_str().parse::<Metric>().unwrap(), m);
        }
        for v in [SweepVariable::PT, SweepVariable::Tau, SweepVariable::PLos, SweepVariable::Lambda] {
            assert_eq!(v.as_str().parse::<SweepVariable>().unwrap(), v);
        }
    }

    #[test]
    fn out_of_range_grid_names_the_variable() {
        let s = SweepSpec {
            variable: SweepVariable::PLos,
            start: 0.5,
            stop: 1.5,
            ..spec()
        };
        let e = s.validate(&Scenario::mmwave().params).unwrap_err();
        assert!(matches!(e, Error::Range { ref key, .. } if key == "p_los"), "{e}");
    }
}
