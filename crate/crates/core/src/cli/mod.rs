//! Scenarios, config files, sweeps and validation runs behind the `swipt-mpe` binary.
//!
//! Exit codes: 0 on success, 1 when a validation fails or an analytic value
//! cannot be computed, 2 for usage, config and I/O errors.

mod config;
mod scenario;
mod sweep;
mod validate;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{load_config, parse_config, Config};
pub use scenario::{default_thresholds, Scenario, ScenarioName, DEFAULT_TAU};
pub use sweep::{
    columns, evaluate_sweep, format_value, read_csv, render_csv, round_sig12, run_sweep, CsvTable,
    Metric, Spacing, SweepOutcome, SweepRow, SweepSpec, SweepVariable, CSV_LAYOUT,
};
pub use validate::{
    validate, validation_grid, write_report, Tamper, ValidationPoint, ValidationReport, AGREEMENT,
};

use crate::error::Error;
use crate::montecarlo::McSettings;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "swipt-mpe", version, about = "Exposure-constrained SWIPT coverage: analysis and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate metrics over a grid described by a config file and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Add Monte Carlo columns with this many trials.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare analytic and simulated probabilities over P_t in [0.5, 20] W.
    Validate {
        #[arg(long)]
        scenario: ScenarioName,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, hide = true, default_value_t = 0.0)]
        tamper: f64,
    },
    /// Show the built-in scenarios.
    Preset {
        #[arg(long)]
        list: bool,
        /// Print this preset as a config file.
        name: Option<ScenarioName>,
    },
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    match e {
        Error::Convergence { .. } | Error::ProbabilityExcursion { .. } => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn preset_text(s: &Scenario) -> String {
    let p = &s.params;
    let th = default_thresholds();
    format!(
        "[scenario]\npreset = {}\nlambda = {}\np_los = {}\nalpha = {}\nmu = {}\nd0 = {} m\np_t = {} W\n\
         omega = {} deg\nmain_gain = {} dBi\nside_gain = {} dBi\nn0 = {} dBW\nn_c = {} dBW\nrho = {}\n\
         [sweep]\ntau = {}\ngamma = {} dB\neps = {} dBW\n",
        s.name.as_str(),
        p.lambda,
        p.p_los,
        p.alpha,
        p.mu,
        p.d0,
        p.p_t,
        (p.antenna.omega.to_degrees() * 1e9).round() / 1e9,
        (10.0 * p.antenna.main.log10() * 1e9).round() / 1e9,
        (10.0 * p.antenna.side.log10() * 1e9).round() / 1e9,
        (10.0 * p.n0.log10() * 1e9).round() / 1e9,
        (10.0 * p.n_c.log10() * 1e9).round() / 1e9,
        p.rho,
        th.tau,
        (10.0 * th.gamma.log10() * 1e9).round() / 1e9,
        (10.0 * th.eps.log10() * 1e9).round() / 1e9,
    )
}

/// Runs one parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Sweep {
            config,
            out,
            trials,
            seed,
        } => {
            let mut cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            if trials.is_some() || seed.is_some() {
                let mc = cfg.sweep.mc.get_or_insert_with(McSettings::default);
                mc.trials = trials.unwrap_or(mc.trials);
                mc.seed = seed.unwrap_or(mc.seed);
                if let Err(e) = cfg.validate() {
                    return fail(&e);
                }
            }
            match run_sweep(&cfg.sweep, &cfg.scenario, &out) {
                Ok(o) if o.failures > 0 => {
                    eprintln!("error: {} analytic values did not converge (left empty)", o.failures);
                    EXIT_FAILED
                }
                Ok(_) => EXIT_OK,
                Err(e) => fail(&e),
            }
        }
        Command::Validate {
            scenario,
            trials,
            seed,
            out,
            tamper,
        } => {
            let mc = McSettings {
                trials,
                seed,
                ..McSettings::default()
            };
            let report = match validate(&Scenario::preset(scenario), &mc, Tamper(tamper)) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            if let Err(e) = write_report(&report, &out) {
                return fail(&e);
            }
            for (name, points) in &report.metrics {
                let bad = points.iter().filter(|p| !p.pass).count();
                println!("{name}: {}/{} points agree", points.len() - bad, points.len());
            }
            if report.pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::Preset { list, name } => {
            match name {
                Some(n) => print!("{}", preset_text(&Scenario::preset(n))),
                None if list => {
                    println!("mmwave  10 dBi main lobe, mu = 5, N0 = -117 dBW, p_los = 0.8");
                    println!("uhf     0 dBi main lobe, mu = 1, N0 = -127 dBW, p_los = 1");
                }
                None => {
                    eprintln!("error: give --list or a preset name");
                    return EXIT_USAGE;
                }
            }
            EXIT_OK
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}
