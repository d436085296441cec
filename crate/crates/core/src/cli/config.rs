//! Flat `key = value` config files with `[scenario]`, `[sweep]` and `[mc]` sections.
//!
//! Powers accept `W`, `mW`, `dBW`, `dBm` or a bare `dB` (read as dBW); gains and
//! the SINR threshold accept `dB`/`dBi` or a bare linear ratio; `omega` accepts
//! `deg` or `rad`. A value without a suffix is linear.

use std::f64::consts::PI;
use std::path::Path;

use super::scenario::{db, default_thresholds, Scenario, ScenarioName};
use super::sweep::{Metric, Spacing, SweepSpec, SweepVariable};
use crate::error::{Error, Result};
use crate::montecarlo::McSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Scenario,
    Sweep,
    Mc,
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    /// Watts.
    Power,
    /// Linear ratio, or dB.
    Ratio,
    /// Radians, or degrees.
    Angle,
    /// Number with an optional fixed unit label.
    Plain(&'static str),
}

fn parse_number(line: usize, key: &str, s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse {
        line,
        key: key.to_string(),
        msg: format!("`{s}` is not a number"),
    })
}

/// Splits `"−117 dBm"` into the number and its lower-cased suffix.
fn split_unit(raw: &str) -> (&str, String) {
    let raw = raw.trim();
    let cut = raw
        .char_indices()
        .find(|&(i, c)| c.is_ascii_alphabetic() && !is_exponent(raw, i))
        .map_or(raw.len(), |(i, _)| i);
    (raw[..cut].trim(), raw[cut..].trim().to_ascii_lowercase())
}

// `e` in `1e-3` belongs to the number
fn is_exponent(s: &str, i: usize) -> bool {
    let b = s.as_bytes();
    matches!(b[i], b'e' | b'E')
        && i > 0
        && (b[i - 1].is_ascii_digit() || b[i - 1] == b'.')
        && b.get(i + 1).is_some_and(|c| c.is_ascii_digit() || *c == b'-' || *c == b'+')
}

fn parse_value(line: usize, key: &str, raw: &str, kind: Kind) -> Result<f64> {
    let (num, unit) = split_unit(raw);
    let x = parse_number(line, key, num)?;
    let bad_unit = || Error::Parse {
        line,
        key: key.to_string(),
        msg: format!("unit `{unit}` not accepted here"),
    };
    Ok(match (kind, unit.as_str()) {
        (Kind::Power, "" | "w") => x,
        (Kind::Power, "mw") => x * 1e-3,
        (Kind::Power, "db" | "dbw") => db(x),
        (Kind::Power, "dbm") => db(x - 30.0),
        (Kind::Ratio, "") => x,
        (Kind::Ratio, "db" | "dbi") => db(x),
        (Kind::Angle, "" | "rad") => x,
        (Kind::Angle, "deg") => x * PI / 180.0,
        (Kind::Plain(_), "") => x,
        (Kind::Plain(label), u) if u == label => x,
        _ => return Err(bad_unit()),
    })
}

fn parse_bool(line: usize, key: &str, raw: &str) -> Result<bool> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(Error::Parse {
            line,
            key: key.to_string(),
            msg: format!("`{other}` is not a boolean"),
        }),
    }
}

fn parse_integer(line: usize, key: &str, raw: &str) -> Result<u64> {
    let raw = raw.trim().replace('_', "");
    raw.parse::<u64>().map_err(|_| Error::Parse {
        line,
        key: key.to_string(),
        msg: format!("`{raw}` is not a non-negative integer"),
    })
}

struct Entry {
    line: usize,
    section: Section,
    key: String,
    value: String,
}

fn tokenize(text: &str) -> Result<Vec<Entry>> {
    let mut section = None;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = Some(match name.trim() {
                "scenario" => Section::Scenario,
                "sweep" => Section::Sweep,
                "mc" => Section::Mc,
                other => {
                    return Err(Error::Parse {
                        line,
                        key: format!("[{other}]"),
                        msg: "unknown section (expected scenario, sweep or mc)".into(),
                    })
                }
            });
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                line,
                key: content.to_string(),
                msg: "expected `key = value`".into(),
            });
        };
        let key = key.trim().to_string();
        let Some(section) = section else {
            return Err(Error::Parse {
                line,
                key,
                msg: "entry before any [section] header".into(),
            });
        };
        out.push(Entry {
            line,
            section,
            key,
            value: value.trim().to_string(),
        });
    }
    Ok(out)
}

/// A parsed config file.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub scenario: Scenario,
    pub sweep: SweepSpec,
}

pub fn load_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Config> {
    let entries = tokenize(text)?;

    // the preset goes first so that the remaining keys override it
    let mut name = ScenarioName::Custom;
    let mut preset_seen = false;
    for e in entries.iter().filter(|e| e.section == Section::Scenario && e.key == "preset") {
        if preset_seen {
            return Err(Error::Parse {
                line: e.line,
                key: e.key.clone(),
                msg: "preset given twice".into(),
            });
        }
        preset_seen = true;
        name = e.value.parse().map_err(|err: Error| Error::Parse {
            line: e.line,
            key: e.key.clone(),
            msg: err.to_string(),
        })?;
    }
    let mut scenario = Scenario::preset(name);
    let mut sweep = SweepSpec::default();
    let mut mc: Option<McSettings> = None;
    let mut seen = std::collections::HashSet::new();
    let mut bounds = Vec::new();

    for e in &entries {
        let (line, key, raw) = (e.line, e.key.as_str(), e.value.as_str());
        if !seen.insert((e.section as u8, key.to_string())) {
            return Err(Error::Parse {
                line,
                key: key.to_string(),
                msg: "key given twice".into(),
            });
        }
        let p = &mut scenario.params;
        let num = |kind| parse_value(line, key, raw, kind);
        match (e.section, key) {
            (Section::Scenario, "preset") => {}
            (Section::Scenario, "lambda") => p.lambda = num(Kind::Plain(""))?,
            (Section::Scenario, "p_los") => p.p_los = num(Kind::Plain(""))?,
            (Section::Scenario, "alpha") => p.alpha = num(Kind::Plain(""))?,
            (Section::Scenario, "mu") => {
                p.mu = u32::try_from(parse_integer(line, key, raw)?).map_err(|_| Error::Parse {
                    line,
                    key: key.to_string(),
                    msg: "too large".into(),
                })?
            }
            (Section::Scenario, "d0") => p.d0 = num(Kind::Plain("m"))?,
            (Section::Scenario, "p_t") => p.p_t = num(Kind::Power)?,
            (Section::Scenario, "omega") => p.antenna.omega = num(Kind::Angle)?,
            (Section::Scenario, "main_gain") => p.antenna.main = num(Kind::Ratio)?,
            (Section::Scenario, "side_gain") => p.antenna.side = num(Kind::Ratio)?,
            (Section::Scenario, "n0") => p.n0 = num(Kind::Power)?,
            (Section::Scenario, "n_c") => p.n_c = num(Kind::Power)?,
            (Section::Scenario, "rho") => p.rho = num(Kind::Plain(""))?,
            (Section::Scenario, "a_bar") => p.rectenna.a_bar = num(Kind::Plain(""))?,
            (Section::Scenario, "b_bar") => p.rectenna.b_bar = num(Kind::Plain(""))?,
            (Section::Scenario, "c_bar") => p.rectenna.c_bar = num(Kind::Plain(""))?,

            (Section::Sweep, "variable") => {
                sweep.variable = raw.parse().map_err(|err: Error| Error::Parse {
                    line,
                    key: key.to_string(),
                    msg: err.to_string(),
                })?
            }
            // units depend on the variable, which may come later
            (Section::Sweep, "start" | "stop") => bounds.push(e),
            (Section::Sweep, "steps") => sweep.steps = parse_integer(line, key, raw)? as usize,
            (Section::Sweep, "spacing") => {
                sweep.spacing = match raw.to_ascii_lowercase().as_str() {
                    "linear" => Spacing::Linear,
                    "log" => Spacing::Log,
                    other => {
                        return Err(Error::Parse {
                            line,
                            key: key.to_string(),
                            msg: format!("`{other}` is not linear or log"),
                        })
                    }
                }
            }
            (Section::Sweep, "tau") => sweep.thresholds.tau = num(Kind::Plain("w/m2"))?,
            (Section::Sweep, "gamma") => sweep.thresholds.gamma = num(Kind::Ratio)?,
            (Section::Sweep, "eps") => sweep.thresholds.eps = num(Kind::Power)?,
            (Section::Sweep, "metrics") => {
                sweep.metrics = raw
                    .split(',')
                    .map(|m| m.trim().parse::<Metric>())
                    .collect::<Result<_>>()
                    .map_err(|err| Error::Parse {
                        line,
                        key: key.to_string(),
                        msg: err.to_string(),
                    })?
            }

            (Section::Mc, k) => {
                let s = mc.get_or_insert_with(McSettings::default);
                match k {
                    "trials" => s.trials = parse_integer(line, key, raw)?,
                    "seed" => s.seed = parse_integer(line, key, raw)?,
                    "disk_radius" => s.disk_radius = num(Kind::Plain("m"))?,
                    "exact_radius" => s.exact_radius = num(Kind::Plain("m"))?,
                    "parallel" => s.parallel = parse_bool(line, key, raw)?,
                    _ => return Err(unknown(line, key, e.section)),
                }
            }
            _ => return Err(unknown(line, key, e.section)),
        }
    }
    for e in bounds {
        let x = parse_value(e.line, &e.key, &e.value, sweep.variable.kind())?;
        if e.key == "start" {
            sweep.start = x;
        } else {
            sweep.stop = x;
        }
    }
    sweep.mc = mc;
    let config = Config { scenario, sweep };
    config.validate()?;
    Ok(config)
}

fn unknown(line: usize, key: &str, section: Section) -> Error {
    let name = match section {
        Section::Scenario => "scenario",
        Section::Sweep => "sweep",
        Section::Mc => "mc",
    };
    Error::Parse {
        line,
        key: key.to_string(),
        msg: format!("unknown key in [{name}]"),
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let p = &self.scenario.params;
        p.validate()?;
        self.sweep.validate(p)?;
        if let Some(mc) = &self.sweep.mc {
            mc.validate(p)?;
        }
        Ok(())
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            variable: SweepVariable::PT,
            start: 0.1,
            stop: 20.0,
            steps: 50,
            spacing: Spacing::Linear,
            thresholds: default_thresholds(),
            metrics: vec![Metric::Ps, Metric::Po, Metric::Pe, Metric::Pj],
            mc: None,
        }
    }
}

impl SweepVariable {
    fn kind(self) -> Kind {
        match self {
            SweepVariable::PT => Kind::Power,
            SweepVariable::Tau => Kind::Plain("w/m2"),
            SweepVariable::PLos => Kind::Plain(""),
            SweepVariable::Lambda => Kind::Plain(""),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn units() {
        let v = |raw, kind| parse_value(1, "k", raw, kind).unwrap();
        assert_relative_eq!(v("-117 dB", Kind::Power), 10f64.powf(-11.7), max_relative = 1e-14);
        assert_relative_eq!(v("-117dBW", Kind::Power), 10f64.powf(-11.7), max_relative = 1e-14);
        assert_relative_eq!(v("-117 dBm", Kind::Power), 10f64.powf(-14.7), max_relative = 1e-14);
        assert_relative_eq!(v("30 dBm", Kind::Power), 1.0, max_relative = 1e-14);
        assert_eq!(v("2.5", Kind::Power), 2.5);
        assert_eq!(v("2.5 W", Kind::Power), 2.5);
        assert_eq!(v("1e-3", Kind::Power), 1e-3);
        assert_eq!(v("1E+2 W", Kind::Power), 100.0);
        assert_relative_eq!(v("250 mW", Kind::Power), 0.25);
        assert_relative_eq!(v("10 dBi", Kind::Ratio), 10.0, max_relative = 1e-15);
        assert_relative_eq!(v("-10 dB", Kind::Ratio), 0.1, max_relative = 1e-15);
        assert_relative_eq!(v("30 deg", Kind::Angle), PI / 6.0, max_relative = 1e-15);
        assert_eq!(v("5 m", Kind::Plain("m")), 5.0);
        assert!(parse_value(1, "k", "5 dBm", Kind::Ratio).is_err());
        assert!(parse_value(1, "k", "five", Kind::Power).is_err());
    }

    #[test]
    fn minimal_preset_config() {
        let c = parse_config("[scenario]\npreset = mmwave\n").unwrap();
        assert_eq!(c.scenario, Scenario::mmwave());
        let c = parse_config("[scenario]\npreset = uhf\n").unwrap();
        assert_eq!(c.scenario, Scenario::uhf());
        assert!(c.sweep.mc.is_none());
    }

    #[test]
    fn overrides_and_sections() {
        let text = "\
# comment
[scenario]
alpha = 4     # inline comment
preset = uhf
n0 = -100 dBm
[sweep]
start = 1
variable = tau
stop = 2
steps = 3
metrics = p_s, joint_mpe
[mc]
trials = 1_000
";
        let c = parse_config(text).unwrap();
        assert_eq!(c.scenario.name, ScenarioName::Uhf);
        assert_eq!(c.scenario.params.alpha, 4.0);
        assert_relative_eq!(c.scenario.params.n0, 1e-13, max_relative = 1e-12);
        assert_eq!(c.sweep.variable, SweepVariable::Tau);
        assert_eq!((c.sweep.start, c.sweep.stop, c.sweep.steps), (1.0, 2.0, 3));
        assert_eq!(c.sweep.metrics, vec![Metric::Ps, Metric::JointMpe]);
        assert_eq!(c.sweep.mc.unwrap().trials, 1000);
    }

    #[test]
    fn errors_name_line_and_key() {
        let e = parse_config("[scenario]\npreset = mmwave\nalpha = abc\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, ref key, .. } if key == "alpha"), "{e}");
        let e = parse_config("[scenario]\nbeta = 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, ref key, .. } if key == "beta"));
        let e = parse_config("alpha = 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_config("[plot]\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_config("[scenario]\nalpha 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_config("[scenario]\nalpha = 3\nalpha = 4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn range_errors_name_the_key() {
        let e = parse_config("[scenario]\nalpha = 1.9\n").unwrap_err();
        assert_eq!(e.to_string(), "alpha: alpha must exceed 2");
        let e = parse_config("[sweep]\neps = 0.5\n").unwrap_err();
        let msg = e.to_string();
        assert!(matches!(e, Error::Range { ref key, .. } if key == "eps"), "{msg}");
        assert!(msg.contains("0.4836"), "{msg}");
        let e = parse_config("[sweep]\nsteps = 1\n").unwrap_err();
        assert!(matches!(e, Error::Range { ref key, .. } if key == "steps"));
    }
}
