//! Named parameter sets.

use std::f64::consts::PI;

use serde::Serialize;

use crate::analytic::CoverageThresholds;
use crate::error::{Error, Result};
use crate::model::{AntennaPattern, NetworkParams, RectennaModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioName {
    Mmwave,
    Uhf,
    Custom,
}

impl ScenarioName {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Mmwave => "mmwave",
            ScenarioName::Uhf => "uhf",
            ScenarioName::Custom => "custom",
        }
    }
}

impl std::str::FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mmwave" => Ok(ScenarioName::Mmwave),
            "uhf" => Ok(ScenarioName::Uhf),
            "custom" => Ok(ScenarioName::Custom),
            other => Err(Error::range(
                "scenario",
                format!("unknown scenario `{other}` (expected mmwave, uhf or custom)"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: ScenarioName,
    pub params: NetworkParams,
}

pub(crate) fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

/// Exposure limit used when a scenario does not set one (W/m²).
pub const DEFAULT_TAU: f64 = 0.2;

/// γ = −10 dB, ε = −5 dBW and the default exposure limit.
pub fn default_thresholds() -> CoverageThresholds {
    CoverageThresholds {
        tau: DEFAULT_TAU,
        gamma: db(-10.0),
        eps: db(-5.0),
    }
}

fn shared(main_db: f64, mu: u32, n0_db: f64, p_los: f64) -> NetworkParams {
    NetworkParams {
        lambda: 0.1,
        p_los,
        alpha: 3.0,
        mu,
        d0: 5.0,
        p_t: 10.0,
        antenna: AntennaPattern {
            omega: PI / 6.0,
            main: db(main_db),
            side: db(-10.0),
        },
        n0: db(n0_db),
        n_c: db(0.0),
        rho: 0.5,
        rectenna: RectennaModel::default(),
    }
}

impl Scenario {
    /// 28 GHz style network: 10 dBi main lobe, μ = 5, N₀ = −117 dBW, p_L = 0.8.
    pub fn mmwave() -> Scenario {
        Scenario {
            name: ScenarioName::Mmwave,
            params: shared(10.0, 5, -117.0, 0.8),
        }
    }

    /// Sub-6 GHz style network: 0 dBi main lobe, Rayleigh fading, N₀ = −127 dBW, all links LOS.
    pub fn uhf() -> Scenario {
        Scenario {
            name: ScenarioName::Uhf,
            params: shared(0.0, 1, -127.0, 1.0),
        }
    }

    pub fn preset(name: ScenarioName) -> Scenario {
        match name {
            ScenarioName::Mmwave | ScenarioName::Custom => Scenario {
                name,
                ..Scenario::mmwave()
            },
            ScenarioName::Uhf => Scenario::uhf(),
        }
    }
}
