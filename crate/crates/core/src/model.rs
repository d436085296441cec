//! Network description and per-realization metrics.
//!
//! Every power is held in linear Watts and every gain as a linear ratio; dB
//! values are converted where configuration is read.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Curve-fit constants of the non-linear rectenna: E = (ā x + b̄)/(x + c̄) − b̄/c̄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectennaModel {
    pub a_bar: f64,
    pub b_bar: f64,
    pub c_bar: f64,
}

impl Default for RectennaModel {
    fn default() -> Self {
        RectennaModel {
            a_bar: 2.463,
            b_bar: 1.635,
            c_bar: 0.826,
        }
    }
}

impl RectennaModel {
    /// Supremum of the harvested power, ā − b̄/c̄.
    pub fn saturation(&self) -> f64 {
        self.a_bar - self.b_bar / self.c_bar
    }

    pub fn validate(&self) -> Result<()> {
        let ratio = self.b_bar / self.c_bar;
        if !(self.c_bar > 0.0 && ratio > 0.0 && self.a_bar > ratio) {
            return Err(Error::range(
                "rectenna",
                format!(
                    "need a_bar > b_bar/c_bar > 0 (a_bar={}, b_bar={}, c_bar={})",
                    self.a_bar, self.b_bar, self.c_bar
                ),
            ));
        }
        Ok(())
    }
}

/// Sectorized antenna: main lobe of width `omega` with gain `main`, side lobes with gain `side`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaPattern {
    pub omega: f64,
    pub main: f64,
    pub side: f64,
}

impl AntennaPattern {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=PI).contains(&self.omega) {
            return Err(Error::range("omega", "main-lobe width must lie in [0, pi]"));
        }
        if !(self.side > 0.0) {
            return Err(Error::range("side_gain", "side-lobe gain must be positive"));
        }
        if !(self.main >= self.side) {
            return Err(Error::range(
                "main_gain",
                "main-lobe gain must be at least the side-lobe gain",
            ));
        }
        Ok(())
    }
}

/// One class of the link-gain distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainClass {
    pub gain: f64,
    pub prob: f64,
}

/// Full scenario description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    /// Transmitter density (nodes/m²).
    pub lambda: f64,
    /// Probability an interfering link is line-of-sight.
    pub p_los: f64,
    /// Path-loss exponent, strictly above 2.
    pub alpha: f64,
    /// Nakagami shape parameter.
    pub mu: u32,
    /// Transmitter–receiver distance of the serving link (m).
    pub d0: f64,
    /// Transmit power (W).
    pub p_t: f64,
    pub antenna: AntennaPattern,
    /// Receiver AWGN power (W).
    pub n0: f64,
    /// Baseband conversion noise power (W).
    pub n_c: f64,
    /// Power-splitting ratio sent to the decoder.
    pub rho: f64,
    pub rectenna: RectennaModel,
}

impl NetworkParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::range("lambda", "density must be finite and non-negative"));
        }
        if !(0.0..=1.0).contains(&self.p_los) {
            return Err(Error::range("p_los", "LOS probability must lie in [0, 1]"));
        }
        if !(self.alpha > 2.0 && self.alpha.is_finite()) {
            return Err(Error::range("alpha", "alpha must exceed 2"));
        }
        if self.mu == 0 {
            return Err(Error::range("mu", "Nakagami parameter must be a positive integer"));
        }
        if !(self.d0 > 0.0) {
            return Err(Error::range("d0", "serving distance must be positive"));
        }
        if !(self.p_t > 0.0 && self.p_t.is_finite()) {
            return Err(Error::range("p_t", "transmit power must be positive"));
        }
        if !(self.n0 >= 0.0) {
            return Err(Error::range("n0", "noise power must be non-negative"));
        }
        if !(self.n_c >= 0.0) {
            return Err(Error::range("n_c", "circuit noise power must be non-negative"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::range("rho", "power-splitting ratio must lie in (0, 1)"));
        }
        self.antenna.validate()?;
        self.rectenna.validate()
    }

    /// Serving-link transmit power including the aligned gain, P₀ = M²·P_t.
    pub fn serving_power(&self) -> f64 {
        self.antenna.main * self.antenna.main * self.p_t
    }

    /// Density and transmit power of each LOS interferer class, (p_L·q_i·λ, g_i·P_t).
    pub fn interferer_classes(&self) -> [(f64, f64); 3] {
        gain_pmf(&self.antenna)
            .map(|c| (self.p_los * c.prob * self.lambda, c.gain * self.p_t))
    }

    /// Noise term N₀ + N_C/ρ that the interference competes with.
    pub fn effective_noise(&self) -> f64 {
        self.n0 + self.n_c / self.rho
    }
}

/// Gain classes (M², Mm, m²) with probabilities ((ω/π)², 2(ω/π)(1−ω/π), (1−ω/π)²).
pub fn gain_pmf(antenna: &AntennaPattern) -> [GainClass; 3] {
    let f = antenna.omega / PI;
    let (big, small) = (antenna.main, antenna.side);
    [
        GainClass {
            gain: big * big,
            prob: f * f,
        },
        GainClass {
            gain: big * small,
            prob: 2.0 * f * (1.0 - f),
        },
        GainClass {
            gain: small * small,
            prob: (1.0 - f) * (1.0 - f),
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interferer {
    pub distance: f64,
    /// Linear link gain g_i.
    pub gain: f64,
    pub fade: f64,
}

/// Aggregate of the interferers beyond the explicitly sampled region, per unit transmit power.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FarField {
    /// Σ g·h·d^{−α}.
    pub path: f64,
    /// Σ g·h·d^{−α−2}.
    pub exposure: f64,
}

/// One network snapshot seen from the typical receiver.
///
/// Interferer distances, gains and fades do not depend on the transmit power,
/// so one realization can be scored at several powers.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Realization {
    pub h0: f64,
    pub interferers: Vec<Interferer>,
    pub far_field: FarField,
}

impl Realization {
    /// Σ g·h·d^{−exponent} over the explicit interferers.
    fn weighted_sum(&self, exponent: f64) -> f64 {
        self.interferers
            .iter()
            .map(|i| i.gain * i.fade * i.distance.powf(-exponent))
            .sum()
    }

    /// Collapse the snapshot to the sums every metric is built from.
    pub fn sums(&self, p: &NetworkParams) -> LinkSums {
        LinkSums {
            h0: self.h0,
            path: self.weighted_sum(p.alpha) + self.far_field.path,
            exposure: self.weighted_sum(p.alpha + 2.0) + self.far_field.exposure,
        }
    }

    /// Aggregate interference power I.
    pub fn interference(&self, p: &NetworkParams) -> f64 {
        self.sums(p).interference(p)
    }
}

/// Serving fade and the interference sums of a realization, per unit transmit power.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkSums {
    pub h0: f64,
    /// Σ g·h·d^{−α} over all interferers.
    pub path: f64,
    /// Σ g·h·d^{−α−2} over all interferers.
    pub exposure: f64,
}

impl LinkSums {
    pub fn interference(&self, p: &NetworkParams) -> f64 {
        p.p_t * self.path
    }

    fn serving(&self, p: &NetworkParams) -> f64 {
        p.serving_power() * self.h0 * p.d0.powf(-p.alpha)
    }

    /// P_r = P₀h₀d₀^{−α} + I.
    pub fn received_power(&self, p: &NetworkParams) -> f64 {
        self.serving(p) + self.interference(p)
    }

    /// ρP₀h₀d₀^{−α} / (ρ(N₀ + I) + N_C).
    pub fn sinr(&self, p: &NetworkParams) -> f64 {
        p.rho * self.serving(p) / (p.rho * (p.n0 + self.interference(p)) + p.n_c)
    }

    /// Incident power density under the point-source model (W/m²).
    pub fn mpe(&self, p: &NetworkParams) -> f64 {
        let serving = p.serving_power() * self.h0 * p.d0.powf(-p.alpha - 2.0);
        (serving + p.p_t * self.exposure) / (4.0 * PI)
    }
}

pub fn received_power(r: &Realization, p: &NetworkParams) -> f64 {
    r.sums(p).received_power(p)
}

pub fn sinr_of(r: &Realization, p: &NetworkParams) -> f64 {
    r.sums(p).sinr(p)
}

/// Non-linear harvested power from received power `p_r`.
pub fn harvested_energy(p_r: f64, rho: f64, rect: &RectennaModel) -> f64 {
    let x = (1.0 - rho) * p_r;
    (rect.a_bar * x + rect.b_bar) / (x + rect.c_bar) - rect.b_bar / rect.c_bar
}

/// Received power δ at which `harvested_energy` reaches `eps`.
pub fn harvest_threshold(eps: f64, rho: f64, rect: &RectennaModel) -> Result<f64> {
    let bound = rect.saturation();
    if eps >= bound {
        return Err(Error::Saturation { eps, bound });
    }
    if eps < 0.0 {
        return Err(Error::range("eps", "energy threshold must be non-negative"));
    }
    Ok(rect.c_bar * eps / ((1.0 - rho) * (rect.a_bar - eps - rect.b_bar / rect.c_bar)))
}

pub fn mpe_of(r: &Realization, p: &NetworkParams) -> f64 {
    r.sums(p).mpe(p)
}
