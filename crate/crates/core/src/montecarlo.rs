//! Monte Carlo ground truth for the analytic probabilities.
//!
//! Interferers inside `exact_radius` are drawn one by one: a Poisson number of
//! nodes placed uniformly on the disk, LOS thinning, a gain class and a
//! Nakagami fade each. The annulus between `exact_radius` and `disk_radius`
//! holds thousands of weak nodes per snapshot, so its two interference sums
//! are drawn jointly from a bivariate normal with the exact compound-Poisson
//! mean and covariance. That keeps a 10⁵-trial run to seconds while the
//! approximation error sits orders of magnitude below the sampling noise.
//!
//! Every trial owns a ChaCha8 stream selected by its index, and trials are
//! reduced by summing integer counts, so results are identical for any thread
//! count.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::CoverageThresholds;
use crate::error::{Error, Result};
use crate::model::{
    gain_pmf, harvested_energy, FarField, Interferer, LinkSums, NetworkParams, Realization,
};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Largest share of the mean exposure sum allowed to fall outside `disk_radius`.
const TRUNCATION_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McSettings {
    pub trials: u64,
    pub seed: u64,
    /// Radius of the simulated network (m); may be infinite.
    pub disk_radius: f64,
    /// Radius inside which interferers are sampled individually (m).
    pub exact_radius: f64,
    pub parallel: bool,
}

impl Default for McSettings {
    fn default() -> Self {
        McSettings {
            trials: 100_000,
            seed: 2024,
            disk_radius: 1000.0,
            exact_radius: 50.0,
            parallel: true,
        }
    }
}

impl McSettings {
    /// Checks the settings against the network they will simulate.
    pub fn validate(&self, p: &NetworkParams) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::range("trials", "need at least one trial"));
        }
        if !(self.exact_radius > 0.0 && self.exact_radius.is_finite()) {
            return Err(Error::range("exact_radius", "must be positive and finite"));
        }
        if !(self.disk_radius >= self.exact_radius) {
            return Err(Error::range("disk_radius", "must be at least exact_radius"));
        }
        // share of the mean Σ d^{−α−2} beyond the disk, relative to [d₀, R]
        let r = self.disk_radius;
        let outside = r.powf(-p.alpha);
        let inside = p.d0.powf(-p.alpha) - outside;
        if !(outside <= TRUNCATION_LIMIT * inside) {
            return Err(Error::range(
                "disk_radius",
                format!("{r} m truncates more than {TRUNCATION_LIMIT} of the mean exposure"),
            ));
        }
        Ok(())
    }
}

/// Empirical probability with a 95% Wilson half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityEstimate {
    pub value: f64,
    pub ci_half_width: f64,
    pub trials: u64,
}

impl ProbabilityEstimate {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        let n = trials as f64;
        let p = hits as f64 / n;
        let z2 = Z95 * Z95;
        let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
        ProbabilityEstimate {
            value: p,
            ci_half_width: half,
            trials,
        }
    }

    /// Whether `x` lies within `k` half-widths of the estimate.
    pub fn agrees_with(&self, x: f64, k: f64) -> bool {
        (x - self.value).abs() <= k * self.ci_half_width
    }
}

/// Estimates of P{MPE<τ}, P{SINR>γ}, P{E>ε}, P{SINR>γ, E>ε} and all three together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimates {
    pub mpe: ProbabilityEstimate,
    pub info: ProbabilityEstimate,
    pub energy: ProbabilityEstimate,
    pub joint: ProbabilityEstimate,
    pub joint_with_mpe: ProbabilityEstimate,
}

/// Compound-Poisson moments of the annulus sums, per unit transmit power.
#[derive(Debug, Clone, Copy)]
struct AnnulusMoments {
    mean: [f64; 2],
    // lower Cholesky factor of the covariance
    l11: f64,
    l21: f64,
    l22: f64,
}

impl AnnulusMoments {
    fn new(p: &NetworkParams, s: &McSettings) -> Self {
        let (r1, r2) = (s.exact_radius, s.disk_radius);
        // ∫_{r1}^{r2} 2πr·r^{−k} dr for k > 2
        let ring = |k: f64| {
            let outer = if r2.is_finite() { r2.powf(2.0 - k) } else { 0.0 };
            2.0 * PI * (r1.powf(2.0 - k) - outer) / (k - 2.0)
        };
        let density = p.lambda * p.p_los;
        let classes = gain_pmf(&p.antenna);
        let g1: f64 = classes.iter().map(|c| c.prob * c.gain).sum();
        let g2: f64 = classes.iter().map(|c| c.prob * c.gain * c.gain).sum();
        let h2 = 1.0 + 1.0 / p.mu as f64;
        let a = p.alpha;
        if !(r2 > r1) || density == 0.0 {
            return AnnulusMoments {
                mean: [0.0; 2],
                l11: 0.0,
                l21: 0.0,
                l22: 0.0,
            };
        }
        let mean = [density * g1 * ring(a), density * g1 * ring(a + 2.0)];
        let var_path = density * g2 * h2 * ring(2.0 * a);
        let cov = density * g2 * h2 * ring(2.0 * a + 2.0);
        let var_exp = density * g2 * h2 * ring(2.0 * a + 4.0);
        let l11 = var_path.sqrt();
        let l21 = if l11 > 0.0 { cov / l11 } else { 0.0 };
        let l22 = (var_exp - l21 * l21).max(0.0).sqrt();
        AnnulusMoments {
            mean,
            l11,
            l21,
            l22,
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> FarField {
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        FarField {
            path: (self.mean[0] + self.l11 * z1).max(0.0),
            exposure: (self.mean[1] + self.l21 * z1 + self.l22 * z2).max(0.0),
        }
    }
}

/// Everything a trial needs that does not change between trials.
struct Sampler {
    p: NetworkParams,
    seed: u64,
    exact_radius: f64,
    count: Poisson<f64>,
    fade: Gamma<f64>,
    cumulative: [f64; 3],
    gains: [f64; 3],
    annulus: AnnulusMoments,
}

impl Sampler {
    fn new(p: &NetworkParams, s: &McSettings) -> Result<Self> {
        p.validate()?;
        s.validate(p)?;
        Sampler::unchecked(p, s)
    }

    /// Skips the truncation check, for tests that simulate a small disk on purpose.
    fn unchecked(p: &NetworkParams, s: &McSettings) -> Result<Self> {
        let mean_count = p.lambda * PI * s.exact_radius * s.exact_radius;
        let count = Poisson::new(mean_count.max(f64::MIN_POSITIVE))
            .map_err(|e| Error::Domain(format!("interferer count: {e}")))?;
        let mu = p.mu as f64;
        let fade = Gamma::new(mu, 1.0 / mu).map_err(|e| Error::Domain(format!("fading: {e}")))?;
        let classes = gain_pmf(&p.antenna);
        let cumulative = [
            classes[0].prob,
            classes[0].prob + classes[1].prob,
            f64::INFINITY,
        ];
        Ok(Sampler {
            p: *p,
            seed: s.seed,
            exact_radius: s.exact_radius,
            count,
            fade,
            cumulative,
            gains: classes.map(|c| c.gain),
            annulus: AnnulusMoments::new(p, s),
        })
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    fn realization(&self, index: u64) -> Realization {
        let mut rng = self.rng(index);
        let h0 = self.fade.sample(&mut rng);
        let n = if self.p.lambda > 0.0 {
            self.count.sample(&mut rng) as u64
        } else {
            0
        };
        let mut interferers = Vec::with_capacity(n as usize);
        for _ in 0..n {
            // non-LOS nodes are dropped, but still consume their draw
            if !rng.random_bool(self.p.p_los) {
                continue;
            }
            let distance = self.exact_radius * rng.random::<f64>().sqrt();
            let u: f64 = rng.random();
            let class = self.cumulative.iter().position(|&c| u < c).unwrap_or(2);
            interferers.push(Interferer {
                distance,
                gain: self.gains[class],
                fade: self.fade.sample(&mut rng),
            });
        }
        let far_field = self.annulus.sample(&mut rng);
        Realization {
            h0,
            interferers,
            far_field,
        }
    }

    fn run<T, F, G>(&self, trials: u64, parallel: bool, init: G, fold: F) -> T
    where
        T: Send + Merge,
        F: Fn(&mut T, Realization) + Sync,
        G: Fn() -> T + Sync,
    {
        if parallel {
            (0..trials)
                .into_par_iter()
                .fold(&init, |mut acc, i| {
                    fold(&mut acc, self.realization(i));
                    acc
                })
                .reduce(&init, |mut a, b| {
                    a.merge(b);
                    a
                })
        } else {
            let mut acc = init();
            for i in 0..trials {
                fold(&mut acc, self.realization(i));
            }
            acc
        }
    }
}

trait Merge {
    fn merge(&mut self, other: Self);
}

impl Merge for Vec<[u64; 5]> {
    fn merge(&mut self, other: Self) {
        for (a, b) in self.iter_mut().zip(other) {
            for k in 0..5 {
                a[k] += b[k];
            }
        }
    }
}

impl Merge for Vec<f64> {
    fn merge(&mut self, other: Self) {
        self.extend(other);
    }
}

/// Snapshot number `index` of the stream identified by `s.seed`.
pub fn sample_realization(p: &NetworkParams, s: &McSettings, index: u64) -> Result<Realization> {
    Ok(Sampler::new(p, s)?.realization(index))
}

/// Indicators (MPE<τ, SINR>γ, E>ε, SINR>γ ∧ E>ε, all three) for one snapshot.
fn indicators(sums: &LinkSums, p: &NetworkParams, th: &CoverageThresholds) -> [bool; 5] {
    let safe = sums.mpe(p) < th.tau;
    let info = sums.sinr(p) > th.gamma;
    let energy = harvested_energy(sums.received_power(p), p.rho, &p.rectenna) > th.eps;
    [safe, info, energy, info && energy, safe && info && energy]
}

/// Estimates at each (P_t, thresholds) case, scoring every snapshot against all cases.
///
/// A snapshot does not depend on the transmit power, so the cases share trials
/// and their estimates are positively correlated.
pub fn estimate_batch(
    p: &NetworkParams,
    cases: &[(f64, CoverageThresholds)],
    s: &McSettings,
) -> Result<Vec<Estimates>> {
    let sampler = Sampler::new(p, s)?;
    let scored: Vec<(NetworkParams, CoverageThresholds)> = cases
        .iter()
        .map(|&(p_t, th)| {
            let q = NetworkParams { p_t, ..*p };
            q.validate()?;
            th.validate(&q.rectenna)?;
            Ok((q, th))
        })
        .collect::<Result<_>>()?;
    let counts = sampler.run(
        s.trials,
        s.parallel,
        || vec![[0u64; 5]; scored.len()],
        |acc, r| {
            let sums = r.sums(p);
            for (slot, (q, th)) in acc.iter_mut().zip(&scored) {
                for (c, hit) in slot.iter_mut().zip(indicators(&sums, q, th)) {
                    *c += hit as u64;
                }
            }
        },
    );
    Ok(counts
        .into_iter()
        .map(|c| {
            let e = |k: usize| ProbabilityEstimate::from_counts(c[k], s.trials);
            Estimates {
                mpe: e(0),
                info: e(1),
                energy: e(2),
                joint: e(3),
                joint_with_mpe: e(4),
            }
        })
        .collect())
}

pub fn estimate(p: &NetworkParams, th: &CoverageThresholds, s: &McSettings) -> Result<Estimates> {
    Ok(estimate_batch(p, &[(p.p_t, *th)], s)?[0])
}

/// P{MPE<τ, SINR>γ, E>ε} without the independence assumption.
pub fn exact_joint_with_mpe(
    p: &NetworkParams,
    th: &CoverageThresholds,
    s: &McSettings,
) -> Result<ProbabilityEstimate> {
    Ok(estimate(p, th, s)?.joint_with_mpe)
}

/// Sample mean of e^{𝚥tI} with its standard error sqrt((1 − |φ̂|²)/n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfEstimate {
    pub t: f64,
    pub value: Complex64,
    pub std_err: f64,
}

/// Draws `s.trials` aggregate interference values with path-loss exponent `a_exp`.
pub fn interference_samples(p: &NetworkParams, a_exp: f64, s: &McSettings) -> Result<Vec<f64>> {
    let q = NetworkParams { alpha: a_exp, ..*p };
    let sampler = Sampler::new(&q, s)?;
    let mut values = sampler.run(
        s.trials,
        s.parallel,
        Vec::new,
        |acc, r| acc.push(r.interference(&q)),
    );
    // fixed order so later sums do not depend on how trials were chunked
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Empirical characteristic function of the interference at each of `ts`.
pub fn empirical_cf_batch(
    ts: &[f64],
    p: &NetworkParams,
    a_exp: f64,
    s: &McSettings,
) -> Result<Vec<CfEstimate>> {
    let samples = interference_samples(p, a_exp, s)?;
    let n = samples.len() as f64;
    Ok(ts
        .iter()
        .map(|&t| {
            let sum: Complex64 = samples.iter().map(|&x| Complex64::from_polar(1.0, t * x)).sum();
            let value = sum / n;
            CfEstimate {
                t,
                value,
                std_err: ((1.0 - value.norm_sqr()).max(0.0) / n).sqrt(),
            }
        })
        .collect())
}

pub fn empirical_cf(t: f64, p: &NetworkParams, a_exp: f64, s: &McSettings) -> Result<Complex64> {
    Ok(empirical_cf_batch(&[t], p, a_exp, s)?[0].value)
}
