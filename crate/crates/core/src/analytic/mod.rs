//! Closed-form probabilities built on the interference characteristic function
//! and Gil-Pelaez inversion.

pub mod cf;
pub mod coverage;
pub mod inversion;
pub mod quadrature;

pub use cf::{interference_cf, psi, psi_kernel, ShotNoiseCf};
pub use coverage::{
    coverage_floor, energy_coverage, info_coverage, joint_coverage, joint_with_mpe, mpe_prob,
    mpe_prob_asymptotic, no_interference_joint, optimal_power, CoverageThresholds,
};
pub use inversion::gil_pelaez_cdf;
pub use quadrature::{
    gauss_legendre, integrate_tail, QuadratureOptions, TailEstimate, TailIntegral, TailIntegrand,
};
