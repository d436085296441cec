//! Exposure-constrained coverage analysis of large-scale SWIPT ad hoc networks.
//!
//! Transmitters form a Poisson point process, links see Nakagami fading and
//! sectorized antenna gains, and each receiver splits its power between a
//! decoder and a non-linear rectenna. The crate computes the probability of
//! meeting an exposure (MPE) limit, the information and energy coverage
//! probabilities and their joint law, both in closed form ([`analytic`]) and
//! by simulation ([`montecarlo`]).

pub mod analytic;
pub mod cli;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod special_fn;

pub use error::{Error, Result};
