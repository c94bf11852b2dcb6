//! Numerical (epsilon, delta) accounting for composed, subsampled
//! differentially private mechanisms.
//!
//! The crate computes hockey-stick divergences either exactly (rational
//! arithmetic over discrete laws) or numerically (crossing-based
//! integration with a quadrature fallback), constructs discretized
//! privacy loss distributions from distribution pairs or from
//! delta-curves, composes them with FFT convolution, and answers
//! epsilon/delta and noise-calibration queries for Gaussian and Laplace
//! mechanisms under Poisson subsampling and sampling without
//! replacement, under the add, remove, add/remove and substitution
//! neighboring relations.

pub mod calibrate;
pub mod dist;
pub mod divergence;
pub mod mc;
pub mod pairs;
pub mod pld;
pub mod rdp;

mod error;
pub(crate) mod profile;

pub use error::Error;

/// Exact rational carrier used by the discrete divergence oracles.
pub type Rational = num_rational::BigRational;

pub type Result<T> = std::result::Result<T, Error>;
