//! Simulation and statistical audit of a superresolution-enhanced
//! interferometric spectrometer.
//!
//! The crate is organized bottom-up:
//!
//! - [`optics`]: Jones-field model of the polarization Michelson interferometer
//!   and the phase-controlled quantum-eraser bank.
//! - [`correlation`]: K-th order intensity-product curves (shot-noise-limited
//!   product, the 2K eraser product and its closed superresolution form), fringe
//!   counting and peak widths.
//! - [`spectrometer`]: scan-mode fringe counting, frequency estimation and
//!   difference-signal beat analysis.
//! - [`estimation`]: Gaussian likelihood, Fisher information, maximum-likelihood
//!   phase estimation and Monte-Carlo variance studies.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlation;
pub mod error;
pub mod estimation;
pub mod numeric;
pub mod optics;
pub mod spectrometer;

pub use error::{Error, Result};
