//! Jones-calculus model of the HWP+PBS Michelson interferometer and the
//! phase-controlled quantum-eraser bank.
//!
//! The interferometer is represented by its transfer function: the output
//! field carries the path phase `φ` on the horizontal component and nothing on
//! the vertical one, so the total intensity is flat in `φ`. Interference only
//! appears after a 45° polarizer projects both components onto a common axis
//! (the quantum eraser). Each eraser set sees a fringe shift `ξ_j` and a pair of
//! out-of-phase outputs.

use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Fully polarized field in the (H, V) basis. Amplitudes are in √intensity units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesField {
    pub h: Complex64,
    pub v: Complex64,
}

impl JonesField {
    pub fn new(h: Complex64, v: Complex64) -> Self {
        Self { h, v }
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `|h|² + |v|²`
    pub fn intensity(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    /// Multiplies both components by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let p = Complex64::from_polar(1.0, theta);
        Self::new(self.h * p, self.v * p)
    }

    /// Retards the horizontal component by `xi` relative to the vertical one.
    /// This is the fringe shift a rotated QWP imposes on an eraser set.
    pub fn with_h_retardance(&self, xi: f64) -> Self {
        Self::new(self.h * Complex64::from_polar(1.0, -xi), self.v)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.h * factor, self.v * factor)
    }
}

/// Output field of the polarization interferometer, `(Ĥ e^{iφ} + V̂)·√I_in/2`.
///
/// Each component carries a quarter of the input intensity, so the output
/// intensity is `I_in/2` for every φ.
pub fn interferometer_output(e_in_intensity: f64, phi: f64) -> Result<JonesField> {
    if !(e_in_intensity >= 0.0) {
        return Err(domain(format!(
            "input intensity must be nonnegative, got {e_in_intensity}"
        )));
    }
    let amp = e_in_intensity.sqrt() / 2.0;
    Ok(JonesField::new(
        Complex64::from_polar(amp, phi),
        Complex64::new(amp, 0.0),
    ))
}

/// Scalar amplitude transmitted by a linear polarizer at `angle` from Ĥ.
pub fn polarizer_project(field: &JonesField, angle: f64) -> Complex64 {
    field.h * angle.cos() + field.v * angle.sin()
}

/// The two paired eraser outputs of one set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EraserPairIntensities {
    pub i1: f64,
    pub i2: f64,
}

impl EraserPairIntensities {
    pub fn total(&self) -> f64 {
        self.i1 + self.i2
    }
}

/// Closed-form eraser pair for one set with fringe shift `xi`:
/// `I_in[1 ± cos(φ − ξ)]/8`.
pub fn eraser_pair_intensities(i_in: f64, phi: f64, xi: f64) -> Result<EraserPairIntensities> {
    if !(i_in >= 0.0) {
        return Err(domain(format!("input intensity must be nonnegative, got {i_in}")));
    }
    let c = (phi - xi).cos();
    Ok(EraserPairIntensities {
        i1: i_in * (1.0 + c) / 8.0,
        i2: i_in * (1.0 - c) / 8.0,
    })
}

/// Eraser pair computed by propagating the Jones field: the set's QWP retards
/// Ĥ by `xi`, a 50:50 splitter divides the field and flips the sign of Ĥ on its
/// second port, and each port passes a 45° polarizer.
///
/// Agrees with [`eraser_pair_intensities`]; the global splitter phase is dropped.
pub fn eraser_pair_from_field(field: &JonesField, xi: f64) -> EraserPairIntensities {
    let divided = field.with_h_retardance(xi).scaled(std::f64::consts::FRAC_1_SQRT_2);
    let flipped = JonesField::new(-divided.h, divided.v);
    EraserPairIntensities {
        i1: polarizer_project(&divided, FRAC_PI_4).norm_sqr(),
        i2: polarizer_project(&flipped, FRAC_PI_4).norm_sqr(),
    }
}

/// Fringe shifts of the eraser bank, `ξ_j = 2πj/K` for `j = 0..K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseMask {
    order: u32,
    shifts: Vec<f64>,
}

impl PhaseMask {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    /// Spacing between consecutive shifts, `δξ = 2π/K`.
    pub fn delta_xi(&self) -> f64 {
        TAU / self.order as f64
    }

    /// `φ′_n = φ + ξ_n` for every set.
    pub fn shifted_phases(&self, phi: f64) -> impl Iterator<Item = f64> + '_ {
        self.shifts.iter().map(move |xi| phi + xi)
    }
}

pub fn make_phase_mask(k: u32) -> Result<PhaseMask> {
    if k == 0 {
        return Err(domain("phase mask order must be at least 1"));
    }
    let shifts = (0..k).map(|j| TAU * j as f64 / k as f64).collect();
    Ok(PhaseMask { order: k, shifts })
}

/// Michelson fringe visibility `(max − min)/(max + min)` of a sampled curve.
pub fn fringe_visibility(values: &[f64]) -> Option<f64> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max + min > 0.0) {
        return None;
    }
    Some((max - min) / (max + min))
}
