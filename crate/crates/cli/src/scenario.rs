//! Scenario files.
//!
//! A scenario is a TOML document with a few top-level keys and exactly one
//! payload table:
//!
//! ```toml
//! name = "fig3-sr"
//! seed = 0
//! output_dir = "out/fig3-sr"
//!
//! [spectrometer]
//! normalized = true
//! f_target = 1.02
//! delta_l = 200.0
//! k_order = 10
//! kind = "sr-closed"
//! ```
//!
//! Payload tables are `[curves]`, `[spectrometer]` and `[mc_study]`; their keys
//! are documented on the structs below. Unknown keys are rejected.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use srspec_core::correlation::{CurveKind, ProductIndexing, DEFAULT_GRID_POINTS};
use srspec_core::estimation::MIN_TRIALS;
use srspec_core::spectrometer::{SpectrometerConfig, SPEED_OF_LIGHT};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    #[serde(default)]
    seed: u64,
    output_dir: Option<PathBuf>,
    curves: Option<CurvesPayload>,
    spectrometer: Option<SpectrometerPayload>,
    mc_study: Option<McStudyPayload>,
}

/// `[curves]`: one CSV per (kind, order).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvesPayload {
    /// Any of `first-order`, `snl`, `sr-closed`, `sr-product`.
    pub kinds: Vec<CurveKind>,
    pub orders: Vec<u32>,
    /// Samples per 2π.
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// Index set of the eraser product (`half-step` or `paper-literal`).
    #[serde(default)]
    pub indexing: ProductIndexing,
}

fn default_grid() -> usize {
    DEFAULT_GRID_POINTS
}

impl Default for CurvesPayload {
    fn default() -> Self {
        CurvesPayload {
            kinds: vec![CurveKind::FirstOrder, CurveKind::Snl, CurveKind::SrClosed],
            orders: vec![10],
            grid: DEFAULT_GRID_POINTS,
            indexing: ProductIndexing::default(),
        }
    }
}

/// `[spectrometer]`: scan traces, beat trace and fringe report.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrometerPayload {
    /// Normalized units: `f0` and `c` default to 1 and the stability warning is off.
    #[serde(default)]
    pub normalized: bool,
    pub f0: Option<f64>,
    pub f_target: f64,
    pub delta_l: f64,
    pub c: Option<f64>,
    #[serde(default = "one")]
    pub k_order: u32,
    #[serde(default = "default_spf")]
    pub samples_per_fringe: u32,
    #[serde(default = "first_order")]
    pub kind: CurveKind,
    #[serde(default)]
    pub indexing: ProductIndexing,
    #[serde(default = "unit")]
    pub path_factor: f64,
}

fn one() -> u32 {
    1
}

fn unit() -> f64 {
    1.0
}

fn default_spf() -> u32 {
    64
}

fn first_order() -> CurveKind {
    CurveKind::FirstOrder
}

impl Default for SpectrometerPayload {
    fn default() -> Self {
        SpectrometerPayload {
            normalized: true,
            f0: None,
            f_target: 1.02,
            delta_l: 200.0,
            c: None,
            k_order: 10,
            samples_per_fringe: 64,
            kind: CurveKind::SrClosed,
            indexing: ProductIndexing::default(),
            path_factor: 1.0,
        }
    }
}

impl SpectrometerPayload {
    pub fn to_config(&self) -> Result<SpectrometerConfig, CliError> {
        let f0 = match (self.f0, self.normalized) {
            (Some(f), _) => f,
            (None, true) => 1.0,
            (None, false) => return Err(CliError::config("spectrometer.f0 is required unless normalized = true")),
        };
        let c = self.c.unwrap_or(if self.normalized { 1.0 } else { SPEED_OF_LIGHT });
        let config = SpectrometerConfig {
            f0,
            f_target: self.f_target,
            delta_l: self.delta_l,
            c,
            k_order: self.k_order,
            samples_per_fringe: self.samples_per_fringe,
            correlation_kind: self.kind,
            indexing: self.indexing,
            path_factor: self.path_factor,
        };
        config
            .validate()
            .map_err(|e| CliError::config(format!("[spectrometer] {e}")))?;
        Ok(config)
    }
}

/// `[mc_study]`: one Monte-Carlo report per (order, sigma).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McStudyPayload {
    pub orders: Vec<u32>,
    /// Noise standard deviations.
    pub sigmas: Vec<f64>,
    #[serde(default = "unit")]
    pub amplitude: f64,
    #[serde(default = "default_phi_true")]
    pub phi_true: f64,
    #[serde(default = "default_trials")]
    pub trials: u64,
}

fn default_phi_true() -> f64 {
    1.0
}

fn default_trials() -> u64 {
    10_000
}

impl Default for McStudyPayload {
    fn default() -> Self {
        McStudyPayload {
            orders: vec![1, 2, 4, 8],
            sigmas: vec![0.05],
            amplitude: 1.0,
            phi_true: default_phi_true(),
            trials: default_trials(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Curves(CurvesPayload),
    Spectrometer(SpectrometerPayload),
    McStudy(McStudyPayload),
}

impl Payload {
    pub fn table_name(&self) -> &'static str {
        match self {
            Payload::Curves(_) => "curves",
            Payload::Spectrometer(_) => "spectrometer",
            Payload::McStudy(_) => "mc_study",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub payload: Payload,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Scenario {
    pub fn with_payload(name: &str, payload: Payload) -> Self {
        Scenario {
            name: name.to_string(),
            payload,
            seed: 0,
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        let mut payloads = Vec::new();
        if let Some(p) = raw.curves {
            payloads.push(Payload::Curves(p));
        }
        if let Some(p) = raw.spectrometer {
            payloads.push(Payload::Spectrometer(p));
        }
        if let Some(p) = raw.mc_study {
            payloads.push(Payload::McStudy(p));
        }
        let payload = match payloads.len() {
            1 => payloads.pop().unwrap(),
            0 => {
                return Err(CliError::config(
                    "scenario has no payload; add one of [curves], [spectrometer], [mc_study]",
                ))
            }
            _ => {
                let names: Vec<&str> = payloads.iter().map(Payload::table_name).collect();
                return Err(CliError::config(format!(
                    "scenario must have exactly one payload, found [{}]",
                    names.join("], [")
                )));
            }
        };
        let scenario = Scenario {
            name: raw.name.unwrap_or_else(|| payload.table_name().to_string()),
            payload,
            seed: raw.seed,
            output_dir: raw.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match &self.payload {
            Payload::Curves(p) => validate_curves(p),
            Payload::Spectrometer(p) => p.to_config().map(|_| ()),
            Payload::McStudy(p) => validate_mc(p),
        }
    }
}

fn validate_curves(p: &CurvesPayload) -> Result<(), CliError> {
    if p.kinds.is_empty() {
        return Err(CliError::config("curves.kinds must not be empty"));
    }
    if p.orders.is_empty() {
        return Err(CliError::config("curves.orders must not be empty"));
    }
    if let Some(i) = p.orders.iter().position(|&k| k == 0) {
        return Err(CliError::config(format!(
            "curves.orders[{i}]: order must be at least 1"
        )));
    }
    if p.grid < 16 {
        return Err(CliError::config(format!(
            "curves.grid: need at least 16 points, got {}",
            p.grid
        )));
    }
    Ok(())
}

fn validate_mc(p: &McStudyPayload) -> Result<(), CliError> {
    if p.orders.is_empty() {
        return Err(CliError::config("mc_study.orders must not be empty"));
    }
    if let Some(i) = p.orders.iter().position(|&k| k == 0) {
        return Err(CliError::config(format!(
            "mc_study.orders[{i}]: order must be at least 1"
        )));
    }
    if p.sigmas.is_empty() {
        return Err(CliError::config("mc_study.sigmas must not be empty"));
    }
    if let Some(i) = p.sigmas.iter().position(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(CliError::config(format!("mc_study.sigmas[{i}]: must be positive")));
    }
    if !(p.amplitude > 0.0 && p.amplitude.is_finite()) {
        return Err(CliError::config("mc_study.amplitude: must be positive"));
    }
    if p.trials < MIN_TRIALS {
        return Err(CliError::config(format!(
            "mc_study.trials: need at least {MIN_TRIALS}, got {}",
            p.trials
        )));
    }
    // φ and −φ are indistinguishable for K ≤ 2
    if p.orders.iter().any(|&k| k <= 2) && !(p.phi_true > 0.05 && p.phi_true < PI - 0.05) {
        return Err(CliError::config(format!(
            "mc_study.phi_true: orders K <= 2 need 0 < phi_true < π away from the ends, got {}",
            p.phi_true
        )));
    }
    Ok(())
}
