//! Scan-mode fringe-counting spectrometer.
//!
//! A Michelson arm is swept over a path difference `ΔL` during `ΔT = ΔL/c`.
//! Light at frequency `f` accumulates phase `φ(t) = 2π f t`, and the detected
//! correlation of the configured kind produces fringes. Comparing the fringe
//! count `M` of the target with the count `N` of a known reference `f0` gives
//! `f_T = f0·M/N`; the smallest resolvable offset is one fringe, `f0/N`.
//!
//! The difference `C(φ_T(t)) − C(φ_0(t))` beats: its envelope vanishes every
//! time the two phases coincide modulo one correlation fringe.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::correlation::{count_maxima, Correlation, CorrelationCurve, CurveDomain, CurveKind, ProductIndexing};
use crate::error::{domain, precondition, Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Upper bound on trace length.
pub const MAX_TRACE_SAMPLES: f64 = 1e8;
/// Scans longer than this are outside the interferometer's stability window.
pub const STABILITY_WINDOW_S: f64 = 1e-6;
/// Fraction of the peak mean-square below which an envelope valley counts as a null.
pub const NULL_THRESHOLD: f64 = 0.1;
/// Level, relative to the envelope peak, that closes a valley.
pub const NULL_RELEASE: f64 = 0.2;

fn default_c() -> f64 {
    SPEED_OF_LIGHT
}

fn default_samples_per_fringe() -> u32 {
    64
}

fn default_path_factor() -> f64 {
    1.0
}

fn default_kind() -> CurveKind {
    CurveKind::FirstOrder
}

fn default_order() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrometerConfig {
    /// Reference frequency (Hz).
    pub f0: f64,
    /// Target frequency (Hz).
    pub f_target: f64,
    /// Scanned path difference (m).
    pub delta_l: f64,
    /// Propagation speed (m/s).
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default = "default_order")]
    pub k_order: u32,
    #[serde(default = "default_samples_per_fringe")]
    pub samples_per_fringe: u32,
    #[serde(default = "default_kind")]
    pub correlation_kind: CurveKind,
    /// Only used by `sr-product` traces.
    #[serde(default)]
    pub indexing: ProductIndexing,
    /// Multiplies `delta_l`; 2 models a physical round trip.
    #[serde(default = "default_path_factor")]
    pub path_factor: f64,
}

impl SpectrometerConfig {
    /// Normalized units: `f0 = 1`, `c = 1`, so `delta_l` is the scan time in
    /// reference periods.
    pub fn normalized(f_target: f64, delta_l: f64, k_order: u32, kind: CurveKind) -> Self {
        SpectrometerConfig {
            f0: 1.0,
            f_target,
            delta_l,
            c: 1.0,
            k_order,
            samples_per_fringe: default_samples_per_fringe(),
            correlation_kind: kind,
            indexing: ProductIndexing::default(),
            path_factor: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("f0", self.f0),
            ("f_target", self.f_target),
            ("delta_l", self.delta_l),
            ("c", self.c),
            ("path_factor", self.path_factor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.k_order == 0 {
            return Err(domain("k_order must be at least 1"));
        }
        if self.samples_per_fringe < 16 {
            return Err(domain(format!(
                "samples_per_fringe must be at least 16, got {}",
                self.samples_per_fringe
            )));
        }
        Ok(())
    }

    /// `ΔT = path_factor·ΔL/c`
    pub fn scan_duration(&self) -> f64 {
        self.path_factor * self.delta_l / self.c
    }

    pub fn exceeds_stability_window(&self) -> bool {
        self.scan_duration() >= STABILITY_WINDOW_S
    }

    pub fn correlation(&self) -> Result<Correlation> {
        Correlation::with_indexing(self.correlation_kind, self.k_order, self.indexing)
    }

    pub fn frequency(&self, beam: Beam) -> f64 {
        match beam {
            Beam::Reference => self.f0,
            Beam::Target => self.f_target,
        }
    }

    /// Shared time grid over `[0, ΔT)`, sized by the faster carrier.
    pub fn time_grid(&self, corr: &Correlation) -> Result<Vec<f64>> {
        self.validate()?;
        let duration = self.scan_duration();
        let fastest = self.f0.max(self.f_target) * corr.fringes_per_cycle() as f64;
        let needed = (duration * fastest * self.samples_per_fringe as f64).ceil();
        if !(needed <= MAX_TRACE_SAMPLES) {
            return Err(Error::Resource(format!(
                "trace would need {needed:.3e} samples, limit is {MAX_TRACE_SAMPLES:.0e}"
            )));
        }
        let n = (needed as usize).max(2);
        let dt = duration / n as f64;
        Ok((0..n).map(|i| i as f64 * dt).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Beam {
    Reference,
    Target,
}

/// `2π f ΔL / c`
pub fn phase_of_scan(f: f64, delta_l: f64, c: f64) -> Result<f64> {
    if !(f > 0.0 && c > 0.0) {
        return Err(domain(format!(
            "frequency and speed must be positive, got f={f}, c={c}"
        )));
    }
    if !(delta_l >= 0.0) {
        return Err(domain(format!("scan length must be nonnegative, got {delta_l}")));
    }
    Ok(TAU * f * delta_l / c)
}

fn trace_on(grid: &[f64], corr: &Correlation, f: f64, duration: f64) -> CorrelationCurve {
    CorrelationCurve {
        grid: grid.to_vec(),
        values: grid.iter().map(|&t| corr.eval(TAU * f * t)).collect(),
        order: corr.order(),
        kind: corr.kind(),
        domain: CurveDomain::ScanTime,
        expected_fringes: corr.fringes_per_cycle() as f64 * f * duration,
    }
}

/// Correlation trace of one beam over the scan.
pub fn scan_trace(config: &SpectrometerConfig, beam: Beam) -> Result<CorrelationCurve> {
    let corr = config.correlation()?;
    let grid = config.time_grid(&corr)?;
    Ok(trace_on(&grid, &corr, config.frequency(beam), config.scan_duration()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FringeReport {
    /// Target fringes M counted on the configured trace.
    pub m_count: u64,
    /// Reference fringes N counted on the configured trace.
    pub n_count: u64,
    /// `f0·M/N`
    pub f_estimate: f64,
    /// One-fringe resolution `f0/N`.
    pub delta_f_min: f64,
}

pub fn fringe_counts(config: &SpectrometerConfig) -> Result<FringeReport> {
    let corr = config.correlation()?;
    let grid = config.time_grid(&corr)?;
    let duration = config.scan_duration();
    let n = count_maxima(&trace_on(&grid, &corr, config.f0, duration))? as u64;
    if n < 2 {
        return Err(precondition(format!(
            "reference trace has {n} fringes; the scan must cover at least 2"
        )));
    }
    let m = count_maxima(&trace_on(&grid, &corr, config.f_target, duration))? as u64;
    Ok(FringeReport {
        m_count: m,
        n_count: n,
        f_estimate: config.f0 * m as f64 / n as f64,
        delta_f_min: config.f0 / n as f64,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeatTrace {
    pub t_grid: Vec<f64>,
    /// `C(φ_T(t)) − C(φ_0(t))`
    pub diff: Vec<f64>,
    /// Mean spacing of the envelope nulls, when at least two were found.
    pub beat_period: Option<f64>,
    /// Located envelope nulls (s).
    pub nulls: Vec<f64>,
}

impl BeatTrace {
    /// `t,diff` CSV with a header row and 17 significant digits.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,diff")?;
        for (t, d) in self.t_grid.iter().zip(&self.diff) {
            writeln!(out, "{t:.16e},{d:.16e}")?;
        }
        Ok(())
    }

    pub fn time_step(&self) -> f64 {
        if self.t_grid.len() < 2 {
            0.0
        } else {
            self.t_grid[1] - self.t_grid[0]
        }
    }
}

pub fn beat_trace(config: &SpectrometerConfig) -> Result<BeatTrace> {
    let corr = config.correlation()?;
    let grid = config.time_grid(&corr)?;
    if config.f_target == config.f0 {
        return Ok(BeatTrace {
            diff: vec![0.0; grid.len()],
            t_grid: grid,
            beat_period: None,
            nulls: Vec::new(),
        });
    }
    let diff: Vec<f64> = grid
        .iter()
        .map(|&t| corr.eval(TAU * config.f_target * t) - corr.eval(TAU * config.f0 * t))
        .collect();
    let dt = grid[1] - grid[0];
    let fringe = 1.0 / (corr.fringes_per_cycle() as f64 * config.f0);
    let window = ((fringe / dt).round() as usize).max(1);
    let nulls = envelope_nulls(&grid, &diff, window);
    let beat_period = (nulls.len() >= 2).then(|| (nulls[nulls.len() - 1] - nulls[0]) / (nulls.len() - 1) as f64);
    Ok(BeatTrace {
        t_grid: grid,
        diff,
        beat_period,
        nulls,
    })
}

/// Envelope nulls of `signal`: minima of its centered moving mean square over
/// `window` samples, one per valley below [`NULL_THRESHOLD`] of the peak
/// (closed by [`NULL_RELEASE`]), refined by a parabola through the three
/// samples at the minimum. Valleys touching either end of the usable range
/// are dropped.
pub fn envelope_nulls(t: &[f64], signal: &[f64], window: usize) -> Vec<f64> {
    let n = signal.len();
    let half = window / 2;
    let span = 2 * half + 1;
    if n < span + 2 {
        return Vec::new();
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0_f64);
    for v in signal {
        let last = *prefix.last().unwrap();
        prefix.push(last + v * v);
    }
    // ms[j] is centered on sample j + half
    let ms: Vec<f64> = (0..=n - span)
        .map(|j| (prefix[j + span] - prefix[j]) / span as f64)
        .collect();
    let peak = ms.iter().copied().fold(0.0, f64::max);
    if peak <= 0.0 {
        return Vec::new();
    }
    let threshold = NULL_THRESHOLD * peak;
    let release = NULL_RELEASE * peak;
    let dt = t[1] - t[0];

    // A valley opens below `threshold` and closes once the envelope climbs
    // back above `release`, so ripple near the threshold cannot split it.
    // Nothing counts until the envelope has been above `release` once.
    let mut nulls = Vec::new();
    let mut armed = false;
    let mut valley: Option<usize> = None;
    for (j, &v) in ms.iter().enumerate() {
        match valley {
            None if armed && v < threshold => valley = Some(j),
            None if v > release => armed = true,
            Some(start) if v > release => {
                nulls.push(refine_minimum(&ms, start, j, t[0] + half as f64 * dt, dt));
                valley = None;
            }
            _ => {}
        }
    }
    nulls
}

/// Parabolic refinement of the minimum of `ms[start..end]`, as a time.
fn refine_minimum(ms: &[f64], start: usize, end: usize, t0: f64, dt: f64) -> f64 {
    let arg = (start..end).fold(start, |best, i| if ms[i] < ms[best] { i } else { best });
    let mut offset = 0.0;
    if arg > 0 && arg + 1 < ms.len() {
        let (a, b, c) = (ms[arg - 1], ms[arg], ms[arg + 1]);
        let denom = a - 2.0 * b + c;
        if denom > 0.0 {
            offset = (0.5 * (a - c) / denom).clamp(-0.5, 0.5);
        }
    }
    t0 + (arg as f64 + offset) * dt
}

/// Phase granularity `π/K` of a K-th order superresolution fringe.
pub fn phase_granularity(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(domain("order K must be at least 1"));
    }
    Ok(PI / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn phase_examples() {
        let lambda = 633e-9;
        assert_abs_diff_eq!(
            phase_of_scan(SPEED_OF_LIGHT / lambda, lambda, SPEED_OF_LIGHT).unwrap(),
            TAU,
            epsilon = 1e-12
        );
        assert_eq!(phase_of_scan(5.0, 0.0, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(phase_of_scan(1.0, 50.0, 1.0).unwrap(), 100.0 * PI, epsilon = 1e-12);
        assert!(phase_of_scan(0.0, 1.0, 1.0).is_err());
        assert!(phase_of_scan(1.0, -1.0, 1.0).is_err());
        assert!(phase_of_scan(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn granularity() {
        assert_eq!(phase_granularity(1).unwrap(), PI);
        assert_eq!(phase_granularity(10).unwrap(), PI / 10.0);
        assert_eq!(phase_granularity(32).unwrap(), PI / 32.0);
        assert!(phase_granularity(0).is_err());
    }

    #[test]
    fn first_order_trace_starts_at_peak() {
        let cfg = SpectrometerConfig::normalized(1.0, 10.0, 1, CurveKind::FirstOrder);
        let tr = scan_trace(&cfg, Beam::Reference).unwrap();
        assert_eq!(tr.values[0], 1.0);
    }

    #[test]
    fn superresolution_multiplies_maxima() {
        let first = SpectrometerConfig::normalized(1.0, 20.0, 1, CurveKind::FirstOrder);
        let sr = SpectrometerConfig {
            k_order: 10,
            correlation_kind: CurveKind::SrClosed,
            ..first.clone()
        };
        let snl = SpectrometerConfig {
            k_order: 10,
            correlation_kind: CurveKind::Snl,
            ..first.clone()
        };
        let count = |c: &SpectrometerConfig| count_maxima(&scan_trace(c, Beam::Reference).unwrap()).unwrap();
        assert_eq!(count(&first), 20);
        assert_eq!(count(&sr), 200);
        assert_eq!(count(&snl), 20);
    }

    #[test]
    fn identity_and_resolution_formulas() {
        let same = SpectrometerConfig::normalized(1.0, 50.0, 1, CurveKind::FirstOrder);
        let r = fringe_counts(&same).unwrap();
        assert_eq!(r.m_count, r.n_count);
        assert_eq!(r.f_estimate, 1.0);

        let cfg = SpectrometerConfig::normalized(1.02, 50.0, 1, CurveKind::FirstOrder);
        let r = fringe_counts(&cfg).unwrap();
        assert_eq!((r.m_count, r.n_count), (51, 50));
        assert_abs_diff_eq!(r.f_estimate, 1.02, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta_f_min, 1.0 / 50.0, epsilon = 1e-12);

        let sr = SpectrometerConfig {
            k_order: 10,
            correlation_kind: CurveKind::SrClosed,
            ..cfg
        };
        let r = fringe_counts(&sr).unwrap();
        assert_eq!((r.m_count, r.n_count), (510, 500));
        assert_abs_diff_eq!(r.f_estimate, 1.02, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta_f_min, 1.0 / 500.0, epsilon = 1e-12);
    }

    #[test]
    fn short_scan_rejected() {
        let cfg = SpectrometerConfig::normalized(1.0, 1.0, 1, CurveKind::FirstOrder);
        assert!(matches!(fringe_counts(&cfg), Err(Error::Precondition(_))));
    }

    #[test]
    fn resource_guard() {
        let cfg = SpectrometerConfig::normalized(1.0, 1e7, 1, CurveKind::FirstOrder);
        assert!(matches!(scan_trace(&cfg, Beam::Reference), Err(Error::Resource(_))));
    }

    #[test]
    fn invalid_config_rejected() {
        let mut cfg = SpectrometerConfig::normalized(1.0, 10.0, 1, CurveKind::FirstOrder);
        cfg.samples_per_fringe = 8;
        assert!(cfg.validate().is_err());
        cfg.samples_per_fringe = 64;
        cfg.f0 = -1.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn equal_frequencies_give_zero_difference() {
        let cfg = SpectrometerConfig::normalized(1.0, 30.0, 3, CurveKind::SrClosed);
        let b = beat_trace(&cfg).unwrap();
        assert!(b.diff.iter().all(|&d| d == 0.0));
        assert!(b.beat_period.is_none());
    }

    #[test]
    fn first_order_beat_period() {
        let cfg = SpectrometerConfig::normalized(1.02, 200.0, 1, CurveKind::FirstOrder);
        let b = beat_trace(&cfg).unwrap();
        let p = b.beat_period.unwrap();
        assert!((p - 50.0).abs() <= b.time_step(), "period {p}");
    }

    #[test]
    fn stability_window_flag() {
        let mut cfg = SpectrometerConfig::normalized(1.0, 10.0, 1, CurveKind::FirstOrder);
        assert!(cfg.exceeds_stability_window());
        cfg.c = SPEED_OF_LIGHT;
        cfg.delta_l = 1.0;
        assert!(!cfg.exceeds_stability_window());
        cfg.path_factor = 2.0;
        assert_abs_diff_eq!(cfg.scan_duration(), 2.0 / SPEED_OF_LIGHT);
    }
}
