//! Browser bindings for the demo page in `www/`.
//!
//! Three operations: sample a correlation curve, run a two-beam scan with its
//! beat trace, and run a small Monte-Carlo phase-estimation study. Each one has
//! a plain Rust form (tested natively) and a thin `wasm_bindgen` wrapper.

use srspec_core::correlation::{count_maxima, Correlation, CorrelationCurve, CurveKind};
use srspec_core::estimation::{monte_carlo_study, LikelihoodModel, StudyOutcome};
use srspec_core::spectrometer::{beat_trace, fringe_counts, BeatTrace, FringeReport, SpectrometerConfig};
use wasm_bindgen::prelude::*;

/// Largest trial count the page may request; keeps the UI responsive.
pub const MAX_DEMO_TRIALS: u64 = 20_000;

#[wasm_bindgen]
pub struct CurveView {
    phi: Vec<f64>,
    values: Vec<f64>,
    maxima: Option<usize>,
}

#[wasm_bindgen]
impl CurveView {
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }

    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    /// Maxima per 2π, or `undefined` when the grid is too coarse.
    pub fn maxima(&self) -> Option<u32> {
        self.maxima.map(|m| m as u32)
    }
}

pub fn curve(kind: &str, order: u32, points: usize) -> Result<CurveView, String> {
    let kind: CurveKind = kind.parse().map_err(|e: srspec_core::Error| e.to_string())?;
    let corr = Correlation::new(kind, order).map_err(|e| e.to_string())?;
    let curve = CorrelationCurve::over_phase(&corr, points).map_err(|e| e.to_string())?;
    Ok(CurveView {
        maxima: count_maxima(&curve).ok(),
        phi: curve.grid,
        values: curve.values,
    })
}

#[wasm_bindgen(js_name = correlationCurve)]
pub fn correlation_curve(kind: &str, order: u32, points: usize) -> Result<CurveView, JsError> {
    curve(kind, order, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub struct ScanView {
    trace: BeatTrace,
    fringes: FringeReport,
}

#[wasm_bindgen]
impl ScanView {
    pub fn t(&self) -> Vec<f64> {
        self.trace.t_grid.clone()
    }

    pub fn diff(&self) -> Vec<f64> {
        self.trace.diff.clone()
    }

    pub fn nulls(&self) -> Vec<f64> {
        self.trace.nulls.clone()
    }

    #[wasm_bindgen(js_name = beatPeriod)]
    pub fn beat_period(&self) -> Option<f64> {
        self.trace.beat_period
    }

    #[wasm_bindgen(js_name = timeStep)]
    pub fn time_step(&self) -> f64 {
        self.trace.time_step()
    }

    #[wasm_bindgen(js_name = mCount)]
    pub fn m_count(&self) -> f64 {
        self.fringes.m_count as f64
    }

    #[wasm_bindgen(js_name = nCount)]
    pub fn n_count(&self) -> f64 {
        self.fringes.n_count as f64
    }

    #[wasm_bindgen(js_name = fEstimate)]
    pub fn f_estimate(&self) -> f64 {
        self.fringes.f_estimate
    }

    #[wasm_bindgen(js_name = deltaFMin)]
    pub fn delta_f_min(&self) -> f64 {
        self.fringes.delta_f_min
    }
}

/// Normalized units (`f0 = c = 1`), 32 samples per fastest fringe.
pub fn scan(kind: &str, order: u32, delta_f: f64, delta_l: f64) -> Result<ScanView, String> {
    let kind: CurveKind = kind.parse().map_err(|e: srspec_core::Error| e.to_string())?;
    let mut config = SpectrometerConfig::normalized(1.0 + delta_f, delta_l, order, kind);
    config.samples_per_fringe = 32;
    let fringes = fringe_counts(&config).map_err(|e| e.to_string())?;
    let trace = beat_trace(&config).map_err(|e| e.to_string())?;
    Ok(ScanView { trace, fringes })
}

#[wasm_bindgen(js_name = spectrometerScan)]
pub fn spectrometer_scan(kind: &str, order: u32, delta_f: f64, delta_l: f64) -> Result<ScanView, JsError> {
    scan(kind, order, delta_f, delta_l).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub struct StudyView {
    outcome: StudyOutcome,
}

#[wasm_bindgen]
impl StudyView {
    #[wasm_bindgen(js_name = varEmp)]
    pub fn var_emp(&self) -> f64 {
        self.outcome.report.var_emp
    }

    #[wasm_bindgen(js_name = varStdError)]
    pub fn var_std_error(&self) -> f64 {
        self.outcome.var_std_error
    }

    #[wasm_bindgen(js_name = crlbOracle)]
    pub fn crlb_oracle(&self) -> f64 {
        self.outcome.report.crlb_oracle
    }

    #[wasm_bindgen(js_name = crlbPaper)]
    pub fn crlb_paper(&self) -> f64 {
        self.outcome.report.crlb_paper
    }

    #[wasm_bindgen(js_name = phiHat)]
    pub fn phi_hat(&self) -> f64 {
        self.outcome.report.phi_hat
    }
}

pub fn study(order: u32, sigma: f64, phi_true: f64, trials: u32, seed: u32) -> Result<StudyView, String> {
    let trials = u64::from(trials);
    if trials > MAX_DEMO_TRIALS {
        return Err(format!("the demo runs at most {MAX_DEMO_TRIALS} trials"));
    }
    let model = LikelihoodModel::with_sigma(1.0, sigma, order).map_err(|e| e.to_string())?;
    let outcome = monte_carlo_study(&model, phi_true, trials, u64::from(seed)).map_err(|e| e.to_string())?;
    Ok(StudyView { outcome })
}

#[wasm_bindgen(js_name = mcStudy)]
pub fn mc_study(order: u32, sigma: f64, phi_true: f64, trials: u32, seed: u32) -> Result<StudyView, JsError> {
    study(order, sigma, phi_true, trials, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sr_curve_has_k_maxima() {
        let view = curve("sr-closed", 7, 1024).unwrap();
        assert_eq!(view.maxima(), Some(7));
        assert_eq!(view.phi().len(), 1024);
        assert!(curve("nope", 1, 64).is_err());
        assert!(curve("snl", 0, 64).is_err());
    }

    #[test]
    fn scan_reports_beat_and_counts() {
        let view = scan("sr-closed", 10, 0.02, 100.0).unwrap();
        assert!((view.beat_period().unwrap() - 5.0).abs() <= view.time_step());
        assert_eq!((view.m_count(), view.n_count()), (1020.0, 1000.0));
        assert!((view.delta_f_min() - 1e-3).abs() < 1e-15);
        assert!(scan("first-order", 1, 0.02, 1.0).is_err());
    }

    #[test]
    fn study_respects_bound() {
        let view = study(4, 0.05, 1.0, 2000, 1).unwrap();
        assert!(view.var_emp() >= view.crlb_oracle() - 3.0 * view.var_std_error());
        assert!(study(4, 0.05, 1.0, 50, 1).is_err());
        assert!(study(4, 0.05, 1.0, 50_000, 1).is_err());
    }
}
