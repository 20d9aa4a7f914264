//! The four subcommands. Each one computes everything first and then writes
//! its files sequentially, so output bytes never depend on scheduling.

use serde::Serialize;
use srspec_core::correlation::{count_maxima, Correlation, CorrelationCurve, CurveKind, ProductIndexing};
use srspec_core::estimation::{monte_carlo_study, EstimationReport, LikelihoodModel};
use srspec_core::numeric::log_log_slope;
use srspec_core::spectrometer::{beat_trace, fringe_counts, scan_trace, Beam, FringeReport};

use crate::audit::{run_audit, AuditReport};
use crate::error::CliError;
use crate::output::{full, OutputDir};
use crate::scenario::{CurvesPayload, McStudyPayload, SpectrometerPayload};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveEntry {
    pub kind: CurveKind,
    pub order: u32,
    /// Only set for `sr-product`.
    pub indexing: Option<ProductIndexing>,
    pub file: String,
    pub points: usize,
    pub fringes_per_cycle: u32,
    /// `None` when the grid is too coarse to resolve the fringes.
    pub maxima: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvesIndex {
    pub grid: usize,
    pub curves: Vec<CurveEntry>,
}

pub fn curve_file_name(kind: CurveKind, order: u32, indexing: ProductIndexing) -> String {
    match kind {
        CurveKind::SrProduct => format!("curve_{kind}-{}_k{order}.csv", indexing.as_str()),
        _ => format!("curve_{kind}_k{order}.csv"),
    }
}

pub fn cmd_curves(payload: &CurvesPayload, out: &mut OutputDir) -> Result<CurvesIndex, CliError> {
    let mut curves = Vec::new();
    for &kind in &payload.kinds {
        for &order in &payload.orders {
            let corr = Correlation::with_indexing(kind, order, payload.indexing)?;
            let curve = CorrelationCurve::over_phase(&corr, payload.grid)?;
            let file = curve_file_name(kind, order, payload.indexing);
            out.write_with(&file, |w| curve.write_csv(w, "phi"))?;
            let maxima = match count_maxima(&curve) {
                Ok(m) => Some(m),
                Err(e) => {
                    eprintln!("warning: {file}: {e}");
                    None
                }
            };
            curves.push(CurveEntry {
                kind,
                order,
                indexing: (kind == CurveKind::SrProduct).then_some(payload.indexing),
                file,
                points: curve.len(),
                fringes_per_cycle: corr.fringes_per_cycle(),
                maxima,
            });
        }
    }
    let index = CurvesIndex {
        grid: payload.grid,
        curves,
    };
    out.write_json("curves.json", &index)?;
    Ok(index)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeatSummary {
    pub beat_period: Option<f64>,
    pub time_step: f64,
    pub nulls: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrometerSummary {
    pub fringes: FringeReport,
    pub beat: BeatSummary,
}

pub fn cmd_spectrometer(payload: &SpectrometerPayload, out: &mut OutputDir) -> Result<SpectrometerSummary, CliError> {
    let config = payload.to_config()?;
    if !payload.normalized && config.exceeds_stability_window() {
        eprintln!(
            "warning: scan duration {:.3e} s is at least 1 µs; environmental drift is not modelled",
            config.scan_duration()
        );
    }
    let fringes = fringe_counts(&config)?;
    let reference = scan_trace(&config, Beam::Reference)?;
    let target = scan_trace(&config, Beam::Target)?;
    let beat = beat_trace(&config)?;

    out.write_with("trace_reference.csv", |w| reference.write_csv(w, "t"))?;
    out.write_with("trace_target.csv", |w| target.write_csv(w, "t"))?;
    out.write_with("beat.csv", |w| beat.write_csv(w))?;
    let summary = SpectrometerSummary {
        beat: BeatSummary {
            beat_period: beat.beat_period,
            time_step: beat.time_step(),
            nulls: beat.nulls,
        },
        fringes,
    };
    out.write_json("beat.json", &summary.beat)?;
    out.write_json("fringe_report.json", &summary.fringes)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub k: u32,
    pub sigma: f64,
    pub file: String,
    pub var_emp: f64,
    pub var_std_error: f64,
    pub bias: f64,
    pub crlb_paper: f64,
    pub crlb_oracle: f64,
}

/// Log-log slopes of variance against K at fixed σ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub sigma: f64,
    pub var_emp_slope: Option<f64>,
    pub crlb_paper_slope: Option<f64>,
    pub crlb_oracle_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudySummary {
    pub seed: u64,
    pub trials: u64,
    pub amplitude: f64,
    pub phi_true: f64,
    pub rows: Vec<StudyRow>,
    pub scaling: Vec<ScalingFit>,
}

pub fn report_file_name(k: u32, sigma: f64) -> String {
    format!("report_k{k}_sigma{sigma}.json")
}

pub fn cmd_mc_study(payload: &McStudyPayload, seed: u64, out: &mut OutputDir) -> Result<StudySummary, CliError> {
    let mut reports: Vec<(String, EstimationReport)> = Vec::new();
    let mut rows = Vec::new();
    for &k in &payload.orders {
        for &sigma in &payload.sigmas {
            let model = LikelihoodModel::with_sigma(payload.amplitude, sigma, k)?;
            let outcome = monte_carlo_study(&model, payload.phi_true, payload.trials, seed)?;
            let file = report_file_name(k, sigma);
            let r = &outcome.report;
            rows.push(StudyRow {
                k,
                sigma,
                file: file.clone(),
                var_emp: r.var_emp,
                var_std_error: outcome.var_std_error,
                bias: outcome.bias,
                crlb_paper: r.crlb_paper,
                crlb_oracle: r.crlb_oracle,
            });
            reports.push((file, outcome.report));
        }
    }

    let scaling = payload
        .sigmas
        .iter()
        .map(|&sigma| {
            let at: Vec<&StudyRow> = rows.iter().filter(|r| r.sigma == sigma).collect();
            let ks: Vec<f64> = at.iter().map(|r| r.k as f64).collect();
            let slope = |f: fn(&StudyRow) -> f64| log_log_slope(&ks, &at.iter().map(|r| f(r)).collect::<Vec<_>>());
            ScalingFit {
                sigma,
                var_emp_slope: slope(|r| r.var_emp),
                crlb_paper_slope: slope(|r| r.crlb_paper),
                crlb_oracle_slope: slope(|r| r.crlb_oracle),
            }
        })
        .collect();

    for (file, report) in &reports {
        out.write_json(file, report)?;
    }
    out.write_with("summary.csv", |w| {
        writeln!(w, "k,sigma,var_emp,crlb_paper,crlb_oracle")?;
        for r in &rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.k,
                full(r.sigma),
                full(r.var_emp),
                full(r.crlb_paper),
                full(r.crlb_oracle)
            )?;
        }
        Ok(())
    })?;
    let summary = StudySummary {
        seed,
        trials: payload.trials,
        amplitude: payload.amplitude,
        phi_true: payload.phi_true,
        rows,
        scaling,
    };
    out.write_json("summary.json", &summary)?;
    Ok(summary)
}

/// Runs the audit and writes `verify_report.txt` and `verify_report.json`.
/// The caller turns a failed oracle check into the exit code.
pub fn cmd_verify(out: &mut OutputDir) -> Result<AuditReport, CliError> {
    let report = run_audit();
    out.write_text("verify_report.txt", &report.render())?;
    out.write_json("verify_report.json", &report)?;
    Ok(report)
}
