//! K-th order intensity-product correlation curves.
//!
//! Four normalized curve families are provided:
//!
//! | kind         | value                                   | fringes per 2π |
//! |--------------|-----------------------------------------|----------------|
//! | `FirstOrder` | `(1 + cos φ)/2`                         | 1              |
//! | `Snl`        | `[(1 + cos φ)/2]^K`                     | 1              |
//! | `SrClosed`   | `[1 + cos(Kφ)]/2`                       | K              |
//! | `SrProduct`  | `∏ sin²(φ − ξ_j)`, 2K factors, max → 1  | measured       |
//!
//! The eraser product is normalized by its empirical maximum over a dense grid,
//! and its fringe density is measured with [`detect_period`] rather than
//! assumed.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, precondition, Error, Result};
use crate::numeric::phase_grid;

/// Grid used to normalize the eraser product.
pub const NORMALIZATION_POINTS: usize = 1 << 16;
/// Default sampling of one 2π period.
pub const DEFAULT_GRID_POINTS: usize = 4096;
/// Minimum samples per fringe accepted by [`count_maxima`].
pub const MIN_SAMPLES_PER_FRINGE: f64 = 16.0;

const PERIOD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    FirstOrder,
    Snl,
    SrProduct,
    SrClosed,
}

impl CurveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveKind::FirstOrder => "first-order",
            CurveKind::Snl => "snl",
            CurveKind::SrProduct => "sr-product",
            CurveKind::SrClosed => "sr-closed",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-order" => Ok(CurveKind::FirstOrder),
            "snl" => Ok(CurveKind::Snl),
            "sr-product" => Ok(CurveKind::SrProduct),
            "sr-closed" => Ok(CurveKind::SrClosed),
            other => Err(domain(format!("unknown curve kind `{other}`"))),
        }
    }
}

/// Which fringe shifts enter the 2K-factor eraser product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductIndexing {
    /// `ξ_j = 2πj/K` for `j = 0..2K`, the shift rule applied to every index.
    PaperLiteral,
    /// `ξ_j = πj/K` for `j = 0..2K`, 2K shifts spread evenly over 2π.
    #[default]
    HalfStep,
}

impl ProductIndexing {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProductIndexing::PaperLiteral => "paper-literal",
            ProductIndexing::HalfStep => "half-step",
        }
    }

    fn shifts(&self, k: u32) -> Vec<f64> {
        let step = match self {
            ProductIndexing::PaperLiteral => TAU / k as f64,
            ProductIndexing::HalfStep => TAU / (2 * k) as f64,
        };
        (0..2 * k).map(|j| step * j as f64).collect()
    }
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        Err(domain("correlation order K must be at least 1"))
    } else {
        Ok(())
    }
}

/// Normalized first-order eraser fringe, `(1 + cos φ)/2`.
pub fn first_order(phi: f64) -> f64 {
    0.5 * (1.0 + phi.cos())
}

/// Shot-noise-limited K-fold product of identical first-order fringes.
pub fn snl_correlation(phi: f64, k: u32) -> Result<f64> {
    check_order(k)?;
    Ok(first_order(phi).powi(k as i32))
}

/// Closed superresolution form `[1 + cos(Kφ)]/2`.
pub fn sr_closed(phi: f64, k: u32) -> Result<f64> {
    check_order(k)?;
    Ok(0.5 * (1.0 + (k as f64 * phi).cos()))
}

/// Normalized eraser product at a single phase.
///
/// Builds the normalization each call; use [`Correlation`] to evaluate many
/// points.
pub fn sr_product(phi: f64, k: u32, indexing: ProductIndexing) -> Result<f64> {
    Ok(Correlation::with_indexing(CurveKind::SrProduct, k, indexing)?.eval(phi))
}

/// Product of `(2 sin(φ − ξ_j))²`. The factor 4 per term keeps the product
/// O(1) for large K; it cancels under normalization.
fn raw_product(phi: f64, shifts: &[f64]) -> f64 {
    shifts
        .iter()
        .map(|xi| {
            let s = 2.0 * (phi - xi).sin();
            s * s
        })
        .product()
}

/// A correlation curve family at fixed order, ready for repeated evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    kind: CurveKind,
    order: u32,
    indexing: ProductIndexing,
    shifts: Vec<f64>,
    norm: f64,
    fringes_per_cycle: u32,
}

impl Correlation {
    pub fn new(kind: CurveKind, order: u32) -> Result<Self> {
        Self::with_indexing(kind, order, ProductIndexing::default())
    }

    pub fn with_indexing(kind: CurveKind, order: u32, indexing: ProductIndexing) -> Result<Self> {
        check_order(order)?;
        let mut corr = Correlation {
            kind,
            order,
            indexing,
            shifts: Vec::new(),
            norm: 1.0,
            fringes_per_cycle: match kind {
                CurveKind::FirstOrder | CurveKind::Snl => 1,
                CurveKind::SrClosed => order,
                CurveKind::SrProduct => 0,
            },
        };
        if kind == CurveKind::SrProduct {
            corr.shifts = indexing.shifts(order);
            corr.norm = phase_grid(NORMALIZATION_POINTS)
                .into_iter()
                .map(|phi| raw_product(phi, &corr.shifts))
                .fold(0.0, f64::max);
            let points = 512.max(16 * order as usize + 1);
            let period = detect_period(|phi| corr.eval(phi), 8 * order, points)
                .ok_or_else(|| precondition("eraser product is not 2π-periodic"))?;
            corr.fringes_per_cycle = (TAU / period).round() as u32;
        }
        Ok(corr)
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn indexing(&self) -> ProductIndexing {
        self.indexing
    }

    /// Number of fringes per 2π of fundamental phase.
    pub fn fringes_per_cycle(&self) -> u32 {
        self.fringes_per_cycle
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let k = self.order;
        match self.kind {
            CurveKind::FirstOrder => first_order(phi),
            CurveKind::Snl => first_order(phi).powi(k as i32),
            CurveKind::SrClosed => 0.5 * (1.0 + (k as f64 * phi).cos()),
            CurveKind::SrProduct => (raw_product(phi, &self.shifts) / self.norm).min(1.0),
        }
    }
}

/// How the ends of a sampled curve are treated when locating extrema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveDomain {
    /// One full period `[0, 2π)`; the ends wrap around.
    Phase,
    /// Half-open scan window `[0, ΔT)`; the first sample may be a maximum,
    /// the last never is.
    ScanTime,
}

/// Sampled normalized correlation values on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub order: u32,
    pub kind: CurveKind,
    pub domain: CurveDomain,
    /// Number of fringes the grid is expected to contain.
    pub expected_fringes: f64,
}

impl CorrelationCurve {
    /// Samples `corr` over one period `[0, 2π)`.
    pub fn over_phase(corr: &Correlation, points: usize) -> Result<Self> {
        if points < 3 {
            return Err(domain(format!("grid needs at least 3 points, got {points}")));
        }
        let grid = phase_grid(points);
        let values = grid.iter().map(|&phi| corr.eval(phi)).collect();
        Ok(CorrelationCurve {
            grid,
            values,
            order: corr.order(),
            kind: corr.kind(),
            domain: CurveDomain::Phase,
            expected_fringes: corr.fringes_per_cycle() as f64,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        if self.grid.len() < 2 {
            0.0
        } else {
            self.grid[1] - self.grid[0]
        }
    }

    pub fn samples_per_fringe(&self) -> f64 {
        if self.expected_fringes <= 0.0 {
            f64::INFINITY
        } else {
            self.len() as f64 / self.expected_fringes
        }
    }

    /// `x,value` CSV with a header row and 17 significant digits.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W, x_label: &str) -> std::io::Result<()> {
        writeln!(out, "{x_label},value")?;
        for (x, v) in self.grid.iter().zip(&self.values) {
            writeln!(out, "{x:.16e},{v:.16e}")?;
        }
        Ok(())
    }
}

/// Equal-value runs of a sampled sequence, as (value, first index, length).
fn runs(values: &[f64], start: usize) -> Vec<(f64, usize, usize)> {
    let n = values.len();
    let mut out: Vec<(f64, usize, usize)> = Vec::new();
    for off in 0..n {
        let i = (start + off) % n;
        match out.last_mut() {
            Some(last) if last.0 == values[i] => last.2 += 1,
            _ => out.push((values[i], i, 1)),
        }
    }
    out
}

/// Positions of the strict local maxima of `curve`. A plateau counts once, at
/// its midpoint.
pub fn locate_maxima(curve: &CorrelationCurve) -> Vec<f64> {
    let n = curve.len();
    if n < 2 {
        return Vec::new();
    }
    let step = curve.step();
    let position = |first: usize, len: usize| curve.grid[0] + (first as f64 + (len - 1) as f64 / 2.0) * step;
    let mut maxima = Vec::new();
    match curve.domain {
        CurveDomain::Phase => {
            let Some(start) = (0..n).find(|&i| curve.values[i] != curve.values[(i + n - 1) % n]) else {
                return maxima;
            };
            let r = runs(&curve.values, start);
            let m = r.len();
            for (idx, &(v, first, len)) in r.iter().enumerate() {
                let prev = r[(idx + m - 1) % m].0;
                let next = r[(idx + 1) % m].0;
                if v > prev && v > next {
                    let mut pos = position(first, len);
                    if pos >= TAU {
                        pos -= TAU;
                    }
                    maxima.push(pos);
                }
            }
            maxima.sort_by(f64::total_cmp);
        }
        CurveDomain::ScanTime => {
            let r = runs(&curve.values, 0);
            let m = r.len();
            for (idx, &(v, first, len)) in r.iter().enumerate() {
                if idx + 1 == m {
                    break;
                }
                let next = r[idx + 1].0;
                let is_max = if idx == 0 {
                    v > next
                } else {
                    v > r[idx - 1].0 && v > next
                };
                if is_max {
                    maxima.push(position(first, len));
                }
            }
        }
    }
    maxima
}

/// Number of strict local maxima (fringes) on the curve's grid.
pub fn count_maxima(curve: &CorrelationCurve) -> Result<usize> {
    let spf = curve.samples_per_fringe();
    if spf < MIN_SAMPLES_PER_FRINGE {
        return Err(precondition(format!(
            "undersampled curve: {spf:.2} samples per fringe, need at least {MIN_SAMPLES_PER_FRINGE}"
        )));
    }
    Ok(locate_maxima(curve).len())
}

/// Full width of the central peak (at φ = 0) at `level`, linearly
/// interpolated between grid points.
pub fn peak_width(curve: &CorrelationCurve, level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(domain(format!("peak level must lie in (0, 1), got {level}")));
    }
    if curve.domain != CurveDomain::Phase {
        return Err(precondition("peak width needs a periodic phase-domain curve"));
    }
    let n = curve.len();
    let v = &curve.values;
    if n < 3 || v[0] < level {
        return Err(precondition(format!("central value does not reach level {level}")));
    }
    let step = curve.step();
    let half_width = |dir: isize| -> Result<f64> {
        let at = |off: usize| v[((off as isize * dir).rem_euclid(n as isize)) as usize];
        for off in 1..=n / 2 {
            let (a, b) = (at(off - 1), at(off));
            if b < level {
                return Ok(((off - 1) as f64 + (a - level) / (a - b)) * step);
            }
        }
        Err(precondition(format!(
            "level {level} is not bracketed by the central peak"
        )))
    };
    Ok(half_width(1)? + half_width(-1)?)
}

/// Smallest period of the form `2π/m`, `m ≤ max_harmonic`, under which `f`
/// repeats to within 1e-9 at `points` sample phases. `None` when `f` is not
/// 2π-periodic.
pub fn detect_period<F: Fn(f64) -> f64>(f: F, max_harmonic: u32, points: usize) -> Option<f64> {
    let grid = phase_grid(points.max(2));
    let base: Vec<f64> = grid.iter().map(|&phi| f(phi)).collect();
    (1..=max_harmonic.max(1)).rev().find_map(|m| {
        let shift = TAU / m as f64;
        let repeats = grid
            .iter()
            .zip(&base)
            .all(|(&phi, &v)| (f(phi + shift) - v).abs() <= PERIOD_TOLERANCE);
        repeats.then_some(shift)
    })
}

/// Comparison of the normalized eraser product with the closed form of the
/// same order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductAudit {
    pub order: u32,
    pub indexing: ProductIndexing,
    /// Detected period of the normalized product.
    pub product_period: f64,
    /// Detected period of `[1 + cos(Kφ)]/2`.
    pub closed_period: f64,
    /// Phase offset of the closed form that minimizes the max deviation.
    pub best_shift: f64,
    /// `min_s max_φ |product(φ) − closed(φ − s)|`.
    pub max_deviation: f64,
}

/// Measures how far the normalized eraser product is from the closed form.
///
/// `points` phases are compared against `shifts` candidate alignments spread
/// over one closed-form period.
pub fn audit_product(k: u32, indexing: ProductIndexing, points: usize, shifts: usize) -> Result<ProductAudit> {
    let product = Correlation::with_indexing(CurveKind::SrProduct, k, indexing)?;
    let closed = Correlation::new(CurveKind::SrClosed, k)?;
    let probe = 512.max(16 * k as usize + 1);
    let product_period = detect_period(|phi| product.eval(phi), 8 * k, probe)
        .ok_or_else(|| precondition("eraser product is not 2π-periodic"))?;
    let closed_period = detect_period(|phi| closed.eval(phi), 8 * k, probe)
        .ok_or_else(|| precondition("closed form is not 2π-periodic"))?;

    let grid = phase_grid(points);
    let values: Vec<f64> = grid.iter().map(|&phi| product.eval(phi)).collect();
    let shifts = shifts.max(1);
    let mut best = (0.0, f64::INFINITY);
    for s_idx in 0..shifts {
        let s = closed_period * s_idx as f64 / shifts as f64;
        let mut dev = 0.0_f64;
        for (&phi, &p) in grid.iter().zip(&values) {
            dev = dev.max((p - closed.eval(phi - s)).abs());
            if dev >= best.1 {
                break;
            }
        }
        if dev < best.1 {
            best = (s, dev);
        }
    }
    Ok(ProductAudit {
        order: k,
        indexing,
        product_period,
        closed_period,
        best_shift: best.0,
        max_deviation: best.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn curve(kind: CurveKind, k: u32, points: usize) -> CorrelationCurve {
        CorrelationCurve::over_phase(&Correlation::new(kind, k).unwrap(), points).unwrap()
    }

    #[test]
    fn scalar_values() {
        assert_eq!(first_order(0.0), 1.0);
        assert_abs_diff_eq!(first_order(PI), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(first_order(FRAC_PI_2), 0.5, epsilon = 1e-16);
        assert_eq!(snl_correlation(0.0, 7).unwrap(), 1.0);
        assert_abs_diff_eq!(snl_correlation(PI, 3).unwrap(), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(snl_correlation(FRAC_PI_2, 2).unwrap(), 0.25, epsilon = 1e-16);
        assert_eq!(sr_closed(0.0, 10).unwrap(), 1.0);
        assert_abs_diff_eq!(sr_closed(PI / 10.0, 10).unwrap(), 0.0, epsilon = 1e-16);
        for phi in [0.1, 1.0, 2.5, -3.0] {
            assert_abs_diff_eq!(sr_closed(phi, 1).unwrap(), first_order(phi), epsilon = 1e-16);
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(snl_correlation(0.0, 0).is_err());
        assert!(sr_closed(0.0, 0).is_err());
        assert!(sr_product(0.0, 0, ProductIndexing::HalfStep).is_err());
        assert!(Correlation::new(CurveKind::FirstOrder, 0).is_err());
    }

    #[test]
    fn product_vanishes_at_shifts() {
        for indexing in [ProductIndexing::PaperLiteral, ProductIndexing::HalfStep] {
            let corr = Correlation::with_indexing(CurveKind::SrProduct, 3, indexing).unwrap();
            for xi in indexing.shifts(3) {
                assert_abs_diff_eq!(corr.eval(xi), 0.0, epsilon = 1e-20);
            }
        }
    }

    #[test]
    fn product_normalized_to_unit_max() {
        let c = curve(CurveKind::SrProduct, 4, 1 << 14);
        let max = c.values.iter().copied().fold(0.0, f64::max);
        assert!(max <= 1.0 && max > 0.999);
    }

    #[test]
    fn half_step_product_period() {
        // Oracle: direct scan of candidate periods 2π/m against a dense grid.
        let corr = Correlation::with_indexing(CurveKind::SrProduct, 2, ProductIndexing::HalfStep).unwrap();
        let grid = phase_grid(1 << 14);
        let best_m = (1..=32u32)
            .filter(|&m| {
                grid.iter()
                    .all(|&phi| (corr.eval(phi + TAU / m as f64) - corr.eval(phi)).abs() < 1e-9)
            })
            .max()
            .unwrap();
        assert_eq!(best_m, 4);
        let period = detect_period(|phi| corr.eval(phi), 16, 512).unwrap();
        assert_abs_diff_eq!(period, TAU / best_m as f64, epsilon = 1e-15);
        assert_eq!(corr.fringes_per_cycle(), 4);
    }

    #[test]
    fn closed_form_period_detection() {
        for k in 1..=16 {
            let p = detect_period(|phi| sr_closed(phi, k).unwrap(), 8 * k, 512).unwrap();
            assert_abs_diff_eq!(p, TAU / k as f64, epsilon = 1e-15);
        }
        assert!(detect_period(|phi| phi, 4, 64).is_none());
    }

    #[test]
    fn maxima_counts() {
        assert_eq!(count_maxima(&curve(CurveKind::SrClosed, 10, 4096)).unwrap(), 10);
        assert_eq!(count_maxima(&curve(CurveKind::FirstOrder, 1, 4096)).unwrap(), 1);
        assert_eq!(count_maxima(&curve(CurveKind::Snl, 10, 4096)).unwrap(), 1);
        for k in 1..=64 {
            assert_eq!(count_maxima(&curve(CurveKind::SrClosed, k, 4096)).unwrap(), k as usize);
        }
    }

    #[test]
    fn undersampled_rejected() {
        let c = curve(CurveKind::SrClosed, 64, 512);
        assert!(matches!(count_maxima(&c), Err(Error::Precondition(_))));
    }

    #[test]
    fn plateau_counts_once() {
        let c = CorrelationCurve {
            grid: (0..8).map(|i| i as f64 * TAU / 8.0).collect(),
            values: vec![0.0, 0.5, 1.0, 1.0, 1.0, 0.5, 0.0, 0.0],
            order: 1,
            kind: CurveKind::FirstOrder,
            domain: CurveDomain::Phase,
            expected_fringes: 0.25,
        };
        let m = locate_maxima(&c);
        assert_eq!(m.len(), 1);
        assert_abs_diff_eq!(m[0], 3.0 * TAU / 8.0, epsilon = 1e-15);
        let flat = CorrelationCurve {
            values: vec![0.7; 8],
            ..c
        };
        assert!(locate_maxima(&flat).is_empty());
    }

    #[test]
    fn scan_window_boundaries() {
        let c = CorrelationCurve {
            grid: (0..6).map(|i| i as f64).collect(),
            values: vec![1.0, 0.2, 0.9, 0.1, 0.5, 0.8],
            order: 1,
            kind: CurveKind::FirstOrder,
            domain: CurveDomain::ScanTime,
            expected_fringes: 0.1,
        };
        assert_eq!(locate_maxima(&c), vec![0.0, 2.0]);
    }

    #[test]
    fn snl_width_ratio_matches_small_angle() {
        let w1 = peak_width(&curve(CurveKind::Snl, 1, 4096), 0.5).unwrap();
        let w4 = peak_width(&curve(CurveKind::Snl, 4, 4096), 0.5).unwrap();
        assert!(((w1 / w4) / 2.0 - 1.0).abs() < 0.05, "ratio {}", w1 / w4);
    }

    #[test]
    fn snl_width_shrinks_as_inverse_sqrt_k() {
        let w1 = peak_width(&curve(CurveKind::Snl, 1, 1 << 14), 0.5).unwrap();
        for k in [4u32, 9, 16, 25] {
            let wk = peak_width(&curve(CurveKind::Snl, k, 1 << 14), 0.5).unwrap();
            let r = wk * (k as f64).sqrt() / w1;
            assert!((0.9..=1.1).contains(&r), "K={k}: {r}");
        }
    }

    #[test]
    fn closed_width_scales_with_k() {
        let w1 = peak_width(&curve(CurveKind::SrClosed, 1, 4096), 0.5).unwrap();
        assert_abs_diff_eq!(w1, PI, epsilon = 1e-5);
        for k in [2u32, 5, 10] {
            let wk = peak_width(&curve(CurveKind::SrClosed, k, 4096), 0.5).unwrap();
            assert!((w1 / wk / k as f64 - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn degenerate_levels() {
        let c = curve(CurveKind::FirstOrder, 1, 1024);
        assert!(peak_width(&c, 1.0).is_err());
        assert!(peak_width(&c, 0.0).is_err());
        let shallow = CorrelationCurve {
            values: c.values.iter().map(|v| 0.5 + 0.5 * v).collect(),
            ..c.clone()
        };
        assert!(peak_width(&shallow, 0.25).is_err());
        assert!(peak_width(&shallow, 0.75).is_ok());
    }

    #[test]
    fn audit_closed_form_against_itself() {
        let a = audit_product(3, ProductIndexing::HalfStep, 1024, 256).unwrap();
        assert_abs_diff_eq!(a.closed_period, TAU / 3.0, epsilon = 1e-15);
        assert!(a.max_deviation >= 0.0);
    }

    #[test]
    fn csv_layout() {
        let c = curve(CurveKind::FirstOrder, 1, 4);
        let mut buf = Vec::new();
        c.write_csv(&mut buf, "phi").unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "phi,value");
        assert_eq!(lines.len(), 5);
        let v: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, c.values[1]);
    }

    proptest! {
        #[test]
        fn curves_stay_in_unit_interval(phi in -50.0f64..50.0, k in 1u32..40) {
            for v in [first_order(phi), snl_correlation(phi, k).unwrap(), sr_closed(phi, k).unwrap()] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }

        #[test]
        fn closed_form_has_period_2pi_over_k(phi in -10.0f64..10.0, k in 1u32..64) {
            let a = sr_closed(phi, k).unwrap();
            let b = sr_closed(phi + TAU / k as f64, k).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
