//! Gaussian phase-estimation model for the K-set eraser bank.
//!
//! Each set `n` reports `x[n] = A(1 + cos(φ + ξ_n)) + w[n]` with
//! `w[n] ~ N(0, σ²)` i.i.d. This module provides the log-likelihood and its
//! curvature, two Fisher-information routes (the closed value `K²A²/(2σ²)` and
//! an independent oracle), a maximum-likelihood phase estimator, and
//! Monte-Carlo variance studies with deterministic per-trial random streams.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, precondition, Result};
use crate::numeric::{compensated_sum, phase_grid, wrap_pi, wrap_tau};
use crate::optics::{make_phase_mask, PhaseMask};

/// Coarse grid used by [`mle_phase`] before refinement.
pub const MLE_GRID_POINTS: usize = 2048;
/// Golden-section iterations after the coarse search.
pub const MLE_REFINE_ITERATIONS: usize = 80;
/// Smallest trial count accepted by [`monte_carlo_study`].
pub const MIN_TRIALS: u64 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodModel {
    amplitude: f64,
    sigma2: f64,
    mask: PhaseMask,
    /// `(cos ξ_n, sin ξ_n)`
    rotors: Vec<(f64, f64)>,
}

impl LikelihoodModel {
    pub fn new(amplitude: f64, sigma2: f64, order: u32) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(domain(format!("amplitude must be positive, got {amplitude}")));
        }
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(domain(format!("noise variance must be positive, got {sigma2}")));
        }
        let mask = make_phase_mask(order)?;
        let rotors = mask.shifts().iter().map(|xi| (xi.cos(), xi.sin())).collect();
        Ok(Self {
            amplitude,
            sigma2,
            mask,
            rotors,
        })
    }

    /// Convenience constructor from the noise standard deviation.
    pub fn with_sigma(amplitude: f64, sigma: f64, order: u32) -> Result<Self> {
        Self::new(amplitude, sigma * sigma, order)
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn order(&self) -> u32 {
        self.mask.order()
    }

    pub fn mask(&self) -> &PhaseMask {
        &self.mask
    }

    /// `(cos φ′_n, sin φ′_n)` by angle addition, so that rounding of
    /// `φ + ξ_n` does not enter the result.
    pub fn phasors(&self, phi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (s, c) = phi.sin_cos();
        self.rotors
            .iter()
            .map(move |&(cx, sx)| (c * cx - s * sx, s * cx + c * sx))
    }

    /// Noiseless signal `A(1 + cos(φ + ξ_n))`.
    pub fn mean_signal(&self, phi: f64) -> Vec<f64> {
        self.phasors(phi).map(|(c, _)| self.amplitude * (1.0 + c)).collect()
    }
}

/// One K-long observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleVector(pub Vec<f64>);

impl SampleVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_dims(x: &SampleVector, model: &LikelihoodModel) {
    assert_eq!(
        x.len(),
        model.order() as usize,
        "sample length must equal the mask order"
    );
}

/// Draws one observation at phase `phi`.
pub fn sample<R: Rng + ?Sized>(model: &LikelihoodModel, phi: f64, rng: &mut R) -> SampleVector {
    let sigma = model.sigma2.sqrt();
    SampleVector(
        model
            .mean_signal(phi)
            .into_iter()
            .map(|m| {
                let z: f64 = rng.sample(StandardNormal);
                m + sigma * z
            })
            .collect(),
    )
}

/// Random stream for trial `index` of a study seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn residual_sum_squares(x: &[f64], phi: f64, model: &LikelihoodModel) -> f64 {
    let a = model.amplitude;
    x.iter()
        .zip(model.phasors(phi))
        .map(|(xn, (c, _))| {
            let r = xn - a * (1.0 + c);
            r * r
        })
        .sum()
}

/// `−(K/2) ln(2πσ²) − Σ [x[n] − A(1 + cos φ′_n)]² / (2σ²)`
pub fn log_likelihood(x: &SampleVector, phi: f64, model: &LikelihoodModel) -> f64 {
    check_dims(x, model);
    let k = model.order() as f64;
    -0.5 * k * (TAU * model.sigma2).ln() - residual_sum_squares(&x.0, phi, model) / (2.0 * model.sigma2)
}

/// First derivative of [`log_likelihood`] in φ.
pub fn score(x: &SampleVector, phi: f64, model: &LikelihoodModel) -> f64 {
    check_dims(x, model);
    let a = model.amplitude;
    let s: f64 =
        x.0.iter()
            .zip(model.phasors(phi))
            .map(|(xn, (c, s))| (xn - a * (1.0 + c)) * s)
            .sum();
    -a * s / model.sigma2
}

/// Bracket `Σ [x[n] cos φ′_n − A(cos 2φ′_n + cos φ′_n)]` of the curvature.
pub fn curvature_bracket(x: &SampleVector, phi: f64, model: &LikelihoodModel) -> f64 {
    check_dims(x, model);
    let a = model.amplitude;
    x.0.iter()
        .zip(model.phasors(phi))
        .map(|(xn, (c, s))| xn * c - a * ((c * c - s * s) + c))
        .sum()
}

/// Second derivative of the log-likelihood,
/// `−(A/σ²) Σ [x[n] cos φ′_n − A(cos 2φ′_n + cos φ′_n)]`.
pub fn d2_loglik(x: &SampleVector, phi: f64, model: &LikelihoodModel) -> f64 {
    -model.amplitude / model.sigma2 * curvature_bracket(x, phi, model)
}

/// Reduced bracket `A Σ [cos² φ′_n + w[n] cos φ′_n − cos 2φ′_n]`, equal to
/// [`curvature_bracket`] when `x[n] = A(1 + cos φ′_n + w[n])`.
pub fn reduced_bracket(noise: &[f64], phi: f64, model: &LikelihoodModel) -> f64 {
    let a = model.amplitude;
    a * noise
        .iter()
        .zip(model.mask.shifted_phases(phi))
        .map(|(w, p)| p.cos().powi(2) + w * p.cos() - (2.0 * p).cos())
        .sum::<f64>()
}

/// Closed Fisher value `K²A²/(2σ²)`, kept verbatim for comparison.
pub fn fisher_paper(model: &LikelihoodModel) -> f64 {
    let k = model.order() as f64;
    k * k * model.amplitude.powi(2) / (2.0 * model.sigma2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FisherMethod {
    /// `(A²/σ²) Σ sin²(φ + ξ_n)` for a Gaussian mean model.
    Analytic,
    /// Mean of `−d2_loglik` over fresh samples at φ.
    MonteCarlo { trials: u64, seed: u64 },
}

pub fn fisher_oracle(model: &LikelihoodModel, phi: f64, method: FisherMethod) -> f64 {
    match method {
        FisherMethod::Analytic => {
            let s: f64 = model.mask.shifted_phases(phi).map(|p| p.sin().powi(2)).sum();
            model.amplitude.powi(2) / model.sigma2 * s
        }
        FisherMethod::MonteCarlo { trials, seed } => {
            let curvature = map_trials(trials, |i| {
                let mut rng = trial_rng(seed, i);
                let x = sample(model, phi, &mut rng);
                -d2_loglik(&x, phi, model)
            });
            compensated_sum(curvature) / trials as f64
        }
    }
}

/// `1/fisher`
pub fn crlb(fisher: f64) -> Result<f64> {
    if !(fisher > 0.0) {
        return Err(domain(format!("Fisher information must be positive, got {fisher}")));
    }
    Ok(1.0 / fisher)
}

/// Maximum-likelihood phase in [0, 2π).
///
/// For K ≤ 2 every `cos(φ + ξ_n)` is even in φ, so φ and −φ are equally
/// likely; the estimate is reported on the [0, π] branch.
pub fn mle_phase(x: &SampleVector, model: &LikelihoodModel) -> f64 {
    check_dims(x, model);
    let grid = phase_grid(MLE_GRID_POINTS);
    let step = TAU / MLE_GRID_POINTS as f64;
    let cost = |phi: f64| residual_sum_squares(&x.0, phi, model);
    let mut best = (0.0, f64::INFINITY);
    for phi in grid {
        let c = cost(phi);
        if c < best.1 {
            best = (phi, c);
        }
    }

    // golden-section search on [best − step, best + step]
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (cost(c), cost(d));
    for _ in 0..MLE_REFINE_ITERATIONS {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = cost(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = cost(d);
        }
    }
    let refined = wrap_tau(0.5 * (lo + hi));
    if model.order() <= 2 && refined > PI {
        TAU - refined
    } else {
        refined
    }
}

/// Monte-Carlo variance study output as serialized to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimationReport {
    pub phi_hat: f64,
    pub var_emp: f64,
    pub fisher_paper: f64,
    pub fisher_oracle: f64,
    pub crlb_paper: f64,
    pub crlb_oracle: f64,
    pub trials: u64,
    pub seed: u64,
}

/// A study's report plus sampling statistics that are not serialized.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyOutcome {
    pub report: EstimationReport,
    /// Standard error of `var_emp`.
    pub var_std_error: f64,
    /// Mean wrapped residual `φ̂ − φ_true`.
    pub bias: f64,
}

#[cfg(feature = "parallel")]
fn map_trials<T: Send, F: Fn(u64) -> T + Sync + Send>(trials: u64, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_trials<T, F: Fn(u64) -> T>(trials: u64, f: F) -> Vec<T> {
    (0..trials).map(f).collect()
}

fn wrapped_residuals(model: &LikelihoodModel, phi_true: f64, trials: u64, seed: u64, stream_offset: u64) -> Vec<f64> {
    map_trials(trials, |i| {
        let mut rng = trial_rng(seed, stream_offset + i);
        let x = sample(model, phi_true, &mut rng);
        wrap_pi(mle_phase(&x, model) - phi_true)
    })
}

fn summarize(model: &LikelihoodModel, phi_true: f64, seed: u64, residuals: &[f64]) -> Result<StudyOutcome> {
    let n = residuals.len() as f64;
    let bias = compensated_sum(residuals.iter().copied()) / n;
    let var_emp = compensated_sum(residuals.iter().map(|r| r * r)) / n;
    let m4 = compensated_sum(residuals.iter().map(|r| r.powi(4))) / n;
    let fisher_p = fisher_paper(model);
    let fisher_o = fisher_oracle(model, phi_true, FisherMethod::Analytic);
    Ok(StudyOutcome {
        report: EstimationReport {
            phi_hat: wrap_tau(phi_true + bias),
            var_emp,
            fisher_paper: fisher_p,
            fisher_oracle: fisher_o,
            crlb_paper: crlb(fisher_p)?,
            crlb_oracle: crlb(fisher_o)?,
            trials: residuals.len() as u64,
            seed,
        },
        var_std_error: ((m4 - var_emp * var_emp).max(0.0) / n).sqrt(),
        bias,
    })
}

/// Runs `trials` independent sample → MLE cycles at `phi_true`.
///
/// Trial `i` draws from stream `i` of a ChaCha8 generator seeded with `seed`,
/// so the result does not depend on scheduling or thread count. The variance
/// is the mean squared residual wrapped to (−π, π] around `phi_true`.
pub fn monte_carlo_study(model: &LikelihoodModel, phi_true: f64, trials: u64, seed: u64) -> Result<StudyOutcome> {
    if trials < MIN_TRIALS {
        return Err(precondition(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let residuals = wrapped_residuals(model, phi_true, trials, seed, 0);
    summarize(model, phi_true, seed, &residuals)
}

/// Variance averaged over several true phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragedStudy {
    pub phases: Vec<f64>,
    pub var_emp: Vec<f64>,
    pub crlb_oracle: Vec<f64>,
    pub mean_var_emp: f64,
    pub mean_crlb_oracle: f64,
}

/// Repeats [`monte_carlo_study`] at each phase in `phases` on disjoint random
/// streams and averages the empirical variances.
pub fn phi_averaged_study(model: &LikelihoodModel, phases: &[f64], trials: u64, seed: u64) -> Result<AveragedStudy> {
    if trials < MIN_TRIALS {
        return Err(precondition(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    if phases.is_empty() {
        return Err(domain("phase list is empty"));
    }
    let mut var_emp = Vec::with_capacity(phases.len());
    let mut crlb_oracle = Vec::with_capacity(phases.len());
    for (i, &phi) in phases.iter().enumerate() {
        let residuals = wrapped_residuals(model, phi, trials, seed, i as u64 * trials);
        let out = summarize(model, phi, seed, &residuals)?;
        var_emp.push(out.report.var_emp);
        crlb_oracle.push(out.report.crlb_oracle);
    }
    let n = phases.len() as f64;
    Ok(AveragedStudy {
        phases: phases.to_vec(),
        mean_var_emp: compensated_sum(var_emp.iter().copied()) / n,
        mean_crlb_oracle: compensated_sum(crlb_oracle.iter().copied()) / n,
        var_emp,
        crlb_oracle,
    })
}

/// Direct summation `Σ_n cos²(φ + 2πn/K)`.
pub fn appendix_sum(k: u32, phi: f64) -> Result<f64> {
    let mask = make_phase_mask(k)?;
    Ok(mask.shifted_phases(phi).map(|p| p.cos().powi(2)).sum())
}

/// Direct double summation `2 Σ_{j>i} cos φ′_j cos φ′_i`.
pub fn appendix_cross_terms(k: u32, phi: f64) -> Result<f64> {
    if k < 2 {
        return Err(domain(format!("cross terms need K ≥ 2, got {k}")));
    }
    let c: Vec<f64> = make_phase_mask(k)?.shifted_phases(phi).map(f64::cos).collect();
    let mut acc = 0.0;
    for j in 1..c.len() {
        for i in 0..j {
            acc += c[j] * c[i];
        }
    }
    Ok(2.0 * acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn model_validation() {
        assert!(LikelihoodModel::new(0.0, 1.0, 4).is_err());
        assert!(LikelihoodModel::new(1.0, 0.0, 4).is_err());
        assert!(LikelihoodModel::new(1.0, 1.0, 0).is_err());
        assert!(LikelihoodModel::new(1.0, f64::NAN, 2).is_err());
    }

    #[test]
    fn noiseless_limit() {
        let model = LikelihoodModel::new(1.0, 1e-300, 4).unwrap();
        let x = sample(&model, 0.0, &mut trial_rng(7, 0));
        let expected = [2.0, 1.0, 0.0, 1.0];
        for (a, b) in x.as_slice().iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn sample_mean_converges() {
        let model = LikelihoodModel::new(1.3, 0.2, 3).unwrap();
        let phi = 0.4;
        let n = 100_000u64;
        let mut sums = [0.0; 3];
        let mut rng = trial_rng(11, 0);
        for _ in 0..n {
            for (s, v) in sums.iter_mut().zip(sample(&model, phi, &mut rng).0) {
                *s += v;
            }
        }
        let tol = 5.0 * model.sigma2().sqrt() / (n as f64).sqrt();
        for (s, m) in sums.iter().zip(model.mean_signal(phi)) {
            assert!((s / n as f64 - m).abs() < tol);
        }
    }

    #[test]
    fn sample_is_reproducible() {
        let model = LikelihoodModel::new(1.0, 0.1, 5).unwrap();
        let a = sample(&model, 1.0, &mut trial_rng(3, 42));
        let b = sample(&model, 1.0, &mut trial_rng(3, 42));
        let c = sample(&model, 1.0, &mut trial_rng(3, 43));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn log_likelihood_at_truth_is_normalization() {
        let model = LikelihoodModel::new(2.0, 0.3, 6).unwrap();
        let x = SampleVector(model.mean_signal(0.9));
        let expected = -3.0 * (TAU * 0.3_f64).ln();
        assert_abs_diff_eq!(log_likelihood(&x, 0.9, &model), expected, epsilon = 1e-12);
    }

    #[test]
    fn grid_argmax_near_truth() {
        let model = LikelihoodModel::with_sigma(1.0, 0.001, 4).unwrap();
        let x = sample(&model, 2.2, &mut trial_rng(1, 0));
        let grid = phase_grid(4096);
        let best = grid
            .iter()
            .copied()
            .max_by(|a, b| log_likelihood(&x, *a, &model).total_cmp(&log_likelihood(&x, *b, &model)))
            .unwrap();
        assert!((best - 2.2).abs() <= TAU / 4096.0);
    }

    #[test]
    fn fisher_values() {
        let f = |k, s2| fisher_paper(&LikelihoodModel::new(1.0, s2, k).unwrap());
        assert_eq!(f(1, 1.0), 0.5);
        assert_eq!(f(4, 1.0), 8.0);
        assert_eq!(f(10, 0.5), 100.0);

        let m4 = LikelihoodModel::new(1.0, 1.0, 4).unwrap();
        for phi in [0.0, 0.3, 2.0] {
            assert_abs_diff_eq!(fisher_oracle(&m4, phi, FisherMethod::Analytic), 2.0, epsilon = 1e-12);
        }
        let m1 = LikelihoodModel::new(1.0, 1.0, 1).unwrap();
        assert_abs_diff_eq!(
            fisher_oracle(&m1, FRAC_PI_2, FisherMethod::Analytic),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn monte_carlo_fisher_agrees_with_analytic() {
        let model = LikelihoodModel::new(1.0, 1.0, 4).unwrap();
        let mc = fisher_oracle(
            &model,
            0.7,
            FisherMethod::MonteCarlo {
                trials: 100_000,
                seed: 5,
            },
        );
        assert!((mc / 2.0 - 1.0).abs() < 0.02, "mc = {mc}");
    }

    #[test]
    fn fisher_oracle_phase_dependence() {
        for k in 3..=12 {
            let model = LikelihoodModel::new(1.0, 1.0, k).unwrap();
            let values: Vec<f64> = phase_grid(257)
                .into_iter()
                .map(|phi| fisher_oracle(&model, phi, FisherMethod::Analytic))
                .collect();
            let spread =
                values.iter().copied().fold(f64::MIN, f64::max) - values.iter().copied().fold(f64::MAX, f64::min);
            assert!(spread <= 1e-10, "K={k} spread {spread}");
        }
        for k in 1..=2 {
            let model = LikelihoodModel::new(1.0, 1.0, k).unwrap();
            let a = fisher_oracle(&model, 0.1, FisherMethod::Analytic);
            let b = fisher_oracle(&model, 1.2, FisherMethod::Analytic);
            assert!((a - b).abs() > 0.1);
        }
    }

    #[test]
    fn crlb_inverts() {
        let model = LikelihoodModel::new(1.0, 1.0, 10).unwrap();
        assert_abs_diff_eq!(crlb(fisher_paper(&model)).unwrap(), 0.02, epsilon = 1e-15);
        assert_eq!(crlb(1.0).unwrap(), 1.0);
        assert!(crlb(0.0).is_err());
        assert!(crlb(-2.0).is_err());
    }

    /// Three-point second difference using the steps actually represented
    /// in floating point, `(φ + h) − φ` and `φ − (φ − h)`.
    fn second_difference(x: &SampleVector, phi: f64, model: &LikelihoodModel, h: f64) -> f64 {
        let (up, down) = (phi + h, phi - h);
        let (hp, hm) = (up - phi, phi - down);
        let f = |p| log_likelihood(x, p, model);
        2.0 * (f(up) * hm + f(down) * hp - f(phi) * (hp + hm)) / (hp * hm * (hp + hm))
    }

    #[test]
    fn curvature_matches_finite_difference_near_truth() {
        let mut rng = trial_rng(99, 0);
        let h = 1e-5;
        for _ in 0..500 {
            let k = rng.random_range(1..=12);
            let a = rng.random_range(0.5..2.0);
            let model = LikelihoodModel::with_sigma(a, a / rng.random_range(10.0..100.0), k).unwrap();
            let phi = rng.random_range(0.0..TAU);
            let x = sample(&model, phi, &mut rng);
            let exact = d2_loglik(&x, phi, &model);
            let fd = second_difference(&x, phi, &model, h);
            let scale = exact.abs().max(model.amplitude().powi(2) / model.sigma2());
            assert!((fd - exact).abs() / scale <= 1e-6, "K={k} φ={phi}: fd {fd} vs {exact}");
        }
    }

    #[test]
    fn derivatives_match_finite_difference_anywhere() {
        // Far from the truth the log-likelihood is large and roundoff in the
        // second difference dominates, hence the looser bound.
        let mut rng = trial_rng(98, 0);
        let h = 1e-5;
        for _ in 0..200 {
            let k = rng.random_range(1..=12);
            let model = LikelihoodModel::new(rng.random_range(0.5..2.0), rng.random_range(0.05..1.0), k).unwrap();
            let phi = rng.random_range(0.0..TAU);
            let x = sample(&model, rng.random_range(0.0..TAU), &mut rng);
            let exact = d2_loglik(&x, phi, &model);
            let scale = exact.abs().max(model.amplitude().powi(2) / model.sigma2());
            assert!((second_difference(&x, phi, &model, h) - exact).abs() / scale < 1e-4);
            let fd1 = (log_likelihood(&x, phi + h, &model) - log_likelihood(&x, phi - h, &model)) / (2.0 * h);
            assert!((fd1 - score(&x, phi, &model)).abs() / scale < 1e-6);
        }
    }

    #[test]
    fn reduced_bracket_substitution() {
        let mut rng = trial_rng(4, 0);
        for k in 1..=10 {
            let model = LikelihoodModel::new(1.7, 0.3, k).unwrap();
            let phi = rng.random_range(0.0..TAU);
            let w: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let x = SampleVector(
                model
                    .mask()
                    .shifted_phases(phi)
                    .zip(&w)
                    .map(|(p, wn)| model.amplitude() * (1.0 + p.cos() + wn))
                    .collect(),
            );
            assert_abs_diff_eq!(
                curvature_bracket(&x, phi, &model),
                reduced_bracket(&w, phi, &model),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn noiseless_mle_recovery() {
        let model = LikelihoodModel::new(1.0, 1.0, 8).unwrap();
        let x = SampleVector(model.mean_signal(1.234));
        assert!((mle_phase(&x, &model) - 1.234).abs() < 1e-6);

        let model = LikelihoodModel::new(1.0, 1.0, 1).unwrap();
        let x = SampleVector(model.mean_signal(1.0));
        let est = mle_phase(&x, &model);
        assert!((est - 1.0).abs() < 1e-6, "K=1 estimate {est}");
        let x = SampleVector(model.mean_signal(TAU - 1.0));
        assert!((mle_phase(&x, &model) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn high_snr_mle_accuracy() {
        let model = LikelihoodModel::with_sigma(1.0, 0.01, 4).unwrap();
        let hits = (0..1000u64)
            .filter(|&i| {
                let x = sample(&model, 0.8, &mut trial_rng(21, i));
                wrap_pi(mle_phase(&x, &model) - 0.8).abs() < 0.05
            })
            .count();
        assert!(hits >= 990);
    }

    #[test]
    fn study_respects_bound_and_trial_floor() {
        let model = LikelihoodModel::with_sigma(1.0, 0.05, 4).unwrap();
        assert!(monte_carlo_study(&model, 1.0, 10, 0).is_err());
        let out = monte_carlo_study(&model, 1.0, 2000, 3).unwrap();
        let r = &out.report;
        assert!(r.var_emp >= r.crlb_oracle - 3.0 * out.var_std_error);
        assert_abs_diff_eq!(r.crlb_oracle * r.fisher_oracle, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.crlb_paper * r.fisher_paper, 1.0, epsilon = 1e-12);
        assert_eq!(r.trials, 2000);
    }

    #[test]
    fn standard_error_scales_with_trials() {
        let model = LikelihoodModel::with_sigma(1.0, 0.05, 4).unwrap();
        let a = monte_carlo_study(&model, 1.0, 2000, 8).unwrap();
        let b = monte_carlo_study(&model, 1.0, 8000, 8).unwrap();
        let ratio = a.var_std_error / b.var_std_error;
        assert!((1.6..2.4).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn averaged_study_covers_each_phase() {
        let model = LikelihoodModel::with_sigma(1.0, 0.05, 4).unwrap();
        let out = phi_averaged_study(&model, &[0.0, 1.0, 2.0], 200, 1).unwrap();
        assert_eq!(out.var_emp.len(), 3);
        assert!(out.mean_var_emp > 0.0);
        assert!(phi_averaged_study(&model, &[], 200, 1).is_err());
    }

    #[test]
    fn appendix_examples() {
        assert_abs_diff_eq!(appendix_sum(1, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(appendix_sum(2, 0.0).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(appendix_cross_terms(2, 0.0).unwrap(), -2.0, epsilon = 1e-15);
        assert!(appendix_cross_terms(1, 0.0).is_err());
        // Σcos² over a uniform comb of K ≥ 3 shifts, checked by brute force
        // against the trapezoid value of the mean of cos² (1/2).
        for k in 3..=10 {
            let s = appendix_sum(k, 0.37).unwrap();
            assert_abs_diff_eq!(s / k as f64, 0.5, epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn square_of_sum_identity(k in 2u32..40, phi in -10.0f64..10.0) {
            let total: f64 = make_phase_mask(k).unwrap().shifted_phases(phi).map(f64::cos).sum();
            let lhs = total * total;
            let rhs = appendix_sum(k, phi).unwrap() + appendix_cross_terms(k, phi).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (k as f64));
        }

        #[test]
        fn likelihood_difference_ignores_normalization(phi in 0.0f64..TAU, other in 0.0f64..TAU, s2 in 0.01f64..2.0) {
            let a = LikelihoodModel::new(1.0, s2, 5).unwrap();
            let x = sample(&a, 0.3, &mut trial_rng(2, 0));
            let direct = log_likelihood(&x, phi, &a) - log_likelihood(&x, other, &a);
            let rss = (residual_sum_squares(x.as_slice(), other, &a) - residual_sum_squares(x.as_slice(), phi, &a)) / (2.0 * s2);
            prop_assert!((direct - rss).abs() <= 1e-9 * direct.abs().max(1.0));
        }
    }
}
