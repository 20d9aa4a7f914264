//! The `verify` audit: every published closed-form claim next to an
//! independently computed value.
//!
//! Rows come in two levels. `Oracle` rows are self-consistency checks of this
//! code base (algebraic identities, finite differences, Monte-Carlo agreement,
//! period detection on a known curve); any failure there is a bug and makes
//! `verify` exit non-zero. `Claim` rows compare a published value with the
//! oracle and only record whether they match.

use std::f64::consts::TAU;

use rand::Rng;
use serde::Serialize;
use srspec_core::correlation::{audit_product, detect_period, sr_closed, ProductAudit, ProductIndexing};
use srspec_core::estimation::{
    appendix_cross_terms, appendix_sum, curvature_bracket, d2_loglik, fisher_oracle, fisher_paper, log_likelihood,
    reduced_bracket, sample, trial_rng, FisherMethod, LikelihoodModel, SampleVector,
};
use srspec_core::optics::make_phase_mask;

pub const APPENDIX_ORDERS: [u32; 4] = [1, 2, 4, 10];
pub const APPENDIX_PHASES: [f64; 2] = [0.0, 0.3];
pub const PRODUCT_ORDERS: [u32; 4] = [1, 2, 3, 4];
pub const FD_INSTANCES: usize = 1000;
pub const FD_STEP: f64 = 1e-5;
pub const FD_TOLERANCE: f64 = 1e-6;
pub const IDENTITY_TOLERANCE: f64 = 1e-12;
pub const MC_FISHER_TRIALS: u64 = 100_000;
pub const MC_FISHER_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckLevel {
    Oracle,
    Claim,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub level: CheckLevel,
    pub claim: String,
    pub paper: String,
    pub oracle: String,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixEntry {
    pub order: u32,
    pub phi: f64,
    pub sum_oracle: f64,
    pub sum_claim: f64,
    /// `None` for K = 1, where there are no cross terms.
    pub cross_oracle: Option<f64>,
    pub cross_claim: f64,
    /// `|(Σcos)² − (Σcos² + cross)|`
    pub identity_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FisherEntry {
    pub order: u32,
    pub phi: f64,
    pub claim: f64,
    pub oracle: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodSelfTest {
    pub order: u32,
    pub detected: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub appendix: Vec<AppendixEntry>,
    pub fisher: Vec<FisherEntry>,
    pub products: Vec<ProductAudit>,
    pub period_self_tests: Vec<PeriodSelfTest>,
    pub fd_max_rel_error: f64,
    pub bracket_max_error: f64,
    pub mc_fisher_rel_error: f64,
}

impl AuditReport {
    pub fn oracle_ok(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.level == CheckLevel::Oracle)
            .all(|r| r.matched)
    }

    /// Plain-text table `claim | paper value | oracle value | match`.
    pub fn render(&self) -> String {
        let header = ["claim", "paper value", "oracle value", "match"];
        let cells: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                let tag = match r.level {
                    CheckLevel::Oracle => "[oracle]",
                    CheckLevel::Claim => "[claim] ",
                };
                [
                    format!("{tag} {}", r.claim),
                    r.paper.clone(),
                    r.oracle.clone(),
                    r.matched.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: &[String]| -> String {
            row.iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect::<Vec<_>>()
                .join(" | ")
                .trim_end()
                .to_string()
        };
        let mut out = String::new();
        out.push_str(&line(&header.map(String::from)));
        out.push('\n');
        out.push_str(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("-|-"));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        let oracle_rows = self.rows.iter().filter(|r| r.level == CheckLevel::Oracle);
        let claim_rows = self.rows.iter().filter(|r| r.level == CheckLevel::Claim);
        out.push_str(&format!(
            "\noracle checks: {}/{} passed; published claims matched: {}/{}\n",
            oracle_rows.clone().filter(|r| r.matched).count(),
            oracle_rows.count(),
            claim_rows.clone().filter(|r| r.matched).count(),
            claim_rows.count(),
        ));
        out
    }
}

fn g(v: f64) -> String {
    format!("{v:.12}")
}

fn e(v: f64) -> String {
    format!("{v:.3e}")
}

fn period_label(period: f64) -> String {
    let m = TAU / period;
    format!("2π/{}", m.round() as u64)
}

/// Three-point second difference built from the steps actually represented
/// in floating point, `(φ + h) − φ` and `φ − (φ − h)`.
pub fn second_difference(x: &SampleVector, phi: f64, model: &LikelihoodModel, h: f64) -> f64 {
    let (up, down) = (phi + h, phi - h);
    let (hp, hm) = (up - phi, phi - down);
    let f = |p| log_likelihood(x, p, model);
    2.0 * (f(up) * hm + f(down) * hp - f(phi) * (hp + hm)) / (hp * hm * (hp + hm))
}

/// Maximum relative deviation of `d2_loglik` from the finite difference over
/// `instances` random (K, A, σ, φ, x) draws. x is drawn from the model at the
/// evaluated φ with A/σ ∈ [10, 100]; the relative error uses
/// `max(|d2|, A²/σ²)` as denominator.
pub fn finite_difference_check(instances: usize, seed: u64) -> f64 {
    let mut rng = trial_rng(seed, u64::MAX);
    let mut worst = 0.0_f64;
    for i in 0..instances {
        let k = rng.random_range(1..=16);
        let a = rng.random_range(0.5..2.0);
        let model = LikelihoodModel::with_sigma(a, a / rng.random_range(10.0..100.0), k).expect("valid model");
        let phi = rng.random_range(0.0..TAU);
        let x = sample(&model, phi, &mut trial_rng(seed, i as u64));
        let exact = d2_loglik(&x, phi, &model);
        let fd = second_difference(&x, phi, &model, FD_STEP);
        let scale = exact.abs().max(a * a / model.sigma2());
        worst = worst.max((fd - exact).abs() / scale);
    }
    worst
}

/// Substitutes `x[n] = A(1 + cos φ′_n + w[n])` into the curvature bracket and
/// compares with its reduced form; returns the max absolute difference.
pub fn bracket_substitution_check(seed: u64) -> f64 {
    let mut rng = trial_rng(seed, u64::MAX - 1);
    let mut worst = 0.0_f64;
    for k in 1..=16 {
        for _ in 0..16 {
            let a = rng.random_range(0.5..2.0);
            let model = LikelihoodModel::new(a, 0.1, k).expect("valid model");
            let phi = rng.random_range(0.0..TAU);
            let w: Vec<f64> = (0..k).map(|_| rng.random_range(-0.3..0.3)).collect();
            let x = SampleVector(
                model
                    .mask()
                    .shifted_phases(phi)
                    .zip(&w)
                    .map(|(p, wn)| a * (1.0 + p.cos() + wn))
                    .collect(),
            );
            worst = worst.max((curvature_bracket(&x, phi, &model) - reduced_bracket(&w, phi, &model)).abs());
        }
    }
    worst
}

pub fn run_audit() -> AuditReport {
    let mut rows = Vec::new();
    let mut appendix = Vec::new();

    for &k in &APPENDIX_ORDERS {
        for &phi in &APPENDIX_PHASES {
            let kf = k as f64;
            let sum = appendix_sum(k, phi).expect("K >= 1");
            let cross = appendix_cross_terms(k, phi).ok();
            let total: f64 = make_phase_mask(k)
                .expect("K >= 1")
                .shifted_phases(phi)
                .map(f64::cos)
                .sum();
            let identity_error = (total * total - (sum + cross.unwrap_or(0.0))).abs();
            let entry = AppendixEntry {
                order: k,
                phi,
                sum_oracle: sum,
                sum_claim: kf * kf,
                cross_oracle: cross,
                cross_claim: kf * (kf - 1.0),
                identity_error,
            };
            rows.push(AuditRow {
                level: CheckLevel::Claim,
                claim: format!("Σcos²φ′ₙ = K², K={k}, φ={phi}"),
                paper: g(entry.sum_claim),
                oracle: g(sum),
                matched: (sum - entry.sum_claim).abs() <= 1e-9,
            });
            rows.push(AuditRow {
                level: CheckLevel::Claim,
                claim: format!("2ΣΣ_{{j>i}} cosφ′ⱼcosφ′ᵢ = K(K−1), K={k}, φ={phi}"),
                paper: g(entry.cross_claim),
                oracle: cross.map_or_else(|| "n/a (K<2, empty sum)".to_string(), g),
                matched: (cross.unwrap_or(0.0) - entry.cross_claim).abs() <= 1e-9,
            });
            rows.push(AuditRow {
                level: CheckLevel::Oracle,
                claim: format!("(Σcosφ′ₙ)² = Σcos²φ′ₙ + cross, K={k}, φ={phi}"),
                paper: "-".to_string(),
                oracle: format!("|err| = {}", e(identity_error)),
                matched: identity_error <= IDENTITY_TOLERANCE,
            });
            appendix.push(entry);
        }
    }

    let mut fisher = Vec::new();
    for &k in &APPENDIX_ORDERS {
        let phi = 0.3;
        let model = LikelihoodModel::new(1.0, 1.0, k).expect("valid model");
        let claim = fisher_paper(&model);
        let oracle = fisher_oracle(&model, phi, FisherMethod::Analytic);
        let entry = FisherEntry {
            order: k,
            phi,
            claim,
            oracle,
            ratio: claim / oracle,
        };
        rows.push(AuditRow {
            level: CheckLevel::Claim,
            claim: format!("Fisher K²A²/(2σ²), K={k}, A=1, σ²=1, φ={phi}"),
            paper: g(claim),
            oracle: g(oracle),
            matched: (claim - oracle).abs() <= 1e-9 * oracle.abs(),
        });
        if k >= 3 {
            rows.push(AuditRow {
                level: CheckLevel::Claim,
                claim: format!("Fisher claim/oracle ratio, K={k} (oracle analysis predicts K)"),
                paper: g(1.0),
                oracle: g(entry.ratio),
                matched: (entry.ratio - 1.0).abs() <= 1e-9,
            });
        }
        fisher.push(entry);
    }

    let mc_model = LikelihoodModel::new(1.0, 1.0, 4).expect("valid model");
    let analytic = fisher_oracle(&mc_model, 0.3, FisherMethod::Analytic);
    let mc = fisher_oracle(
        &mc_model,
        0.3,
        FisherMethod::MonteCarlo {
            trials: MC_FISHER_TRIALS,
            seed: 17,
        },
    );
    let mc_fisher_rel_error = (mc / analytic - 1.0).abs();
    rows.push(AuditRow {
        level: CheckLevel::Oracle,
        claim: format!("Monte-Carlo −E[∂²lnp] vs (A²/σ²)Σsin²φ′ₙ, K=4, {MC_FISHER_TRIALS} trials"),
        paper: "-".to_string(),
        oracle: format!("{} vs {} (rel {})", g(mc), g(analytic), e(mc_fisher_rel_error)),
        matched: mc_fisher_rel_error <= MC_FISHER_TOLERANCE,
    });

    let fd_max_rel_error = finite_difference_check(FD_INSTANCES, 23);
    rows.push(AuditRow {
        level: CheckLevel::Oracle,
        claim: format!("∂²lnp/∂φ² vs finite difference (h={FD_STEP:e}), {FD_INSTANCES} instances"),
        paper: "-".to_string(),
        oracle: format!("max rel err = {}", e(fd_max_rel_error)),
        matched: fd_max_rel_error <= FD_TOLERANCE,
    });

    let bracket_max_error = bracket_substitution_check(29);
    rows.push(AuditRow {
        level: CheckLevel::Oracle,
        claim: "curvature bracket with x = A(1+cosφ′+w) equals AΣ[cos²φ′ + w cosφ′ − cos2φ′]".to_string(),
        paper: "-".to_string(),
        oracle: format!("max |err| = {}", e(bracket_max_error)),
        matched: bracket_max_error <= IDENTITY_TOLERANCE,
    });

    let mut period_self_tests = Vec::new();
    let mut products = Vec::new();
    for &k in &PRODUCT_ORDERS {
        let detected = detect_period(|phi| sr_closed(phi, k).expect("K >= 1"), 8 * k, 512).unwrap_or(f64::NAN);
        let expected = TAU / k as f64;
        rows.push(AuditRow {
            level: CheckLevel::Oracle,
            claim: format!("period detector on [1+cos(Kφ)]/2, K={k}"),
            paper: period_label(expected),
            oracle: if detected.is_finite() {
                period_label(detected)
            } else {
                "none".into()
            },
            matched: detected == expected,
        });
        period_self_tests.push(PeriodSelfTest {
            order: k,
            detected,
            expected,
        });

        for indexing in [ProductIndexing::PaperLiteral, ProductIndexing::HalfStep] {
            let audit = audit_product(k, indexing, 4096, 1024).expect("K >= 1");
            rows.push(AuditRow {
                level: CheckLevel::Claim,
                claim: format!(
                    "normalized 2K-factor eraser product ({}) equals [1+cos(Kφ)]/2, K={k}",
                    indexing.as_str()
                ),
                paper: format!("period {}, max dev 0", period_label(audit.closed_period)),
                oracle: format!(
                    "period {}, max dev {}",
                    period_label(audit.product_period),
                    e(audit.max_deviation)
                ),
                matched: audit.product_period == audit.closed_period && audit.max_deviation <= 1e-6,
            });
            products.push(audit);
        }
    }

    AuditReport {
        rows,
        appendix,
        fisher,
        products,
        period_self_tests,
        fd_max_rel_error,
        bracket_max_error,
        mc_fisher_rel_error,
    }
}
