//! Batched trials over a parameter grid with deterministic aggregation.

use rayon::prelude::*;

use super::model::{CovariateModel, EntryDist, SampleMixing};
use super::rng::derive_seed;
use super::trial::{sample_trial, RidgeParams, TrialResult};
use crate::asymptotics::optimal_lambda;
use crate::error::{Error, Result};

/// How `λ` is chosen at each point of a `γ` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaRule {
    Fixed(f64),
    /// `λ = γ`
    TrackGamma,
    /// `λ = σ²γ/α²`
    Optimal,
}

impl LambdaRule {
    pub fn at(self, gamma: f64, alpha: f64, sigma_eps: f64) -> f64 {
        match self {
            LambdaRule::Fixed(l) => l,
            LambdaRule::TrackGamma => gamma,
            LambdaRule::Optimal => optimal_lambda(gamma, alpha, sigma_eps),
        }
    }
}

/// One grid point: the swept value and everything a trial there needs.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchPoint {
    pub value: f64,
    pub model: CovariateModel,
    pub d: usize,
    pub params: RidgeParams,
}

/// `d = round(γn)`, clamped to at least 2.
pub fn dimension_for(gamma: f64, n: usize) -> usize {
    ((gamma * n as f64).round() as usize).max(2)
}

pub fn gamma_points(
    model: &CovariateModel,
    n: usize,
    gammas: &[f64],
    lambda: LambdaRule,
    alpha: f64,
    sigma_eps: f64,
) -> Vec<BatchPoint> {
    gammas
        .iter()
        .map(|&g| BatchPoint {
            value: g,
            model: model.clone(),
            d: dimension_for(g, n),
            params: RidgeParams {
                lambda: lambda.at(g, alpha, sigma_eps),
                alpha,
                sigma_eps,
            },
        })
        .collect()
}

pub fn lambda_points(
    model: &CovariateModel,
    n: usize,
    gamma: f64,
    lambdas: &[f64],
    alpha: f64,
    sigma_eps: f64,
) -> Vec<BatchPoint> {
    lambdas
        .iter()
        .map(|&l| BatchPoint {
            value: l,
            model: model.clone(),
            d: dimension_for(gamma, n),
            params: RidgeParams {
                lambda: l,
                alpha,
                sigma_eps,
            },
        })
        .collect()
}

/// Sweeps the Redundancy weight `ω` of the temporal mixing.
pub fn omega_points(
    model: &CovariateModel,
    n: usize,
    gamma: f64,
    omegas: &[f64],
    lambda: LambdaRule,
    alpha: f64,
    sigma_eps: f64,
) -> Vec<BatchPoint> {
    omegas
        .iter()
        .map(|&w| BatchPoint {
            value: w,
            model: CovariateModel {
                a: SampleMixing::Redundancy(w),
                ..model.clone()
            },
            d: dimension_for(gamma, n),
            params: RidgeParams {
                lambda: lambda.at(gamma, alpha, sigma_eps),
                alpha,
                sigma_eps,
            },
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldStats {
    pub mean: f64,
    /// Standard error of the mean; 0 when only one trial ran.
    pub se: f64,
}

impl FieldStats {
    /// In-order mean and standard error of the mean.
    pub fn from_samples(xs: &[f64]) -> Self {
        let t = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / t;
        if xs.len() < 2 {
            return FieldStats { mean, se: 0.0 };
        }
        let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
        FieldStats {
            mean,
            se: (ss / (t - 1.0) / t).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    pub value: f64,
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub risk: FieldStats,
    pub bias: FieldStats,
    pub variance: FieldStats,
    pub cross_term: FieldStats,
    pub m: FieldStats,
    /// False when `trials == 1` and the standard errors are placeholders.
    pub se_available: bool,
    pub results: Vec<TrialResult>,
}

impl BatchSummary {
    fn from_trials(value: f64, n: usize, d: usize, results: Vec<TrialResult>) -> Self {
        let field = |f: fn(&TrialResult) -> f64| {
            FieldStats::from_samples(&results.iter().map(f).collect::<Vec<_>>())
        };
        BatchSummary {
            value,
            n,
            d,
            trials: results.len(),
            risk: field(|r| r.empirical_risk),
            bias: field(|r| r.empirical_bias),
            variance: field(|r| r.empirical_variance),
            cross_term: field(|r| r.cross_term),
            m: field(|r| r.empirical_m),
            se_available: results.len() > 1,
            results,
        }
    }
}

/// Runs `trials` trials at one grid point. Trials may run in parallel; the
/// results come back in trial order, so the summary does not depend on the
/// worker count.
pub fn run_point(
    point: &BatchPoint,
    grid_index: usize,
    n: usize,
    trials: usize,
    base_seed: u64,
) -> Result<BatchSummary> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(base_seed, grid_index as u64, t as u64);
            sample_trial(&point.model, n, point.d, point.params, seed).map_err(|e| Error::Trial {
                grid: grid_index,
                trial: t,
                source: Box::new(e),
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(BatchSummary::from_trials(point.value, n, point.d, results))
}

/// Runs every grid point in order, handing each summary to `sink` as soon
/// as it is ready. Stops at the first failing trial.
pub fn run_batch_with(
    n: usize,
    points: &[BatchPoint],
    trials: usize,
    base_seed: u64,
    mut sink: impl FnMut(&BatchSummary) -> Result<()>,
) -> Result<Vec<BatchSummary>> {
    let mut out = Vec::with_capacity(points.len());
    for (g, point) in points.iter().enumerate() {
        let summary = run_point(point, g, n, trials, base_seed)?;
        sink(&summary)?;
        out.push(summary);
    }
    Ok(out)
}

pub fn run_batch(
    n: usize,
    points: &[BatchPoint],
    trials: usize,
    base_seed: u64,
) -> Result<Vec<BatchSummary>> {
    run_batch_with(n, points, trials, base_seed, |_| Ok(()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalityArm {
    pub dist: EntryDist,
    pub risk: FieldStats,
    /// `mean_risk(dist) - mean_risk(gaussian)`
    pub gap_vs_gaussian: f64,
    /// `sqrt(se_dist² + se_gaussian²)`; 0 for the Gaussian arm itself.
    pub gap_se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalityReport {
    pub n: usize,
    pub d: usize,
    pub gamma: f64,
    pub trials: usize,
    pub arms: Vec<UniversalityArm>,
}

/// Compares the estimation error across entry laws of `Z` on common random
/// numbers: every arm reuses the same trial seeds, so `β⋆` and `ε` are shared
/// and a Gaussian arm compared with itself has zero gap.
pub fn universality_compare(
    model: &CovariateModel,
    n: usize,
    gamma: f64,
    params: RidgeParams,
    trials: usize,
    base_seed: u64,
    dists: &[EntryDist],
) -> Result<UniversalityReport> {
    if trials < 10 {
        return Err(Error::InvalidParameter(format!(
            "universality needs at least 10 trials, got {trials}"
        )));
    }
    let d = dimension_for(gamma, n);
    let run = |dist: EntryDist| {
        let point = BatchPoint {
            value: gamma,
            model: model.with_dist(dist),
            d,
            params,
        };
        run_point(&point, 0, n, trials, base_seed)
    };
    let reference = run(EntryDist::Gaussian)?.risk;
    let mut arms = Vec::with_capacity(dists.len());
    for &dist in dists {
        let risk = if dist == EntryDist::Gaussian {
            reference
        } else {
            run(dist)?.risk
        };
        let gap = risk.mean - reference.mean;
        let se = if dist == EntryDist::Gaussian {
            0.0
        } else {
            (risk.se * risk.se + reference.se * reference.se).sqrt()
        };
        arms.push(UniversalityArm {
            dist,
            risk,
            gap_vs_gaussian: gap,
            gap_se: se,
        });
    }
    Ok(UniversalityReport {
        n,
        d,
        gamma,
        trials,
        arms,
    })
}
