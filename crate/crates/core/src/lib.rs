//! Asymptotic estimation error of ridge regression when covariates are
//! linearly dependent, `X = A Z B`, and a seeded Monte Carlo harness that
//! checks the predictions on finite samples.
//!
//! - [`measures`]: limiting spectra of `AᵀA`, `BᵀB` and their Stieltjes transforms.
//! - [`asymptotics`]: the scalar fixed point for `κ`, bias/variance/risk, optimal `λ`.
//! - [`simulator`]: finite-size data generation, ridge fits, batched trials.
//! - [`cli`]: command-line front end emitting CSV.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod measures;
mod roots;
pub mod simulator;

pub use asymptotics::{
    case_oracle, dm_dlambda, optimal_lambda, risk, solve_kappa, FixedPointSolution, OracleCase,
    ProblemSpec, RiskBreakdown,
};
pub use error::{Error, Result};
pub use measures::{empirical_measure, SpectralMeasure};
