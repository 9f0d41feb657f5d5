//! Finite-sample Monte Carlo for ridge regression with mixed covariates
//! `X = A Z B`.

pub mod batch;
pub mod model;
pub mod rng;
pub mod spectrum;
pub mod trial;

pub use batch::{
    dimension_for, gamma_points, lambda_points, omega_points, run_batch, run_batch_with, run_point,
    universality_compare, BatchPoint, BatchSummary, FieldStats, LambdaRule, UniversalityArm,
    UniversalityReport,
};
pub use model::{CovariateModel, EntryDist, FeatureMixing, SampleMixing};
pub use rng::{derive_seed, stream_rng, Stream};
pub use spectrum::{
    dense_spectrum, empirical_spectrum, feature_spectrum, limiting_feature_measure,
    limiting_measure, limiting_measure_at, REFERENCE_SIZE,
};
pub use trial::{
    draw_design, resolvent_trace_curve, ridge_estimate, sample_trial, RidgeParams, SolvePath,
    TrialResult,
};
