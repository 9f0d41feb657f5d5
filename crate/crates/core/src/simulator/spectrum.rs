use nalgebra::DMatrix;

use super::model::{FeatureMixing, SampleMixing};
use crate::error::{Error, Result};
use crate::measures::{empirical_measure, SpectralMeasure, DEFAULT_QUADRATURE_POINTS};

/// Size at which the Redundancy spectrum is sampled when a limiting measure is needed.
pub const REFERENCE_SIZE: usize = 2000;

/// Eigenvalues of `AᵀA` for an n×n mixing matrix, ascending and clamped at 0.
///
/// Identity, diagonal and redundancy matrices use their block structure; the
/// Toeplitz filter goes through a dense symmetric eigensolve.
pub fn empirical_spectrum(kind: &SampleMixing, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    kind.validate()?;
    let mut eig = match kind {
        SampleMixing::Identity => vec![1.0; n],
        SampleMixing::Diagonal(v) => (0..n).map(|i| v[i % v.len()]).collect(),
        SampleMixing::Redundancy(w) => redundancy_spectrum(*w, n),
        SampleMixing::ToeplitzAr(_) => dense_spectrum(&kind.build(n)?),
    };
    for e in &mut eig {
        *e = e.max(0.0);
    }
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

pub fn feature_spectrum(kind: &FeatureMixing, d: usize) -> Result<Vec<f64>> {
    empirical_spectrum(&SampleMixing::from(kind), d)
}

/// Eigenvalues of `AᵀA` for any square `A`.
pub fn dense_spectrum(a: &DMatrix<f64>) -> Vec<f64> {
    let gram = a.transpose() * a;
    let mut eig: Vec<f64> = gram
        .symmetric_eigenvalues()
        .iter()
        .map(|e| e.max(0.0))
        .collect();
    eig.sort_by(f64::total_cmp);
    eig
}

fn redundancy_spectrum(w: f64, n: usize) -> Vec<f64> {
    // each row pair contributes the 2×2 block [[1 + (1-ω)², ω(1-ω)], [ω(1-ω), ω²]]
    let p = 1.0 + (1.0 - w) * (1.0 - w);
    let s = w * w;
    let r = w * (1.0 - w);
    let half = 0.5 * (p - s);
    let large = 0.5 * (p + s) + (half * half + r * r).sqrt();
    // determinant p·s - r² equals ω²
    let small = s / large;
    let mut eig = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        eig.push(large);
        eig.push(small);
    }
    if n % 2 == 1 {
        eig.push(1.0);
    }
    eig
}

/// Limiting spectral measure of `AᵀA` for a mixing family.
///
/// The Toeplitz filter maps to its symbol pushforward; the Redundancy
/// model uses its spectrum at [`REFERENCE_SIZE`].
pub fn limiting_measure(kind: &SampleMixing) -> Result<SpectralMeasure> {
    limiting_measure_at(kind, REFERENCE_SIZE)
}

/// As [`limiting_measure`], sampling the Redundancy spectrum at `reference_n`.
pub fn limiting_measure_at(kind: &SampleMixing, reference_n: usize) -> Result<SpectralMeasure> {
    kind.validate()?;
    match kind {
        SampleMixing::Identity => Ok(SpectralMeasure::identity()),
        SampleMixing::ToeplitzAr(c) => SpectralMeasure::szego(c, DEFAULT_QUADRATURE_POINTS),
        SampleMixing::Diagonal(v) => empirical_measure(v),
        SampleMixing::Redundancy(_) => empirical_measure(&empirical_spectrum(kind, reference_n)?),
    }
}

pub fn limiting_feature_measure(kind: &FeatureMixing) -> Result<SpectralMeasure> {
    limiting_measure(&SampleMixing::from(kind))
}
