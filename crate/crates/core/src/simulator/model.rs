use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::measures::{parse_real, parse_real_list};

/// Temporal mixing `A` (n×n), applied on the left of `Z`.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleMixing {
    Identity,
    /// Moving-average filter: row `t` of `AZ` is `Σ_k ω_k z_{t-k}`, with
    /// samples before the first one treated as absent.
    ToeplitzAr(Vec<f64>),
    /// Odd rows (1-indexed) copy `z_i`; even rows mix `ω z_i + (1-ω) z_{i-1}`.
    Redundancy(f64),
    /// Eigenvalues of `AᵀA`, repeated cyclically along the diagonal;
    /// `A = diag(sqrt(v))`.
    Diagonal(Vec<f64>),
}

/// Feature mixing `B` (d×d), applied on the right of `Z`.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureMixing {
    Identity,
    /// Eigenvalues of `BᵀB`, repeated cyclically; `B = diag(sqrt(v))`.
    Diagonal(Vec<f64>),
}

/// Entry law of `Z`, always standardized to mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryDist {
    Gaussian,
    /// ±1 with equal probability.
    Rademacher,
    /// Uniform on `[-√3, √3]`.
    Uniform,
}

impl EntryDist {
    pub const ALL: [EntryDist; 3] = [
        EntryDist::Gaussian,
        EntryDist::Rademacher,
        EntryDist::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntryDist::Gaussian => "gaussian",
            EntryDist::Rademacher => "rademacher",
            EntryDist::Uniform => "uniform",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovariateModel {
    pub a: SampleMixing,
    pub b: FeatureMixing,
    pub z: EntryDist,
}

impl CovariateModel {
    pub fn new(a: SampleMixing, b: FeatureMixing, z: EntryDist) -> Result<Self> {
        a.validate()?;
        b.validate()?;
        Ok(CovariateModel { a, b, z })
    }

    pub fn isotropic(z: EntryDist) -> Self {
        CovariateModel {
            a: SampleMixing::Identity,
            b: FeatureMixing::Identity,
            z,
        }
    }

    pub fn with_dist(&self, z: EntryDist) -> Self {
        CovariateModel { z, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate()?;
        self.b.validate()
    }
}

fn check_diagonal(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidCoefficients(
            "diagonal needs at least one value".into(),
        ));
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidCoefficients(
            "diagonal values must be nonnegative".into(),
        ));
    }
    Ok(())
}

impl SampleMixing {
    pub fn validate(&self) -> Result<()> {
        match self {
            SampleMixing::Identity => Ok(()),
            SampleMixing::ToeplitzAr(c) => {
                if c.is_empty() || c.iter().all(|&w| w == 0.0) {
                    Err(Error::InvalidCoefficients(
                        "filter needs at least one nonzero coefficient".into(),
                    ))
                } else if c.iter().any(|w| !w.is_finite()) {
                    Err(Error::InvalidCoefficients(
                        "non-finite filter coefficient".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            SampleMixing::Redundancy(w) => {
                if (0.0..=1.0).contains(w) {
                    Ok(())
                } else {
                    Err(Error::InvalidCoefficients(format!(
                        "redundancy weight {w} outside [0, 1]"
                    )))
                }
            }
            SampleMixing::Diagonal(v) => check_diagonal(v),
        }
    }

    /// Dense `A`.
    pub fn build(&self, n: usize) -> Result<DMatrix<f64>> {
        self.validate()?;
        let mut a = DMatrix::identity(n, n);
        self.apply(&mut a);
        Ok(a)
    }

    /// Overwrites `x` with `A x` without forming `A`. Caller validates.
    pub(crate) fn apply(&self, x: &mut DMatrix<f64>) {
        let n = x.nrows();
        match self {
            SampleMixing::Identity => {}
            SampleMixing::ToeplitzAr(coeffs) => {
                for mut col in x.column_iter_mut() {
                    // descending t so that rows t-k are still unmixed
                    for t in (0..n).rev() {
                        let mut acc = coeffs[0] * col[t];
                        for (k, &w) in coeffs.iter().enumerate().skip(1) {
                            if k > t {
                                break;
                            }
                            acc += w * col[t - k];
                        }
                        col[t] = acc;
                    }
                }
            }
            SampleMixing::Redundancy(w) => {
                let w = *w;
                for mut col in x.column_iter_mut() {
                    // 0-indexed odd rows are the 1-indexed even rows
                    let mut i = 1;
                    while i < n {
                        col[i] = w * col[i] + (1.0 - w) * col[i - 1];
                        i += 2;
                    }
                }
            }
            SampleMixing::Diagonal(values) => {
                let scale: Vec<f64> = values.iter().map(|v| v.sqrt()).collect();
                for mut col in x.column_iter_mut() {
                    for (i, v) in col.iter_mut().enumerate() {
                        *v *= scale[i % scale.len()];
                    }
                }
            }
        }
    }
}

impl FeatureMixing {
    pub fn validate(&self) -> Result<()> {
        match self {
            FeatureMixing::Identity => Ok(()),
            FeatureMixing::Diagonal(v) => check_diagonal(v),
        }
    }

    /// Dense `B`.
    pub fn build(&self, d: usize) -> Result<DMatrix<f64>> {
        self.validate()?;
        let mut b = DMatrix::identity(d, d);
        self.apply(&mut b);
        Ok(b)
    }

    /// Overwrites `x` with `x B`. Caller validates.
    pub(crate) fn apply(&self, x: &mut DMatrix<f64>) {
        match self {
            FeatureMixing::Identity => {}
            FeatureMixing::Diagonal(values) => {
                for (j, mut col) in x.column_iter_mut().enumerate() {
                    col *= values[j % values.len()].sqrt();
                }
            }
        }
    }
}

impl From<&FeatureMixing> for SampleMixing {
    fn from(b: &FeatureMixing) -> Self {
        match b {
            FeatureMixing::Identity => SampleMixing::Identity,
            FeatureMixing::Diagonal(v) => SampleMixing::Diagonal(v.clone()),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, values: &[f64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v:?}")?;
    }
    Ok(())
}

impl fmt::Display for SampleMixing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleMixing::Identity => write!(f, "identity"),
            SampleMixing::ToeplitzAr(c) => {
                write!(f, "ar:")?;
                write_list(f, c)
            }
            SampleMixing::Redundancy(w) => write!(f, "redundancy:{w:?}"),
            SampleMixing::Diagonal(v) => {
                write!(f, "diag:")?;
                write_list(f, v)
            }
        }
    }
}

impl fmt::Display for FeatureMixing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&SampleMixing::from(self), f)
    }
}

impl FromStr for SampleMixing {
    type Err = Error;

    /// `identity`, `ar:w0,...,wq`, `redundancy:ω`, `diag:v1,...,vk`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = if s == "identity" {
            SampleMixing::Identity
        } else {
            match s.split_once(':') {
                Some(("ar", body)) => SampleMixing::ToeplitzAr(parse_real_list(body)?),
                Some(("redundancy", body)) => SampleMixing::Redundancy(parse_real(body)?),
                Some(("diag", body)) => SampleMixing::Diagonal(parse_real_list(body)?),
                _ => return Err(Error::Parse(format!("unknown model spec '{s}'"))),
            }
        };
        parsed.validate().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(parsed)
    }
}

impl FromStr for FeatureMixing {
    type Err = Error;

    /// `identity` or `diag:v1,...,vk`.
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<SampleMixing>()? {
            SampleMixing::Identity => Ok(FeatureMixing::Identity),
            SampleMixing::Diagonal(v) => Ok(FeatureMixing::Diagonal(v)),
            _ => Err(Error::Parse(format!(
                "feature mixing must be 'identity' or 'diag:...', got '{s}'"
            ))),
        }
    }
}

impl FromStr for EntryDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(EntryDist::Gaussian),
            "rademacher" => Ok(EntryDist::Rademacher),
            "uniform" => Ok(EntryDist::Uniform),
            other => Err(Error::Parse(format!(
                "unknown entry distribution '{other}'"
            ))),
        }
    }
}

impl fmt::Display for EntryDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
