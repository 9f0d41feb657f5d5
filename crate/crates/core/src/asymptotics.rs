//! Deterministic-equivalent risk of ridge regression for `X = A Z B`.
//!
//! With `m(λ) = (1/d) tr((XᵀX/n + λI)⁻¹)`, the limit is `m̄ = κ m_B(κ)/λ`
//! where `κ > 0` solves
//!
//! ```text
//! F(κ) = λ m_A(λ / m̃(κ)) + m̃(κ)²/κ - m̃(κ) = 0,   m̃(κ) = γκ(1 - κ m_B(κ)).
//! ```
//!
//! Bias and variance follow from `m̄` and `∂m̄/∂λ`:
//! `B = -α²λ² ∂m̄/∂λ` and `V = γσ²(m̄ + λ ∂m̄/∂λ)`.

use crate::error::{Error, Result};
use crate::measures::SpectralMeasure;
use crate::roots::{bisect, sign_changes};

/// Smallest ridge penalty accepted by the solver.
pub const MIN_LAMBDA: f64 = 1e-8;
/// Required `|F(κ)|` at an accepted solution.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Required residual of the `m̃`-form of the equation.
pub const CROSS_RESIDUAL_TOL: f64 = 1e-9;
/// Below this the closed-form `∂κ/∂λ` denominator is treated as degenerate.
pub const DENOMINATOR_TOL: f64 = 1e-14;

const MAX_ITERATIONS: usize = 200;
const MAX_EXPANSIONS: usize = 60;
const SCAN_SAMPLES: usize = 128;
const NEWTON_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub gamma: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub sigma_eps: f64,
    pub mu_a: SpectralMeasure,
    pub mu_b: SpectralMeasure,
}

impl ProblemSpec {
    pub fn new(
        gamma: f64,
        lambda: f64,
        alpha: f64,
        sigma_eps: f64,
        mu_a: SpectralMeasure,
        mu_b: SpectralMeasure,
    ) -> Result<Self> {
        let spec = ProblemSpec {
            gamma,
            lambda,
            alpha,
            sigma_eps,
            mu_a,
            mu_b,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Isotropic covariates: `A = I`, `B = I`.
    pub fn isotropic(gamma: f64, lambda: f64, alpha: f64, sigma_eps: f64) -> Result<Self> {
        Self::new(
            gamma,
            lambda,
            alpha,
            sigma_eps,
            SpectralMeasure::identity(),
            SpectralMeasure::identity(),
        )
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        ProblemSpec {
            lambda,
            ..self.clone()
        }
    }

    pub fn with_gamma(&self, gamma: f64) -> Self {
        ProblemSpec {
            gamma,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad("gamma must be positive".into());
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad("lambda must be positive".into());
        }
        if self.lambda < MIN_LAMBDA {
            return bad(format!("lambda must be at least {MIN_LAMBDA:e}"));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad("alpha must be positive".into());
        }
        if !(self.sigma_eps >= 0.0 && self.sigma_eps.is_finite()) {
            return bad("sigma_eps must be nonnegative".into());
        }
        if self.mu_b.mean() == 0.0 {
            return bad("mu_b must not be the point mass at zero".into());
        }
        if self.mu_a.mean() == 0.0 {
            return bad("mu_a must not be the point mass at zero".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointSolution {
    pub kappa: f64,
    pub m_bar: f64,
    pub dkappa_dlambda: f64,
    pub dm_dlambda: f64,
    /// `-λ / m̃(κ)`, the companion variable of the two-variable system.
    pub kappa1: f64,
    /// `|F(κ)|` in the product form.
    pub residual: f64,
    /// `|F(κ)|` in the `m̃` form.
    pub cross_residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskBreakdown {
    pub bias: f64,
    pub variance: f64,
    pub risk: f64,
}

impl RiskBreakdown {
    fn new(bias: f64, variance: f64) -> Self {
        // clamp rounding noise just below zero
        let bias = if bias > -1e-12 { bias.max(0.0) } else { bias };
        let variance = if variance > -1e-12 {
            variance.max(0.0)
        } else {
            variance
        };
        RiskBreakdown {
            bias,
            variance,
            risk: bias + variance,
        }
    }
}

/// Quantities at a trial `κ` that every form of the equation shares.
struct Eval {
    kappa: f64,
    mb: f64,
    mt: f64,
    arg: f64,
    ma: f64,
}

fn eval(spec: &ProblemSpec, kappa: f64) -> Result<Eval> {
    let mb = spec.mu_b.stieltjes(kappa)?;
    let mt = spec.mu_b.mtilde_b(spec.gamma, kappa)?;
    let arg = spec.lambda / mt;
    let ma = spec.mu_a.stieltjes(arg)?;
    Ok(Eval {
        kappa,
        mb,
        mt,
        arg,
        ma,
    })
}

/// Product form: `λ m_A(λ/(γκ - γκ² m_B)) + γκ(κ m_B - 1)(1 - γ + γκ m_B)`.
fn product_form(spec: &ProblemSpec, e: &Eval) -> f64 {
    let g = spec.gamma;
    let km = e.kappa * e.mb;
    spec.lambda * e.ma + g * e.kappa * (km - 1.0) * (1.0 - g + g * km)
}

/// `m̃` form: `λ m_A(λ/m̃) + m̃²/κ - m̃`.
fn mtilde_form(spec: &ProblemSpec, e: &Eval) -> f64 {
    spec.lambda * e.ma + e.mt * e.mt / e.kappa - e.mt
}

/// Value of the fixed-point equation at `κ` (the quantity driven to zero).
pub fn fixed_point_residual(spec: &ProblemSpec, kappa: f64) -> Result<f64> {
    Ok(mtilde_form(spec, &eval(spec, kappa)?))
}

/// `∂F/∂κ` of the `m̃` form.
fn d_dkappa(spec: &ProblemSpec, e: &Eval) -> Result<f64> {
    let lam = spec.lambda;
    let mtp = spec.mu_b.mtilde_b_derivative(spec.gamma, e.kappa)?;
    let map = spec.mu_a.stieltjes_derivative(e.arg)?;
    Ok(
        -lam * lam * map * mtp / (e.mt * e.mt) + 2.0 * e.mt * mtp / e.kappa
            - e.mt * e.mt / (e.kappa * e.kappa)
            - mtp,
    )
}

/// `∂F/∂λ` at fixed `κ`.
fn d_dlambda(spec: &ProblemSpec, e: &Eval) -> Result<f64> {
    let map = spec.mu_a.stieltjes_derivative(e.arg)?;
    Ok(e.ma + e.arg * map)
}

fn admissible(e: &Eval) -> bool {
    let km = e.kappa * e.mb;
    km > 0.0 && km < 1.0 && e.mt > 0.0 && e.arg > 0.0
}

/// Solves the fixed-point equation for `κ`, then fills in `m̄` and its
/// `λ`-derivative.
///
/// The root is bracketed on `(0, κ_hi]`, starting from `[1e-8, λ + 10]` and
/// doubling the upper end until `F` changes sign, then refined by bisection
/// and a few safeguarded Newton steps. The smallest admissible root is kept.
pub fn solve_kappa(spec: &ProblemSpec) -> Result<FixedPointSolution> {
    spec.validate()?;
    let mut f = |k: f64| fixed_point_residual(spec, k);

    let lo = MIN_LAMBDA.min(1e-4 * spec.lambda);
    let mut hi = spec.lambda + 10.0;
    let mut expansions = 0;
    while f(hi)? >= 0.0 {
        if expansions == MAX_EXPANSIONS {
            return Err(Error::NoBracket { upper: hi });
        }
        hi *= 2.0;
        expansions += 1;
    }

    let brackets = sign_changes(&mut f, lo, hi, SCAN_SAMPLES)?;
    if brackets.is_empty() {
        return Err(Error::NoBracket { upper: hi });
    }

    let mut last_residual = f64::INFINITY;
    for (a, b, fa, _) in brackets {
        let (a, b, halvings) = bisect(&mut f, a, b, fa, 1e-14, MAX_ITERATIONS)?;
        let (kappa, newton) = polish(spec, a, b)?;
        let iterations = halvings + newton;
        let e = eval(spec, kappa)?;
        let residual = product_form(spec, &e).abs();
        let cross_residual = mtilde_form(spec, &e).abs();
        last_residual = residual.max(cross_residual);
        if !admissible(&e) {
            continue;
        }
        if residual >= RESIDUAL_TOL || cross_residual >= CROSS_RESIDUAL_TOL {
            return Err(Error::MaxIterations {
                iterations,
                residual: last_residual,
            });
        }
        let mut sol = FixedPointSolution {
            kappa,
            m_bar: e.kappa * e.mb / spec.lambda,
            dkappa_dlambda: f64::NAN,
            dm_dlambda: f64::NAN,
            kappa1: -spec.lambda / e.mt,
            residual,
            cross_residual,
            iterations,
        };
        let (dk, dm) = match dm_dlambda(spec, &sol) {
            Ok(v) => v,
            Err(Error::DegenerateDenominator(_)) => implicit_derivatives(spec, kappa)?,
            Err(e) => return Err(e),
        };
        sol.dkappa_dlambda = dk;
        sol.dm_dlambda = dm;
        return Ok(sol);
    }
    Err(Error::MaxIterations {
        iterations: MAX_ITERATIONS,
        residual: last_residual,
    })
}

/// Newton steps from the bracket midpoint, each kept only if it stays inside
/// the bracket and does not increase `|F|`.
fn polish(spec: &ProblemSpec, a: f64, b: f64) -> Result<(f64, usize)> {
    let (lo, hi) = (a.min(b), a.max(b));
    let mut kappa = 0.5 * (lo + hi);
    let mut e = eval(spec, kappa)?;
    let mut fk = mtilde_form(spec, &e);
    let mut steps = 0;
    for _ in 0..NEWTON_STEPS {
        if fk == 0.0 {
            break;
        }
        let slope = d_dkappa(spec, &e)?;
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = kappa - fk / slope;
        let width = (hi - lo).max(4.0 * f64::EPSILON * kappa);
        if !(next > lo - width && next < hi + width) || next <= 0.0 {
            break;
        }
        let e_next = eval(spec, next)?;
        let f_next = mtilde_form(spec, &e_next);
        steps += 1;
        if f_next.abs() > fk.abs() {
            break;
        }
        kappa = next;
        e = e_next;
        fk = f_next;
    }
    Ok((kappa, steps))
}

fn dm_from_dkappa(spec: &ProblemSpec, kappa: f64, dk: f64) -> Result<f64> {
    let lam = spec.lambda;
    let mb = spec.mu_b.stieltjes(kappa)?;
    let mbp = spec.mu_b.stieltjes_derivative(kappa)?;
    Ok((mb + kappa * mbp) * dk / lam - kappa * mb / (lam * lam))
}

/// `∂κ/∂λ` from the closed-form ratio of `m̃`, `m̃'`, `m_A`, `m_A'`, and the
/// resulting `∂m̄/∂λ = (m_B + κ m_B') κ'/λ - κ m_B/λ²`.
pub fn dm_dlambda(spec: &ProblemSpec, sol: &FixedPointSolution) -> Result<(f64, f64)> {
    let kappa = sol.kappa;
    let lam = spec.lambda;
    let mt = spec.mu_b.mtilde_b(spec.gamma, kappa)?;
    let mtp = spec.mu_b.mtilde_b_derivative(spec.gamma, kappa)?;
    let arg = lam / mt;
    let ma = spec.mu_a.stieltjes(arg)?;
    let map = spec.mu_a.stieltjes_derivative(arg)?;
    let k2 = kappa * kappa;
    let num = k2 * mt * mt * ma + lam * k2 * mt * map;
    let den = lam * lam * k2 * mtp * map - mt * mt * ((2.0 * kappa * mt - k2) * mtp - mt * mt);
    if den.abs() < DENOMINATOR_TOL || !den.is_finite() {
        return Err(Error::DegenerateDenominator(den));
    }
    let dk = num / den;
    Ok((dk, dm_from_dkappa(spec, kappa, dk)?))
}

/// Implicit-function derivative `κ' = -F_λ / F_κ`, used when the closed-form
/// denominator underflows (its prefactor `κ² m̃²` vanishes for tiny `κ`).
fn implicit_derivatives(spec: &ProblemSpec, kappa: f64) -> Result<(f64, f64)> {
    let e = eval(spec, kappa)?;
    let fk = d_dkappa(spec, &e)?;
    if fk == 0.0 || !fk.is_finite() {
        return Err(Error::DegenerateDenominator(fk));
    }
    let dk = -d_dlambda(spec, &e)? / fk;
    Ok((dk, dm_from_dkappa(spec, kappa, dk)?))
}

fn breakdown(spec: &ProblemSpec, sol: &FixedPointSolution) -> RiskBreakdown {
    let (a2, s2) = (spec.alpha * spec.alpha, spec.sigma_eps * spec.sigma_eps);
    let lam = spec.lambda;
    let bias = -a2 * lam * lam * sol.dm_dlambda;
    let variance = spec.gamma * s2 * sol.m_bar + spec.gamma * s2 * lam * sol.dm_dlambda;
    RiskBreakdown::new(bias, variance)
}

/// Asymptotic bias, variance and estimation error.
pub fn risk(spec: &ProblemSpec) -> Result<RiskBreakdown> {
    Ok(evaluate(spec)?.1)
}

/// Fixed-point solution together with the risk it implies.
pub fn evaluate(spec: &ProblemSpec) -> Result<(FixedPointSolution, RiskBreakdown)> {
    let sol = solve_kappa(spec)?;
    Ok((sol, breakdown(spec, &sol)))
}

/// Risk-minimizing penalty `σ²γ/α²`; it does not depend on `μ_A` or `μ_B`.
pub fn optimal_lambda(gamma: f64, alpha: f64, sigma_eps: f64) -> f64 {
    sigma_eps * sigma_eps * gamma / (alpha * alpha)
}

/// Special structures under which the fixed point collapses to a simpler
/// scalar equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleCase {
    /// `AᵀA = I`, `BᵀB = I`: Marchenko–Pastur quadratic
    /// `λγm̄² + (1+λ-γ)m̄ - 1 = 0`.
    MarchenkoPastur,
    /// `AᵀA = I`: `γκ² m_B(κ) + κ(1-γ) - λ = 0`, `m̄ = κ m_B(κ)/λ`.
    IidGeneralB,
    /// `BᵀB = I`: `λγ²m̄² + γ(1-γ)m̄ - m_A(1/(γm̄)) = 0`.
    GeneralAIdentityB,
}

/// Solves the reduced equation of `case` by bracketing and bisection.
/// Independent of [`solve_kappa`]; used to cross-check it.
pub fn case_oracle(case: OracleCase, spec: &ProblemSpec) -> Result<f64> {
    spec.validate()?;
    let (g, lam) = (spec.gamma, spec.lambda);
    let need = |ok: bool, which: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::CaseMismatch(format!(
                "{which} must be the point mass at 1"
            )))
        }
    };
    match case {
        OracleCase::MarchenkoPastur => {
            need(spec.mu_a.is_identity(), "mu_a")?;
            need(spec.mu_b.is_identity(), "mu_b")?;
            let mut q = |m: f64| -> Result<f64> { Ok(lam * g * m * m + (1.0 + lam - g) * m - 1.0) };
            // q(0) = -1 and q grows without bound, so the first crossing is the positive root
            let mut hi = 1.0;
            while q(hi)? <= 0.0 {
                hi *= 2.0;
            }
            first_root(&mut q, 0.0, hi)
        }
        OracleCase::IidGeneralB => {
            need(spec.mu_a.is_identity(), "mu_a")?;
            let mb = &spec.mu_b;
            let mut h =
                |k: f64| -> Result<f64> { Ok(g * k * k * mb.stieltjes(k)? + k * (1.0 - g) - lam) };
            let mut hi = lam + 10.0;
            while h(hi)? <= 0.0 {
                hi *= 2.0;
            }
            let kappa = first_root(&mut h, 1e-12 * hi, hi)?;
            Ok(kappa * mb.stieltjes(kappa)? / lam)
        }
        OracleCase::GeneralAIdentityB => {
            need(spec.mu_b.is_identity(), "mu_b")?;
            let ma = &spec.mu_a;
            let mut p = |m: f64| -> Result<f64> {
                Ok(lam * g * g * m * m + g * (1.0 - g) * m - ma.stieltjes(1.0 / (g * m))?)
            };
            // admissible roots satisfy λm̄ < 1, and p(1/λ) > 0
            let hi = 1.0 / lam;
            first_root(&mut p, 1e-12 * hi, hi)
        }
    }
}

fn first_root(f: &mut impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<f64> {
    let (a, b, fa) = if lo == 0.0 {
        (lo, hi, f(lo)?)
    } else {
        let brackets = sign_changes(f, lo, hi, 256)?;
        let &(a, b, fa, _) = brackets.first().ok_or(Error::NoBracket { upper: hi })?;
        (a, b, fa)
    };
    let (a, b, _) = bisect(f, a, b, fa, 1e-16, 400)?;
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_atoms() -> SpectralMeasure {
        SpectralMeasure::atoms(&[(1.0, 0.5), (2.0, 0.5)]).unwrap()
    }

    fn mp_root(gamma: f64, lambda: f64) -> f64 {
        let (a, b) = (lambda * gamma, 1.0 + lambda - gamma);
        // stable form of (-b + sqrt(b² + 4a)) / 2a
        2.0 / (b + (b * b + 4.0 * a).sqrt())
    }

    #[test]
    fn golden_ratio_case() {
        let spec = ProblemSpec::isotropic(1.0, 1.0, 1.0, 1.0).unwrap();
        let sol = solve_kappa(&spec).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((sol.kappa - phi).abs() < 1e-10, "{}", sol.kappa);
        assert!((sol.m_bar - (phi - 1.0)).abs() < 1e-10);
        assert!(sol.residual < RESIDUAL_TOL);
        assert!(sol.cross_residual < CROSS_RESIDUAL_TOL);
        assert!((sol.dm_dlambda + 1.0 / 5f64.sqrt()).abs() < 1e-9);
        assert!(
            (sol.kappa1 + spec.lambda / spec.mu_b.mtilde_b(1.0, sol.kappa).unwrap()).abs() < 1e-15
        );
    }

    #[test]
    fn general_b_case() {
        // frozen from bisection of γκ²m_B(κ) + κ(1-γ) - λ = 0
        let spec =
            ProblemSpec::new(2.0, 1.0, 1.0, 1.0, SpectralMeasure::identity(), two_atoms()).unwrap();
        let sol = solve_kappa(&spec).unwrap();
        assert!(
            (sol.kappa - 2.935432331970029).abs() < 1e-9,
            "{}",
            sol.kappa
        );
        let mb = spec.mu_b.stieltjes(sol.kappa).unwrap();
        let case2 = 2.0 * sol.kappa * sol.kappa * mb + sol.kappa * (1.0 - 2.0) - 1.0;
        assert!(case2.abs() < 1e-10);
        let oracle = case_oracle(OracleCase::IidGeneralB, &spec).unwrap();
        assert!((oracle - 0.6703326609012443).abs() < 1e-12);
        assert!((sol.m_bar - oracle).abs() < 1e-10);
    }

    #[test]
    fn huge_lambda_limit() {
        let spec = ProblemSpec::isotropic(1.0, 1e6, 1.0, 1.0).unwrap();
        let sol = solve_kappa(&spec).unwrap();
        assert!((spec.lambda * sol.m_bar - 1.0).abs() < 1e-5);
        let r = risk(&spec).unwrap();
        assert!((r.bias - 1.0).abs() < 1e-3);
    }

    #[test]
    fn closed_form_risk() {
        let spec = ProblemSpec::isotropic(1.0, 1.0, 1.0, 1.0).unwrap();
        let r = risk(&spec).unwrap();
        let s5 = 5f64.sqrt();
        assert!((r.bias - 1.0 / s5).abs() < 1e-9);
        assert!((r.variance - ((s5 - 1.0) / 2.0 - 1.0 / s5)).abs() < 1e-9);
        assert!((r.risk - 0.6180339887498949).abs() < 1e-9);
        assert_eq!(r.risk, r.bias + r.variance);
    }

    #[test]
    fn noiseless_has_no_variance() {
        let spec = ProblemSpec::new(0.7, 0.3, 1.0, 0.0, two_atoms(), two_atoms()).unwrap();
        assert_eq!(risk(&spec).unwrap().variance, 0.0);
    }

    #[test]
    fn optimal_lambda_values() {
        assert_eq!(optimal_lambda(2.0, 1.0, 1.0), 2.0);
        assert!((optimal_lambda(2.0, 0.7, 0.2) - 0.16326530612244897).abs() < 1e-15);
        assert_eq!(optimal_lambda(3.0, 1.0, 0.0), 0.0);
    }

    #[test]
    fn mp_oracle_values() {
        let spec = ProblemSpec::isotropic(1.0, 1.0, 1.0, 1.0).unwrap();
        let m = case_oracle(OracleCase::MarchenkoPastur, &spec).unwrap();
        assert!((m - 0.6180339887498949).abs() < 1e-14);
        // positive root of 0.05 m² + 0.6 m - 1
        let spec = ProblemSpec::isotropic(0.5, 0.1, 1.0, 1.0).unwrap();
        let m = case_oracle(OracleCase::MarchenkoPastur, &spec).unwrap();
        assert!((m - 1.4833147735478827).abs() < 1e-12, "{m}");
        assert!((m - mp_root(0.5, 0.1)).abs() < 1e-13);
    }

    #[test]
    fn case_mismatch() {
        let spec =
            ProblemSpec::new(1.0, 1.0, 1.0, 1.0, two_atoms(), SpectralMeasure::identity()).unwrap();
        assert!(matches!(
            case_oracle(OracleCase::MarchenkoPastur, &spec),
            Err(Error::CaseMismatch(_))
        ));
        assert!(matches!(
            case_oracle(OracleCase::IidGeneralB, &spec),
            Err(Error::CaseMismatch(_))
        ));
        assert!(case_oracle(OracleCase::GeneralAIdentityB, &spec).is_ok());
    }

    #[test]
    fn parameter_guards() {
        let err = ProblemSpec::isotropic(1.0, 0.0, 1.0, 1.0).unwrap_err();
        assert_eq!(err.to_string(), "lambda must be positive");
        assert!(ProblemSpec::isotropic(1.0, 1e-9, 1.0, 1.0).is_err());
        assert!(ProblemSpec::isotropic(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(ProblemSpec::isotropic(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ProblemSpec::isotropic(1.0, 1.0, 1.0, -1.0).is_err());
        assert!(ProblemSpec::isotropic(1.0, MIN_LAMBDA, 1.0, 1.0).is_ok());
    }

    #[test]
    fn tiny_lambda_still_solves() {
        for gamma in [0.5, 2.0] {
            let spec = ProblemSpec::new(gamma, 1e-6, 1.0, 1.0, two_atoms(), two_atoms()).unwrap();
            let sol = solve_kappa(&spec).unwrap();
            assert!(sol.dm_dlambda < 0.0 && sol.m_bar > 0.0);
        }
    }

    #[test]
    fn szego_measure_solves() {
        let ar = SpectralMeasure::szego(&[1.0, 0.5], 4096).unwrap();
        let spec = ProblemSpec::new(2.0, 1.0, 1.0, 1.0, ar, SpectralMeasure::identity()).unwrap();
        let sol = solve_kappa(&spec).unwrap();
        let oracle = case_oracle(OracleCase::GeneralAIdentityB, &spec).unwrap();
        assert!((sol.m_bar - oracle).abs() < 1e-8);
    }
}
