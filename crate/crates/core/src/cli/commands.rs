use std::fs::File;
use std::io::{BufWriter, Write};

use super::args::*;
use super::{fmt_num, grid, EXIT_NUMERIC, EXIT_OK};
use crate::asymptotics::{evaluate, optimal_lambda, risk, ProblemSpec};
use crate::error::{Error, Result};
use crate::measures::{empirical_measure, SpectralMeasure};
use crate::simulator::{
    empirical_spectrum, gamma_points, lambda_points, limiting_measure, limiting_measure_at,
    omega_points, run_batch_with, universality_compare, BatchPoint, BatchSummary, CovariateModel,
    EntryDist, LambdaRule, RidgeParams, SampleMixing,
};

pub const SWEEP_HEADER: &str = "axis,value,kappa,m_bar,dm_dlambda,bias,variance,risk";
pub const SIMULATE_HEADER: &str =
    "axis,value,mean_risk,se_risk,mean_bias,se_bias,mean_variance,se_variance,mean_m,se_m,trials,n";
pub const UNIVERSALITY_HEADER: &str = "dist,mean_risk,se_risk,gap_vs_gaussian,gap_se";
pub const SOLVE_HEADER: &str = "gamma,lambda,kappa,m_bar,dm_dlambda,bias,variance,risk,residual";
pub const SPECTRUM_HEADER: &str = "z,m_empirical,m_szego";

pub fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve(a) => solve(a, out),
        Command::Sweep(a) => sweep(a, out, err),
        Command::Simulate(a) => simulate(a, out, err),
        Command::Universality(a) => universality(a, out, err),
        Command::OptimalLambda(a) => optimal(a, out),
        Command::Spectrum(a) => spectrum(a, out),
    }
}

fn open<'a>(path: &Option<String>, out: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("cannot create '{p}': {e}")))?,
        )),
        None => Box::new(out),
    })
}

fn row(w: &mut dyn Write, fields: &[String]) -> Result<()> {
    writeln!(w, "{}", fields.join(","))?;
    w.flush()?;
    Ok(())
}

fn measure_a(m: &MeasureArgs) -> Result<SpectralMeasure> {
    match &m.model_a {
        Some(kind) => limiting_measure_at(kind, m.ref_n),
        None => Ok(m.mu_a.clone()),
    }
}

fn axis_values(g: &GridArgs) -> Result<Vec<f64>> {
    let values = match &g.values {
        Some(v) => {
            if v.is_empty() {
                return Err(Error::InvalidParameter("--values is empty".into()));
            }
            if v.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::InvalidParameter(
                    "--values must be strictly increasing".into(),
                ));
            }
            v.clone()
        }
        // clap guarantees all three are present without --values
        None => grid(
            g.start.unwrap_or(0.0),
            g.stop.unwrap_or(0.0),
            g.steps.unwrap_or(0),
            g.scale,
        )?,
    };
    let ok = |x: &f64| match g.axis {
        Axis::Gamma | Axis::Lambda => *x > 0.0 && x.is_finite(),
        Axis::Omega => (0.0..=1.0).contains(x),
    };
    if let Some(bad) = values.iter().find(|x| !ok(x)) {
        let range = if g.axis == Axis::Omega {
            "in [0, 1]"
        } else {
            "positive"
        };
        return Err(Error::InvalidParameter(format!(
            "{} values must be {range}, got {bad}",
            g.axis.name()
        )));
    }
    Ok(values)
}

/// `--gamma` must be given unless it is the swept axis, and likewise `--lambda`.
fn fixed_params(
    axis: Axis,
    gamma: Option<f64>,
    lambda: Option<LambdaRule>,
) -> Result<(f64, LambdaRule)> {
    let need = |what: &str| {
        Error::InvalidParameter(format!("--{what} is required for --axis {}", axis.name()))
    };
    let clash =
        |what: &str| Error::InvalidParameter(format!("--{what} cannot be fixed while sweeping it"));
    match axis {
        Axis::Gamma => {
            if gamma.is_some() {
                return Err(clash("gamma"));
            }
            Ok((f64::NAN, lambda.ok_or_else(|| need("lambda"))?))
        }
        Axis::Lambda => {
            if lambda.is_some() {
                return Err(clash("lambda"));
            }
            Ok((
                gamma.ok_or_else(|| need("gamma"))?,
                LambdaRule::Fixed(f64::NAN),
            ))
        }
        Axis::Omega => Ok((
            gamma.ok_or_else(|| need("gamma"))?,
            lambda.ok_or_else(|| need("lambda"))?,
        )),
    }
}

fn solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let (alpha, sigma) = (a.noise.alpha, a.noise.sigma);
    let lambda = a.lambda.at(a.gamma, alpha, sigma);
    let spec = ProblemSpec::new(
        a.gamma,
        lambda,
        alpha,
        sigma,
        measure_a(&a.measures)?,
        a.measures.mu_b.clone(),
    )?;
    let (sol, br) = evaluate(&spec)?;
    let record = [
        ("gamma", spec.gamma),
        ("lambda", spec.lambda),
        ("kappa", sol.kappa),
        ("m_bar", sol.m_bar),
        ("dm_dlambda", sol.dm_dlambda),
        ("bias", br.bias),
        ("variance", br.variance),
        ("risk", br.risk),
        ("residual", sol.residual),
    ];
    writeln!(out, "mu_a = {}", spec.mu_a)?;
    writeln!(out, "mu_b = {}", spec.mu_b)?;
    for (k, v) in record {
        writeln!(out, "{k} = {}", fmt_num(v))?;
    }
    if let Some(path) = &a.output {
        let mut w = BufWriter::new(
            File::create(path).map_err(|e| Error::Io(format!("cannot create '{path}': {e}")))?,
        );
        writeln!(w, "{SOLVE_HEADER}")?;
        row(&mut w, &record.map(|(_, v)| fmt_num(v)))?;
    }
    Ok(EXIT_OK)
}

fn sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let axis = a.grid.axis;
    let values = axis_values(&a.grid)?;
    let (gamma, rule) = fixed_params(axis, a.gamma, a.lambda)?;
    let (alpha, sigma) = (a.noise.alpha, a.noise.sigma);
    let mu_b = a.measures.mu_b.clone();
    let base_a = if axis == Axis::Omega {
        None
    } else {
        Some(measure_a(&a.measures)?)
    };

    // every spec is built before any output so that bad input fails cleanly
    let specs = values
        .iter()
        .map(|&v| {
            let (g, l, mu_a) = match axis {
                Axis::Gamma => (v, rule.at(v, alpha, sigma), base_a.clone().unwrap()),
                Axis::Lambda => (gamma, v, base_a.clone().unwrap()),
                Axis::Omega => (
                    gamma,
                    rule.at(gamma, alpha, sigma),
                    limiting_measure_at(&SampleMixing::Redundancy(v), a.measures.ref_n)?,
                ),
            };
            ProblemSpec::new(g, l, alpha, sigma, mu_a, mu_b.clone())
        })
        .collect::<Result<Vec<_>>>()?;

    if axis != Axis::Omega {
        writeln!(err, "mu_a = {}", specs[0].mu_a)?;
    }
    writeln!(err, "mu_b = {mu_b}")?;
    let mut w = open(&a.output, out)?;
    writeln!(w, "{SWEEP_HEADER}")?;
    let mut failures = 0;
    for (v, spec) in values.iter().zip(&specs) {
        let fields = match evaluate(spec) {
            Ok((sol, br)) => [
                sol.kappa,
                sol.m_bar,
                sol.dm_dlambda,
                br.bias,
                br.variance,
                br.risk,
            ],
            Err(e) => {
                failures += 1;
                writeln!(err, "{} = {}: {e}", axis.name(), fmt_num(*v))?;
                [f64::NAN; 6]
            }
        };
        let mut line = vec![axis.name().to_string(), fmt_num(*v)];
        line.extend(fields.iter().map(|&x| fmt_num(x)));
        row(&mut *w, &line)?;
    }
    if failures > 0 {
        writeln!(err, "{failures} of {} grid points failed", values.len())?;
        return Ok(EXIT_NUMERIC);
    }
    Ok(EXIT_OK)
}

fn check_sizes(n: usize, trials: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    Ok(())
}

fn simulate(a: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let axis = a.grid.axis;
    let values = axis_values(&a.grid)?;
    let (gamma, rule) = fixed_params(axis, a.gamma, a.lambda)?;
    let m = &a.model;
    check_sizes(m.n, m.trials)?;
    let model = CovariateModel::new(m.model_a.clone(), m.model_b.clone(), a.dist)?;
    let (alpha, sigma) = (a.noise.alpha, a.noise.sigma);
    let points: Vec<BatchPoint> = match axis {
        Axis::Gamma => gamma_points(&model, m.n, &values, rule, alpha, sigma),
        Axis::Lambda => lambda_points(&model, m.n, gamma, &values, alpha, sigma),
        Axis::Omega => omega_points(&model, m.n, gamma, &values, rule, alpha, sigma),
    };
    for p in &points {
        p.params.validate()?;
    }
    if m.trials == 1 {
        writeln!(
            err,
            "warning: a single trial has no standard error; se columns are 0"
        )?;
    }

    let mut w = open(&a.output, out)?;
    writeln!(w, "{SIMULATE_HEADER}")?;
    w.flush()?;
    let mut emit = |s: &BatchSummary| {
        let mut line = vec![axis.name().to_string(), fmt_num(s.value)];
        for f in [s.risk, s.bias, s.variance, s.m] {
            line.push(fmt_num(f.mean));
            line.push(fmt_num(f.se));
        }
        line.push(s.trials.to_string());
        line.push(s.n.to_string());
        row(&mut *w, &line)
    };
    run_batch_with(m.n, &points, m.trials, m.seed, &mut emit)?;
    Ok(EXIT_OK)
}

fn universality(a: &UniversalityArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let m = &a.model;
    check_sizes(m.n, m.trials)?;
    if !(a.gamma > 0.0 && a.gamma.is_finite()) {
        return Err(Error::InvalidParameter("gamma must be positive".into()));
    }
    let model = CovariateModel::new(m.model_a.clone(), m.model_b.clone(), EntryDist::Gaussian)?;
    let params = RidgeParams {
        lambda: a.lambda.at(a.gamma, a.noise.alpha, a.noise.sigma),
        alpha: a.noise.alpha,
        sigma_eps: a.noise.sigma,
    };
    params.validate()?;
    let report = universality_compare(
        &model,
        m.n,
        a.gamma,
        params,
        m.trials,
        m.seed,
        &EntryDist::ALL,
    )?;

    let mut w = open(&a.output, out)?;
    writeln!(w, "{UNIVERSALITY_HEADER}")?;
    for arm in &report.arms {
        row(
            &mut *w,
            &[
                arm.dist.name().to_string(),
                fmt_num(arm.risk.mean),
                fmt_num(arm.risk.se),
                fmt_num(arm.gap_vs_gaussian),
                fmt_num(arm.gap_se),
            ],
        )?;
    }
    for arm in report.arms.iter().filter(|a| a.dist != EntryDist::Gaussian) {
        let within = arm.gap_vs_gaussian.abs() < 3.0 * arm.gap_se;
        writeln!(
            err,
            "{}: |gap| = {} vs 3 se = {} ({})",
            arm.dist,
            fmt_num(arm.gap_vs_gaussian.abs()),
            fmt_num(3.0 * arm.gap_se),
            if within { "within" } else { "outside" }
        )?;
    }
    Ok(EXIT_OK)
}

fn optimal(a: &OptimalArgs, out: &mut dyn Write) -> Result<i32> {
    let (alpha, sigma) = (a.noise.alpha, a.noise.sigma);
    let star = optimal_lambda(a.gamma, alpha, sigma);
    let spec = ProblemSpec::new(
        a.gamma,
        star,
        alpha,
        sigma,
        measure_a(&a.measures)?,
        a.measures.mu_b.clone(),
    )?;
    if !(a.span > 1.0 && a.span.is_finite()) {
        return Err(Error::InvalidParameter("span must exceed 1".into()));
    }
    let lambdas = grid(
        star / a.span,
        star * a.span,
        a.grid_points,
        super::Scale::Log,
    )?;
    let at_star = risk(&spec)?;
    let mut best = (0, f64::INFINITY);
    for (i, &l) in lambdas.iter().enumerate() {
        let r = risk(&spec.with_lambda(l))?.risk;
        if r < best.1 {
            best = (i, r);
        }
    }
    let step = lambdas[1] / lambdas[0];
    let argmin = lambdas[best.0];
    let steps_away = (argmin / star).ln().abs() / step.ln();
    writeln!(out, "lambda_star = {}", fmt_num(star))?;
    writeln!(out, "risk_at_star = {}", fmt_num(at_star.risk))?;
    writeln!(out, "grid_argmin = {}", fmt_num(argmin))?;
    writeln!(out, "grid_min_risk = {}", fmt_num(best.1))?;
    writeln!(out, "grid_steps_from_star = {}", fmt_num(steps_away))?;
    Ok(EXIT_OK)
}

fn spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<i32> {
    let eig = empirical_spectrum(&a.model_a, a.n)?;
    let mut w = open(&a.output, out)?;
    if a.raw {
        writeln!(w, "eigenvalue")?;
        for e in &eig {
            writeln!(w, "{}", fmt_num(*e))?;
        }
        w.flush()?;
        return Ok(EXIT_OK);
    }
    let emp = empirical_measure(&eig)?;
    let limit = limiting_measure(&a.model_a)?;
    writeln!(w, "{SPECTRUM_HEADER}")?;
    for z in stieltjes_grid() {
        row(
            &mut *w,
            &[
                fmt_num(z),
                fmt_num(emp.stieltjes(z)?),
                fmt_num(limit.stieltjes(z)?),
            ],
        )?;
    }
    Ok(EXIT_OK)
}

/// `logspace(-2, 2, 50)`
pub fn stieltjes_grid() -> Vec<f64> {
    (0..50)
        .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / 49.0))
        .collect()
}
