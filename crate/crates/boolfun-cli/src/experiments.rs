use crate::args::{AaArgs, JuntaArgs};
use crate::report::Row;
use anyhow::{ensure, Context, Result};
use boolfun::textfmt::format_restriction;
use boolfun::{
    derive_rng, wilson_interval, CoordSet, Family, FamilySpec, Fourier64, RestrictionDistribution,
};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Survival probability log(d) / (survival_c * d).
pub fn survival_probability(d: usize, survival_c: f64) -> Result<f64> {
    ensure!(d >= 1, "--d must be at least 1");
    ensure!(
        survival_c.is_finite() && survival_c > 0.0,
        "--survival-c must be a positive real"
    );
    let p = (d as f64).ln() / (survival_c * d as f64);
    ensure!(
        p <= 1.0,
        "survival probability log(d)/(survival_c*d) = {p} exceeds 1; increase --survival-c or --d"
    );
    Ok(p)
}

pub struct Setup {
    pub f: Fourier64,
    pub label: String,
    pub n: usize,
    pub d: usize,
    pub p: f64,
    pub seed: u64,
}

pub fn prepare(family: &str, d_flag: Option<usize>, survival_c: f64, seed: u64) -> Result<Setup> {
    let family: Family = family
        .parse()
        .with_context(|| format!("bad --family value {family:?}"))?;
    let label = family.to_string();
    let (f, declared) = FamilySpec::new(family, seed)
        .generate::<f64>()
        .context("family generation failed")?;
    let d = d_flag.unwrap_or(declared);
    let p = survival_probability(d, survival_c)?;
    Ok(Setup {
        n: f.n(),
        f,
        label,
        d,
        p,
        seed,
    })
}

fn run_trials<T: Send>(
    workers: usize,
    trials: usize,
    job: impl Fn(u64) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    ensure!(trials >= 1, "--trials must be at least 1");
    let work = || {
        (0..trials as u64)
            .into_par_iter()
            .map(&job)
            .collect::<Result<Vec<T>>>()
    };
    if workers == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .context("worker pool construction failed")?;
        pool.install(work)
    }
}

fn proportion_row(
    setup: &Setup,
    experiment: &str,
    tau_eps: f64,
    hits: u64,
    trials: usize,
) -> Result<Row> {
    let (_, radius) = wilson_interval(hits, trials as u64)?;
    Ok(Row {
        experiment: experiment.to_string(),
        family: setup.label.clone(),
        n: setup.n,
        d: setup.d,
        p: setup.p,
        tau_eps,
        estimate: hits as f64 / trials as f64,
        ci_radius: radius,
        trials,
        seed: setup.seed,
    })
}

fn drain_logs(logs: Vec<Option<String>>) {
    for line in logs.into_iter().flatten() {
        eprintln!("{line}");
    }
}

/// Fraction of sampled restrictions whose influential-coordinate junta is
/// within eps, plus the size distribution of that junta.
pub fn junta_exp(args: &JuntaArgs, seed: u64) -> Result<Vec<Row>> {
    ensure!(
        args.theta.is_finite() && args.theta >= 0.0,
        "--theta must be nonnegative"
    );
    ensure!(
        args.eps.is_finite() && args.eps >= 0.0,
        "--eps must be nonnegative"
    );
    let setup = prepare(&args.family, args.d, args.survival_c, seed)?;
    let dist = RestrictionDistribution::new(setup.n, setup.p, CoordSet::EMPTY)?;
    let f = &setup.f;
    let log = args.log_restrictions;
    let results = run_trials(args.workers, args.trials, |trial| {
        let mut rng = derive_rng(seed, trial);
        let rho = dist.sample(&mut rng);
        let g = f.restrict(&rho)?;
        let junta = g.influential_set(args.theta)?;
        let close = g.junta_distance(junta) <= args.eps;
        Ok((close, junta.len(), log.then(|| format_restriction(&rho))))
    })?;

    let mut close_hits = 0u64;
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    let mut logs = Vec::with_capacity(if log { results.len() } else { 0 });
    for (close, size, line) in results {
        close_hits += u64::from(close);
        *sizes.entry(size).or_insert(0) += 1;
        if log {
            logs.push(line);
        }
    }
    drain_logs(logs);

    let mut rows = vec![proportion_row(
        &setup,
        "junta-exp",
        args.eps,
        close_hits,
        args.trials,
    )?];
    for (size, count) in sizes {
        rows.push(proportion_row(
            &setup,
            &format!("junta-size-{size}"),
            args.eps,
            count,
            args.trials,
        )?);
    }
    Ok(rows)
}

/// Estimates Pr[max influence of the restriction >= tau] and
/// Pr[variance of the restriction >= variance * log(d) / (2 survival_c d)],
/// and echoes the reference lower-bound value
/// variance * log(d) / (50 survival_c d) as its own row.
pub fn aa_exp(args: &AaArgs, seed: u64) -> Result<Vec<Row>> {
    let setup = prepare(&args.family, args.d, args.survival_c, seed)?;
    let variance = setup.f.variance();
    if variance < 1.0 / setup.d as f64 {
        eprintln!(
            "warning: variance {variance} is below 1/d = {}; the functional form \
             under test assumes variance >= 1/d",
            1.0 / setup.d as f64
        );
    }
    let tau = match args.tau {
        Some(t) => {
            ensure!(t.is_finite() && t >= 0.0, "--tau must be nonnegative");
            t
        }
        None => variance * variance / (setup.d as f64).powi(4),
    };
    let d = setup.d as f64;
    let var_bar = variance * d.ln() / (2.0 * args.survival_c * d);
    let bound_value = variance * d.ln() / (50.0 * args.survival_c * d);
    eprintln!(
        "aa-exp constants: survival_c={} p={} tau={tau} variance={variance} \
         variance_bar={var_bar} bound_value={bound_value}",
        args.survival_c, setup.p
    );

    let dist = RestrictionDistribution::new(setup.n, setup.p, CoordSet::EMPTY)?;
    let f = &setup.f;
    let log = args.log_restrictions;
    let results = run_trials(args.workers, args.trials, |trial| {
        let mut rng = derive_rng(seed, trial);
        let rho = dist.sample(&mut rng);
        let g = f.restrict(&rho)?;
        let (_, max_inf) = g.max_influence()?;
        Ok((
            max_inf >= tau,
            g.variance() >= var_bar,
            log.then(|| format_restriction(&rho)),
        ))
    })?;

    let mut inf_hits = 0u64;
    let mut var_hits = 0u64;
    let mut logs = Vec::with_capacity(if log { results.len() } else { 0 });
    for (inf_hit, var_hit, line) in results {
        inf_hits += u64::from(inf_hit);
        var_hits += u64::from(var_hit);
        if log {
            logs.push(line);
        }
    }
    drain_logs(logs);

    let mut bound_row = proportion_row(&setup, "aa-exp-bound-value", var_bar, 0, args.trials)?;
    bound_row.estimate = bound_value;
    bound_row.ci_radius = 0.0;
    Ok(vec![
        proportion_row(&setup, "aa-exp-max-influence", tau, inf_hits, args.trials)?,
        proportion_row(&setup, "aa-exp-variance", var_bar, var_hits, args.trials)?,
        bound_row,
    ])
}
