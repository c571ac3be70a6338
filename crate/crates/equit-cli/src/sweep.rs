//! The equitability sweep: functions x noise levels x replicates x
//! statistics, with calibrated noise schedules and deterministic seeding.

use std::time::Instant;

use equit_core::rng::mix_seed;
use equit_core::stats::r_squared_vs_function;
use equit_core::synth::{
    function_suite, generate_with_xs, noise_schedule, sample_xs, FunctionSpec, NoiseModel,
    ScheduleLevel,
};
use rayon::prelude::*;

use crate::statistics::Statistic;
use crate::AppError;

/// Fully resolved sweep parameters.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Statistics computed on every dataset, in output order.
    pub statistics: Vec<Statistic>,
    /// Noise model applied to the whole suite.
    pub model: NoiseModel,
    /// Sample size per dataset.
    pub n: usize,
    /// Noise levels per function (level 1 is always noiseless).
    pub levels: usize,
    /// Replicate datasets per (function, level).
    pub replicates: usize,
    /// Pilot datasets per calibration probe.
    pub pilot_reps: usize,
    /// Base seed; every per-trial seed is derived from it.
    pub base_seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), AppError> {
        if self.statistics.is_empty() {
            return Err(AppError::Config("no statistics selected".into()));
        }
        if self.n < 20 {
            return Err(AppError::Config(format!("sweep needs n >= 20, got {}", self.n)));
        }
        if self.levels < 1 {
            return Err(AppError::Config("levels must be >= 1".into()));
        }
        if self.replicates < 1 {
            return Err(AppError::Config("replicates must be >= 1".into()));
        }
        if self.pilot_reps < 1 {
            return Err(AppError::Config("pilot replicates must be >= 1".into()));
        }
        Ok(())
    }
}

/// One (statistic, dataset) evaluation.
///
/// `score` is `NaN` when the statistic could not be computed on this
/// dataset; the reason is recorded in `flag` instead of aborting the sweep.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub statistic: String,
    pub function: &'static str,
    pub model: u8,
    pub n: usize,
    /// 1-based noise level.
    pub level: usize,
    /// Calibrated noise half-width at this level.
    pub width: f64,
    /// 1-based replicate index.
    pub replicate: usize,
    /// Seed the dataset was generated from.
    pub seed: u64,
    pub score: f64,
    /// Realized sample R² of this dataset against its noiseless function.
    pub r_squared: f64,
    /// Wall-clock time of the statistic computation (not reproducible).
    pub elapsed_ms: f64,
    /// Empty when nothing noteworthy happened; `unattained` when the
    /// level's R² target was out of reach, `error:<reason>` when the
    /// statistic failed.
    pub flag: String,
}

/// Runs the sweep and returns records ordered by (function, level,
/// replicate, statistic) — function order following the model's suite,
/// statistic order following the config — regardless of how the work was
/// scheduled across threads.
///
/// Seeding: the dataset for (function index `fi`, level `li`, replicate
/// `ri`) uses `mix_seed(base_seed, [fi, li, ri])` with 1-based `li`/`ri`;
/// the calibration for function `fi` uses the `[fi, 0, 0]` slot, which no
/// dataset can collide with. Everything except `elapsed_ms` is a pure
/// function of the config.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<TrialRecord>, AppError> {
    config.validate()?;
    let suite = function_suite(config.model);

    // Per-function groundwork, parallel across functions: the shared
    // x-sample (reused by every replicate) and the calibrated schedule.
    let prepared: Vec<(Vec<f64>, Vec<ScheduleLevel>)> = suite
        .par_iter()
        .enumerate()
        .map(|(fi, spec)| {
            let xs = sample_xs(spec, config.n, config.model.placement())
                .map_err(|e| AppError::Config(format!("{}: {e}", spec.id().id())))?;
            let sched_seed = mix_seed(config.base_seed, &[fi as u64, 0, 0]);
            let sched = noise_schedule(
                spec,
                config.model,
                config.n,
                config.levels,
                config.pilot_reps,
                sched_seed,
            )
            .map_err(|e| AppError::Config(format!("{}: {e}", spec.id().id())))?;
            Ok((xs, sched))
        })
        .collect::<Result<_, AppError>>()?;

    let mut trials: Vec<(usize, usize, usize)> = Vec::new();
    for fi in 0..suite.len() {
        for li in 1..=config.levels {
            for ri in 1..=config.replicates {
                trials.push((fi, li, ri));
            }
        }
    }

    let nested: Vec<Vec<TrialRecord>> = trials
        .par_iter()
        .map(|&(fi, li, ri)| {
            let spec = &suite[fi];
            let (xs, sched) = &prepared[fi];
            let level = sched[li - 1];
            let seed = mix_seed(config.base_seed, &[fi as u64, li as u64, ri as u64]);
            trial_records(config, spec, xs, level, li, ri, seed)
        })
        .collect::<Result<_, AppError>>()?;

    Ok(nested.into_iter().flatten().collect())
}

fn trial_records(
    config: &SweepConfig,
    spec: &FunctionSpec,
    xs: &[f64],
    level: ScheduleLevel,
    li: usize,
    ri: usize,
    seed: u64,
) -> Result<Vec<TrialRecord>, AppError> {
    let data = generate_with_xs(spec, config.model, xs, level.width, seed)
        .map_err(|e| AppError::Config(format!("{}: {e}", spec.id().id())))?;
    let r_squared = if spec.is_random() {
        0.0
    } else {
        let f = |x: f64| spec.evaluate(x).expect("clamped x lies in the domain");
        r_squared_vs_function(&data, f, spec.domain())
            .map_err(|e| AppError::Config(format!("{}: {e}", spec.id().id())))?
    };
    let base_flag = if level.attained { None } else { Some("unattained".to_string()) };

    let mut out = Vec::with_capacity(config.statistics.len());
    for stat in &config.statistics {
        let start = Instant::now();
        let computed = stat.compute(&data);
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (score, flag) = match computed {
            Ok(score) => (score, base_flag.clone().unwrap_or_default()),
            Err(e) => {
                let reason = format!("error:{}", e.to_string().replace([',', ' '], "_"));
                let flag = match &base_flag {
                    Some(b) => format!("{b}+{reason}"),
                    None => reason,
                };
                (f64::NAN, flag)
            }
        };
        out.push(TrialRecord {
            statistic: stat.id(),
            function: spec.id().id(),
            model: config.model.id(),
            n: config.n,
            level: li,
            width: level.width,
            replicate: ri,
            seed,
            score,
            r_squared,
            elapsed_ms,
            flag,
        });
    }
    Ok(out)
}
