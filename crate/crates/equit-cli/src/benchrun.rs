//! Runtime benchmark: wall-clock cost of the characteristic-matrix
//! computation across sample sizes, function shapes, and grid-search
//! parameters.

use std::time::Instant;

use equit_core::mic::{mic, MicParams};
use equit_core::rng::mix_seed;
use equit_core::synth::{generate_with_xs, noise_schedule, sample_xs, FunctionId, NoiseModel};

use crate::formats::TimingRow;
use crate::AppError;

/// Default benchmark suite: a spread of easy, steep, oscillating, and null
/// shapes.
pub const BENCH_DEFAULT_FUNCTIONS: [FunctionId; 8] = [
    FunctionId::Line,
    FunctionId::ExpTen,
    FunctionId::Sigmoid,
    FunctionId::Parabola,
    FunctionId::Cubic,
    FunctionId::SineHighFreq,
    FunctionId::VaryingFreqCosine,
    FunctionId::Random,
];

/// Fully resolved benchmark parameters.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Sample sizes, one row group per size.
    pub sizes: Vec<usize>,
    /// Functions timed at each size.
    pub functions: Vec<FunctionId>,
    /// `(alpha, c)` grid-search parameter pairs.
    pub param_pairs: Vec<(f64, f64)>,
    /// Datasets per cell, drawn from an evenly spaced noise ladder.
    pub levels: usize,
    /// Pilot datasets per calibration probe.
    pub pilot_reps: usize,
    /// Base seed for dataset generation.
    pub base_seed: u64,
    /// Threads for the timed section. Defaults to 1 so timings measure
    /// the algorithm, not the scheduler.
    pub threads: usize,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), AppError> {
        if self.sizes.is_empty() {
            return Err(AppError::Config("benchmark needs at least one sample size".into()));
        }
        if let Some(&bad) = self.sizes.iter().find(|&&n| n < 20) {
            return Err(AppError::Config(format!("benchmark sizes must be >= 20, got {bad}")));
        }
        if self.functions.is_empty() {
            return Err(AppError::Config("benchmark needs at least one function".into()));
        }
        if self.param_pairs.is_empty() {
            return Err(AppError::Config("benchmark needs at least one (alpha, c) pair".into()));
        }
        for &(alpha, c) in &self.param_pairs {
            let params = MicParams { alpha, c, b_override: None };
            params
                .validate()
                .map_err(|e| AppError::Config(format!("alpha={alpha}, c={c}: {e}")))?;
        }
        if self.levels < 1 || self.pilot_reps < 1 {
            return Err(AppError::Config("levels and pilot replicates must be >= 1".into()));
        }
        if self.threads < 1 {
            return Err(AppError::Config("threads must be >= 1".into()));
        }
        Ok(())
    }
}

/// Times the score computation over `sizes x functions x param_pairs`.
///
/// Each cell generates `levels` datasets along a calibrated noise ladder
/// (noise model 1) and reports the mean wall-clock milliseconds of the
/// characteristic-matrix + MIC computation alone — generation and
/// calibration happen outside the timed section, which runs on a dedicated
/// pool of `threads` workers. Row order is (size, function, pair). The
/// datasets are reproducible; the timings, by nature, are not.
pub fn runtime_benchmark(config: &BenchConfig) -> Result<Vec<TimingRow>, AppError> {
    config.validate()?;
    let model = NoiseModel::new(1).expect("model 1 is valid");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| AppError::Config(format!("cannot build thread pool: {e}")))?;

    let mut rows = Vec::with_capacity(config.sizes.len() * config.functions.len());
    for (si, &n) in config.sizes.iter().enumerate() {
        for (fi, &id) in config.functions.iter().enumerate() {
            let spec = id.spec();
            let xs = sample_xs(&spec, n, model.placement())
                .map_err(|e| AppError::Config(format!("{}: {e}", id.id())))?;
            let sched_seed = mix_seed(config.base_seed, &[si as u64, fi as u64, 0]);
            let sched = noise_schedule(&spec, model, n, config.levels, config.pilot_reps, sched_seed)
                .map_err(|e| AppError::Config(format!("{}: {e}", id.id())))?;
            let datasets = sched
                .iter()
                .enumerate()
                .map(|(li, level)| {
                    let seed =
                        mix_seed(config.base_seed, &[si as u64, fi as u64, li as u64 + 1]);
                    generate_with_xs(&spec, model, &xs, level.width, seed)
                        .map_err(|e| AppError::Config(format!("{}: {e}", id.id())))
                })
                .collect::<Result<Vec<_>, _>>()?;

            for &(alpha, c) in &config.param_pairs {
                let params = MicParams { alpha, c, b_override: None };
                let mut total_ms = 0.0;
                for data in &datasets {
                    let start = Instant::now();
                    let score = pool.install(|| mic(data, &params));
                    total_ms += start.elapsed().as_secs_f64() * 1e3;
                    score.map_err(|e| {
                        AppError::Config(format!("{} at n={n}, alpha={alpha}, c={c}: {e}", id.id()))
                    })?;
                }
                rows.push(TimingRow {
                    n,
                    function: id.id(),
                    alpha,
                    c,
                    mean_ms: total_ms / datasets.len() as f64,
                    runs: datasets.len(),
                });
            }
        }
    }
    Ok(rows)
}
