//! Flag parsing, config-file merging, and subcommand dispatch.
//!
//! Every command is deterministic given its flags and seed (wall-clock
//! timings excepted): reruns produce byte-identical dataset and record
//! CSVs for any thread count.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use equit_core::mic::MicParams;
use equit_core::synth::{
    calibrate_width, generate, sample_d_alpha, FunctionId, NoiseModel, ALL_FUNCTIONS,
};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::benchrun::{runtime_benchmark, BenchConfig, BENCH_DEFAULT_FUNCTIONS};
use crate::formats::{
    dataset_csv, read_dataset_csv, records_csv, timings_csv, unix_now, write_manifest, write_text,
    RunManifest,
};
use crate::gap::{equitability_gap, GAP_BIN_WIDTH};
use crate::statistics::Statistic;
use crate::sweep::{run_sweep, SweepConfig};
use crate::AppError;

mod defaults {
    pub const STATS: &str = "mic";
    pub const ALPHA: f64 = 0.6;
    pub const C: f64 = 15.0;
    pub const K: usize = 6;
    pub const MODEL: u8 = 1;
    pub const N: usize = 500;
    pub const LEVELS: usize = 10;
    pub const REPS: usize = 5;
    pub const PILOT_REPS: usize = 5;
    pub const SEED: u64 = 17;
    pub const GEN_N: usize = 1000;
    pub const SWEEP_OUT: &str = "records.csv";
    pub const BENCH_OUT: &str = "timings.csv";
}

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "EQUIT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "equit",
    version,
    about = "Dependence statistics and equitability benchmarks",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute dependence statistics on a two-column CSV file.
    Score(ScoreArgs),
    /// Run the functions x levels x replicates x statistics sweep.
    Sweep(Box<SweepArgs>),
    /// Time the grid-search computation across sizes and parameters.
    Bench(BenchArgs),
    /// Generate one synthetic dataset.
    Gen(GenArgs),
}

/// Runs one parsed invocation.
pub fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Score(args) => cmd_score(args),
        Command::Sweep(args) => cmd_sweep(*args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

#[derive(Args, Debug)]
pub struct ScoreArgs {
    /// Input CSV with two numeric columns and an optional header row.
    pub input: PathBuf,
    /// Comma-separated statistic tokens: mic, mic1, mic2, mic3, mic_ex,
    /// mi<k>, dcor, pearson.
    #[arg(long = "stats", visible_alias = "stat", default_value = defaults::STATS)]
    pub stats: String,
    /// Grid-budget exponent: grids may use up to n^alpha cells.
    #[arg(long, default_value_t = defaults::ALPHA)]
    pub alpha: f64,
    /// Clump factor: the column search works on up to c*x superclumps.
    #[arg(long, default_value_t = defaults::C)]
    pub c: f64,
    /// Fixed grid budget overriding n^alpha.
    #[arg(long)]
    pub b: Option<f64>,
    /// Neighbor count used by a bare `mi` token.
    #[arg(long, default_value_t = defaults::K)]
    pub k: usize,
}

fn cmd_score(args: ScoreArgs) -> Result<(), AppError> {
    let params = MicParams { alpha: args.alpha, c: args.c, b_override: args.b };
    params.validate().map_err(|e| AppError::Config(e.to_string()))?;
    if args.k == 0 {
        return Err(AppError::Config("k must be >= 1".into()));
    }
    let statistics = Statistic::parse_list(&args.stats, params, args.k)?;
    let data = read_dataset_csv(&args.input)?;

    println!("statistic,parameters,score");
    for stat in &statistics {
        let score =
            stat.compute(&data).map_err(|e| AppError::Config(format!("{}: {e}", stat.id())))?;
        println!("{},{},{}", stat.id(), stat.params_string(), score);
    }
    Ok(())
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// Comma-separated statistic tokens.
    #[arg(long = "stats", visible_alias = "stat")]
    pub stats: Option<String>,
    /// Noise model id (1..=6).
    #[arg(long)]
    pub model: Option<u8>,
    /// Sample size per dataset (>= 20).
    #[arg(long)]
    pub n: Option<usize>,
    /// Noise levels per function; level 1 is always noiseless.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Replicate datasets per (function, level).
    #[arg(long)]
    pub reps: Option<usize>,
    /// Base seed; every trial seed derives from it.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Grid-budget exponent for the grid statistics.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Clump factor for the grid statistics.
    #[arg(long)]
    pub c: Option<f64>,
    /// Fixed grid budget overriding n^alpha.
    #[arg(long)]
    pub b: Option<f64>,
    /// Neighbor count used by a bare `mi` token.
    #[arg(long)]
    pub k: Option<usize>,
    /// Pilot datasets per calibration probe.
    #[arg(long)]
    pub pilot_reps: Option<usize>,
    /// Records CSV path; a manifest is written alongside.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (or set EQUIT_THREADS; default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Flat JSON file supplying any of these settings; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Config-file counterpart of [`SweepArgs`]; same keys as the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    stats: Option<String>,
    model: Option<u8>,
    n: Option<usize>,
    levels: Option<usize>,
    reps: Option<usize>,
    seed: Option<u64>,
    alpha: Option<f64>,
    c: Option<f64>,
    b: Option<f64>,
    k: Option<usize>,
    pilot_reps: Option<usize>,
    out: Option<PathBuf>,
    threads: Option<usize>,
}

/// Sweep settings after flag/file/default merging.
#[derive(Debug)]
struct ResolvedSweep {
    stats: String,
    model: u8,
    n: usize,
    levels: usize,
    reps: usize,
    seed: u64,
    alpha: f64,
    c: f64,
    b: Option<f64>,
    k: usize,
    pilot_reps: usize,
    out: PathBuf,
    threads: Option<usize>,
}

fn load_file_config(path: &PathBuf) -> Result<FileConfig, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| AppError::Parse(format!("{}: invalid config: {e}", path.display())))
}

fn resolve_sweep(args: SweepArgs) -> Result<ResolvedSweep, AppError> {
    let file = match &args.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };
    Ok(ResolvedSweep {
        stats: args.stats.or(file.stats).unwrap_or_else(|| defaults::STATS.into()),
        model: args.model.or(file.model).unwrap_or(defaults::MODEL),
        n: args.n.or(file.n).unwrap_or(defaults::N),
        levels: args.levels.or(file.levels).unwrap_or(defaults::LEVELS),
        reps: args.reps.or(file.reps).unwrap_or(defaults::REPS),
        seed: args.seed.or(file.seed).unwrap_or(defaults::SEED),
        alpha: args.alpha.or(file.alpha).unwrap_or(defaults::ALPHA),
        c: args.c.or(file.c).unwrap_or(defaults::C),
        b: args.b.or(file.b),
        k: args.k.or(file.k).unwrap_or(defaults::K),
        pilot_reps: args.pilot_reps.or(file.pilot_reps).unwrap_or(defaults::PILOT_REPS),
        out: args.out.or(file.out).unwrap_or_else(|| defaults::SWEEP_OUT.into()),
        threads: args.threads.or(file.threads),
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<(), AppError> {
    let resolved = resolve_sweep(args)?;
    if let Some(t) = resolve_threads(resolved.threads)? {
        // A failure here means a pool already exists (possible when
        // embedded in tests); the run stays correct, just on that pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let params = MicParams { alpha: resolved.alpha, c: resolved.c, b_override: resolved.b };
    params.validate().map_err(|e| AppError::Config(e.to_string()))?;
    if resolved.k == 0 {
        return Err(AppError::Config("k must be >= 1".into()));
    }
    let model = NoiseModel::new(resolved.model).map_err(|e| AppError::Config(e.to_string()))?;
    let config = SweepConfig {
        statistics: Statistic::parse_list(&resolved.stats, params, resolved.k)?,
        model,
        n: resolved.n,
        levels: resolved.levels,
        replicates: resolved.reps,
        pilot_reps: resolved.pilot_reps,
        base_seed: resolved.seed,
    };

    let started_at = unix_now();
    let records = run_sweep(&config)?;
    let finished_at = unix_now();

    write_text(&resolved.out, &records_csv(&records))?;
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION"),
        command: "sweep".into(),
        config: sweep_manifest_config(&resolved),
        base_seed: resolved.seed,
        threads: rayon::current_num_threads(),
        started_at,
        finished_at,
    };
    write_manifest(&resolved.out, &manifest)?;

    println!("wrote {} records to {}", records.len(), resolved.out.display());
    println!("equitability gap (bin width {GAP_BIN_WIDTH}):");
    for summary in equitability_gap(&records) {
        let scope = if summary.cross_type { "cross-type" } else { "within-type only" };
        println!(
            "  {}: {:.4} over {} populated bins ({scope})",
            summary.statistic,
            summary.max_gap,
            summary.bins.len()
        );
    }
    Ok(())
}

fn sweep_manifest_config(r: &ResolvedSweep) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("stats".into(), json!(r.stats));
    map.insert("model".into(), json!(r.model));
    map.insert("n".into(), json!(r.n));
    map.insert("levels".into(), json!(r.levels));
    map.insert("reps".into(), json!(r.reps));
    map.insert("seed".into(), json!(r.seed));
    map.insert("alpha".into(), json!(r.alpha));
    map.insert("c".into(), json!(r.c));
    map.insert("b".into(), json!(r.b));
    map.insert("k".into(), json!(r.k));
    map.insert("pilot_reps".into(), json!(r.pilot_reps));
    map.insert("out".into(), json!(r.out.display().to_string()));
    map
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated sample sizes.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Comma-separated grid-budget exponents, zipped with --c.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Comma-separated clump factors, zipped with --alpha.
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<f64>,
    /// Datasets per (size, function) cell.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Pilot datasets per calibration probe.
    #[arg(long)]
    pub pilot_reps: Option<usize>,
    /// Base seed for dataset generation.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Timings CSV path; a manifest is written alongside.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Threads for the timed section (default 1, or EQUIT_THREADS).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Pairs up the `--alpha` and `--c` lists: equal lengths zip, a singleton
/// broadcasts.
fn zip_params(alpha: &[f64], c: &[f64]) -> Result<Vec<(f64, f64)>, AppError> {
    let pairs = match (alpha.len(), c.len()) {
        (a, b) if a == b => alpha.iter().copied().zip(c.iter().copied()).collect(),
        (_, 1) => alpha.iter().map(|&a| (a, c[0])).collect(),
        (1, _) => c.iter().map(|&cc| (alpha[0], cc)).collect(),
        (a, b) => {
            return Err(AppError::Config(format!(
                "--alpha has {a} values but --c has {b}; give matching lists or a single value"
            )))
        }
    };
    Ok(pairs)
}

fn cmd_bench(args: BenchArgs) -> Result<(), AppError> {
    if args.n.is_empty() {
        return Err(AppError::Config("benchmark needs at least one sample size (--n)".into()));
    }
    let alpha = if args.alpha.is_empty() { vec![defaults::ALPHA] } else { args.alpha.clone() };
    let c = if args.c.is_empty() { vec![defaults::C] } else { args.c.clone() };
    let param_pairs = zip_params(&alpha, &c)?;
    let threads = resolve_threads(args.threads)?.unwrap_or(1);
    let out: PathBuf = args.out.clone().unwrap_or_else(|| defaults::BENCH_OUT.into());

    let config = BenchConfig {
        sizes: args.n.clone(),
        functions: BENCH_DEFAULT_FUNCTIONS.to_vec(),
        param_pairs,
        levels: args.levels.unwrap_or(defaults::LEVELS),
        pilot_reps: args.pilot_reps.unwrap_or(defaults::PILOT_REPS),
        base_seed: args.seed.unwrap_or(defaults::SEED),
        threads,
    };

    let started_at = unix_now();
    let rows = runtime_benchmark(&config)?;
    let finished_at = unix_now();

    write_text(&out, &timings_csv(&rows))?;
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION"),
        command: "bench".into(),
        config: bench_manifest_config(&config, &out),
        base_seed: config.base_seed,
        threads,
        started_at,
        finished_at,
    };
    write_manifest(&out, &manifest)?;
    println!("wrote {} timing rows to {}", rows.len(), out.display());
    Ok(())
}

fn bench_manifest_config(config: &BenchConfig, out: &Path) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("n".into(), json!(config.sizes));
    map.insert(
        "functions".into(),
        json!(config.functions.iter().map(|f| f.id()).collect::<Vec<_>>()),
    );
    map.insert("alpha".into(), json!(config.param_pairs.iter().map(|p| p.0).collect::<Vec<_>>()));
    map.insert("c".into(), json!(config.param_pairs.iter().map(|p| p.1).collect::<Vec<_>>()));
    map.insert("levels".into(), json!(config.levels));
    map.insert("pilot_reps".into(), json!(config.pilot_reps));
    map.insert("seed".into(), json!(config.base_seed));
    map.insert("out".into(), json!(out.display().to_string()));
    map
}

#[derive(Args, Debug, Default)]
pub struct GenArgs {
    /// Function token, e.g. line, parabola, sine_high_freq.
    #[arg(long)]
    pub function: Option<String>,
    /// Generate the two-block grid distribution with this parameter
    /// instead of a function (takes no noise settings).
    #[arg(long)]
    pub dalpha: Option<f64>,
    /// Noise model id (1..=6).
    #[arg(long)]
    pub model: Option<u8>,
    /// Sample size.
    #[arg(long, default_value_t = defaults::GEN_N)]
    pub n: usize,
    /// Noise half-width.
    #[arg(long)]
    pub width: Option<f64>,
    /// Calibrate the width to hit this mean pilot R² instead of --width.
    #[arg(long)]
    pub target_r2: Option<f64>,
    /// Pilot datasets per calibration probe.
    #[arg(long)]
    pub pilot_reps: Option<usize>,
    /// Base seed.
    #[arg(long, default_value_t = defaults::SEED)]
    pub seed: u64,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn cmd_gen(args: GenArgs) -> Result<(), AppError> {
    let (csv, note) = gen_dataset(&args)?;
    match &args.out {
        Some(path) => {
            write_text(path, &csv)?;
            if let Some(note) = note {
                println!("{note}");
            }
            println!("wrote {} to {}", args.n, path.display());
        }
        None => {
            // The dataset owns stdout; keep the calibration note visible
            // on stderr.
            if let Some(note) = note {
                eprintln!("{note}");
            }
            print!("{csv}");
        }
    }
    Ok(())
}

/// Produces the dataset CSV and an optional calibration note.
fn gen_dataset(args: &GenArgs) -> Result<(String, Option<String>), AppError> {
    match (&args.function, args.dalpha) {
        (Some(_), Some(_)) => {
            Err(AppError::Config("--function and --dalpha are mutually exclusive".into()))
        }
        (None, None) => Err(AppError::Config("one of --function or --dalpha is required".into())),
        (None, Some(alpha)) => {
            if args.model.is_some() || args.width.is_some() || args.target_r2.is_some() {
                return Err(AppError::Config(
                    "--dalpha draws from a fixed distribution; --model, --width, and \
                     --target-r2 do not apply"
                        .into(),
                ));
            }
            let data = sample_d_alpha(alpha, args.n, args.seed)
                .map_err(|e| AppError::Config(e.to_string()))?;
            Ok((dataset_csv(&data), None))
        }
        (Some(name), None) => {
            let id = FunctionId::from_id(name).ok_or_else(|| {
                let valid: Vec<&str> = ALL_FUNCTIONS.iter().map(|f| f.id()).collect();
                AppError::Config(format!(
                    "unknown function {name:?}; valid names: {}",
                    valid.join(", ")
                ))
            })?;
            let spec = id.spec();
            let model = NoiseModel::new(args.model.unwrap_or(defaults::MODEL))
                .map_err(|e| AppError::Config(e.to_string()))?;
            let (width, note) = match (args.width, args.target_r2) {
                (Some(_), Some(_)) => {
                    return Err(AppError::Config(
                        "--width and --target-r2 are mutually exclusive".into(),
                    ))
                }
                (Some(w), None) => (w, None),
                (None, None) => (0.0, None),
                (None, Some(t)) => {
                    let pilot_reps = args.pilot_reps.unwrap_or(defaults::PILOT_REPS);
                    let level = calibrate_width(&spec, model, args.n, t, pilot_reps, args.seed)
                        .map_err(|e| AppError::Config(e.to_string()))?;
                    let mut note = format!(
                        "calibrated width {} (pilot R^2 {:.4}, target {t})",
                        level.width, level.pilot_r2
                    );
                    if !level.attained {
                        note.push_str(" [target unattainable; closest width used]");
                    }
                    (level.width, Some(note))
                }
            };
            let data = generate(&spec, model, args.n, width, args.seed)
                .map_err(|e| AppError::Config(e.to_string()))?;
            Ok((dataset_csv(&data), note))
        }
    }
}

/// Resolves the worker-thread request: flag first, then `EQUIT_THREADS`.
fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, AppError> {
    let value = match flag {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(raw) => Some(raw.trim().parse::<usize>().map_err(|_| {
                AppError::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))
            })?),
            Err(_) => None,
        },
    };
    match value {
        Some(0) => Err(AppError::Config("threads must be >= 1".into())),
        other => Ok(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_override_config_file_which_overrides_defaults() {
        let path = std::env::temp_dir().join(format!("equit-cfg-{}.json", std::process::id()));
        std::fs::write(&path, r#"{"n": 64, "model": 3, "stats": "dcor"}"#).unwrap();
        let args = SweepArgs {
            n: Some(128),
            config: Some(path.clone()),
            ..SweepArgs::default()
        };
        let resolved = resolve_sweep(args).unwrap();
        assert_eq!(resolved.n, 128, "flag wins over file");
        assert_eq!(resolved.model, 3, "file wins over default");
        assert_eq!(resolved.stats, "dcor");
        assert_eq!(resolved.levels, defaults::LEVELS, "default fills the rest");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn unknown_config_keys_are_parse_errors() {
        let path = std::env::temp_dir().join(format!("equit-badcfg-{}.json", std::process::id()));
        std::fs::write(&path, r#"{"samples": 64}"#).unwrap();
        let err = resolve_sweep(SweepArgs {
            config: Some(path.clone()),
            ..SweepArgs::default()
        })
        .unwrap_err();
        assert!(matches!(err, AppError::Parse(_)), "{err:?}");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn param_lists_zip_and_broadcast() {
        assert_eq!(zip_params(&[0.6, 0.55], &[15.0, 5.0]).unwrap(), vec![(0.6, 15.0), (0.55, 5.0)]);
        assert_eq!(zip_params(&[0.6], &[15.0, 5.0]).unwrap(), vec![(0.6, 15.0), (0.6, 5.0)]);
        assert_eq!(zip_params(&[0.6, 0.5], &[15.0]).unwrap(), vec![(0.6, 15.0), (0.5, 15.0)]);
        assert!(zip_params(&[0.6, 0.5], &[15.0, 5.0, 1.0]).is_err());
    }

    #[test]
    fn gen_argument_conflicts_are_config_errors() {
        let both = GenArgs {
            function: Some("line".into()),
            dalpha: Some(0.25),
            ..GenArgs::default()
        };
        assert!(matches!(gen_dataset(&both), Err(AppError::Config(_))));

        let neither = GenArgs::default();
        assert!(matches!(gen_dataset(&neither), Err(AppError::Config(_))));

        let dalpha_noise = GenArgs {
            dalpha: Some(0.25),
            width: Some(0.1),
            n: 100,
            ..GenArgs::default()
        };
        assert!(matches!(gen_dataset(&dalpha_noise), Err(AppError::Config(_))));

        let unknown = GenArgs { function: Some("helix".into()), n: 100, ..GenArgs::default() };
        let err = gen_dataset(&unknown).unwrap_err();
        assert!(err.to_string().contains("valid names"), "{err}");
        assert!(err.to_string().contains("line"), "{err}");

        let width_and_target = GenArgs {
            function: Some("line".into()),
            width: Some(0.1),
            target_r2: Some(0.5),
            n: 100,
            ..GenArgs::default()
        };
        assert!(matches!(gen_dataset(&width_and_target), Err(AppError::Config(_))));
    }

    #[test]
    fn gen_produces_identical_bytes_for_identical_settings() {
        let args = GenArgs {
            function: Some("parabola".into()),
            model: Some(4),
            n: 50,
            width: Some(0.2),
            seed: 9,
            ..GenArgs::default()
        };
        let (a, _) = gen_dataset(&args).unwrap();
        let (b, _) = gen_dataset(&args).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("x,y\n"));
        assert_eq!(a.lines().count(), 51);
    }

    #[test]
    fn gen_with_a_target_reports_the_calibration() {
        let args = GenArgs {
            function: Some("line".into()),
            n: 400,
            target_r2: Some(0.5),
            pilot_reps: Some(2),
            seed: 3,
            ..GenArgs::default()
        };
        let (_, note) = gen_dataset(&args).unwrap();
        let note = note.expect("calibration note");
        assert!(note.contains("calibrated width"), "{note}");
        assert!(!note.contains("unattainable"), "{note}");

        let random = GenArgs {
            function: Some("random".into()),
            n: 100,
            target_r2: Some(0.5),
            pilot_reps: Some(2),
            ..GenArgs::default()
        };
        let (_, note) = gen_dataset(&random).unwrap();
        assert!(note.unwrap().contains("unattainable"));
    }

    #[test]
    fn thread_resolution_validates_values() {
        assert_eq!(resolve_threads(Some(4)).unwrap(), Some(4));
        assert!(resolve_threads(Some(0)).is_err());
    }
}
