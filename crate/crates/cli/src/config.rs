//! Command-line surface and its translation into a [`RunConfig`].
//!
//! Two entry styles feed the same config: named flags, and a compatibility
//! mode taking the classic five positional arguments (solver, dataset,
//! sub-folder, timeout, workers) for drop-in use in existing scripts.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use jobshop_core::io::BenchmarkKind;
use jobshop_core::known_optima::{SuccessorGap, DEFAULT_MIN_DURATION, DEFAULT_TARGET_MAKESPAN};
use jobshop_core::solver::DispatchRule;
use jobshop_core::suite::{
    KnownOptimaSuiteOptions, LargeTaSuiteOptions, DEFAULT_BASE_SEED,
};
use jobshop_core::taillard::{
    DEFAULT_DURATION_HIGH, DEFAULT_DURATION_LOW, DEFAULT_INSTANCES_PER_GROUP,
};
use jobshop_core::Time;

const COMPAT_HELP: &str = "\
Compatibility mode: exactly five positional arguments, none starting with
a dash, are read as <solver 0-3> <dataset 0-2> <subfolder> <timeout-s>
<workers>. Solvers 0-3 map to the spt, lpt, mwr, and fifo rules; dataset 0
is large-ta, dataset 1 is known-optima. The run is equivalent to
--command solve with the matching flags.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    GenerateTa,
    GenerateKo,
    Validate,
    Stats,
    Solve,
}

#[derive(Parser, Debug)]
#[command(
    name = "jobshop",
    version,
    about = "Generate, validate, and solve job-shop benchmark suites",
    after_help = COMPAT_HELP
)]
pub struct Cli {
    /// What to do: generate a suite, or traverse one.
    #[arg(long, value_enum)]
    pub command: CommandKind,

    /// Benchmark tree to traverse (large-ta or known-optima). Required for
    /// validate, stats, and solve; the generate commands imply it.
    #[arg(long, value_parser = str::parse::<BenchmarkKind>)]
    pub benchmark: Option<BenchmarkKind>,

    /// Root directory holding large/, bench/, and results/.
    #[arg(long, default_value = ".")]
    pub root: PathBuf,

    /// Restrict traversal to one sub-folder; all sub-folders otherwise.
    #[arg(long)]
    pub subfolder: Option<String>,

    /// Per-instance solve budget in seconds.
    #[arg(long, default_value_t = 600, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_s: u64,

    /// Worker threads for generating and solving.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,

    /// Base seed for the generators.
    #[arg(long, default_value_t = DEFAULT_BASE_SEED)]
    pub seed: u64,

    /// Dispatching rule for solve (spt, lpt, mwr, fifo); all four when
    /// omitted.
    #[arg(long, value_parser = str::parse::<DispatchRule>)]
    pub rule: Option<DispatchRule>,

    /// Sub-folders to spread generated instances over.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub subfolders: u64,

    /// generate-ta: instances per size group.
    #[arg(long, default_value_t = DEFAULT_INSTANCES_PER_GROUP)]
    pub instances_per_group: usize,

    /// generate-ta: smallest operation duration.
    #[arg(long, default_value_t = DEFAULT_DURATION_LOW)]
    pub duration_low: Time,

    /// generate-ta: largest operation duration.
    #[arg(long, default_value_t = DEFAULT_DURATION_HIGH)]
    pub duration_high: Time,

    /// generate-ko: suite shape as MACHINESxOPS (e.g. 100x10000); repeat
    /// for several shapes. The built-in four-shape suite when omitted.
    #[arg(long = "ko-shape", value_name = "MACHINESxOPS", value_parser = parse_shape)]
    pub ko_shapes: Vec<Shape>,

    /// generate-ko: instances per shape and linking mode.
    #[arg(long, default_value_t = 3)]
    pub instances_per_shape: usize,

    /// generate-ko: optimal makespan built into every instance.
    #[arg(long, default_value_t = DEFAULT_TARGET_MAKESPAN)]
    pub target_makespan: Time,

    /// generate-ko: smallest operation duration.
    #[arg(long, default_value_t = DEFAULT_MIN_DURATION)]
    pub min_duration: Time,

    /// generate-ko: let a successor start exactly when its predecessor
    /// ends instead of requiring a positive gap.
    #[arg(long)]
    pub non_strict_gap: bool,
}

/// `(machine_count, total_ops)` as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape(pub usize, pub usize);

fn parse_shape(s: &str) -> Result<Shape, String> {
    let err = || format!("expected MACHINESxOPS such as 100x10000, got {s:?}");
    let (machines, ops) = s.split_once(['x', 'X']).ok_or_else(err)?;
    Ok(Shape(
        machines.trim().parse().map_err(|_| err())?,
        ops.trim().parse().map_err(|_| err())?,
    ))
}

/// Everything one run needs, however the arguments arrived.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub benchmark: Option<BenchmarkKind>,
    pub root: PathBuf,
    pub subfolder: Option<String>,
    pub timeout: Duration,
    pub workers: usize,
    pub rule: Option<DispatchRule>,
    pub large_ta: LargeTaSuiteOptions,
    pub known_optima: KnownOptimaSuiteOptions,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> RunConfig {
        let subfolder_count = cli.subfolders as usize;
        let large_ta = LargeTaSuiteOptions {
            instances_per_group: cli.instances_per_group,
            base_seed: cli.seed,
            duration_low: cli.duration_low,
            duration_high: cli.duration_high,
            subfolder_count,
        };
        let mut known_optima = KnownOptimaSuiteOptions {
            base_seed: cli.seed,
            instances_per_shape: cli.instances_per_shape,
            target_makespan: cli.target_makespan,
            min_duration: cli.min_duration,
            successor_gap: if cli.non_strict_gap {
                SuccessorGap::NonStrict
            } else {
                SuccessorGap::Strict
            },
            subfolder_count,
            ..KnownOptimaSuiteOptions::default()
        };
        if !cli.ko_shapes.is_empty() {
            known_optima.shapes = cli.ko_shapes.iter().map(|s| (s.0, s.1)).collect();
        }
        RunConfig {
            command: cli.command,
            benchmark: cli.benchmark,
            root: cli.root,
            subfolder: cli.subfolder,
            timeout: Duration::from_secs(cli.timeout_s),
            workers: cli.workers as usize,
            rule: cli.rule,
            large_ta,
            known_optima,
        }
    }

    /// Reads the classic positional argument list. The caller has already
    /// checked the shape (five arguments, none flag-like).
    pub fn from_positional(args: &[String]) -> Result<RunConfig, String> {
        let rule = match args[0].as_str() {
            "0" => DispatchRule::Spt,
            "1" => DispatchRule::Lpt,
            "2" => DispatchRule::Mwr,
            "3" => DispatchRule::Fifo,
            other => return Err(format!("solver must be 0-3, got {other:?}")),
        };
        let benchmark = match args[1].as_str() {
            "0" => BenchmarkKind::LargeTa,
            "1" => BenchmarkKind::KnownOptima,
            "2" => {
                return Err(
                    "dataset 2 (classic instances) is not part of this tool; \
                     use 0 (large-ta) or 1 (known-optima)"
                        .into(),
                )
            }
            other => return Err(format!("dataset must be 0-2, got {other:?}")),
        };
        let timeout_s: u64 = args[3]
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| format!("timeout must be a positive integer, got {:?}", args[3]))?;
        let workers: usize = args[4]
            .parse()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| format!("workers must be a positive integer, got {:?}", args[4]))?;
        Ok(RunConfig {
            command: CommandKind::Solve,
            benchmark: Some(benchmark),
            root: PathBuf::from("."),
            subfolder: Some(args[2].clone()),
            timeout: Duration::from_secs(timeout_s),
            workers,
            rule: Some(rule),
            large_ta: LargeTaSuiteOptions::default(),
            known_optima: KnownOptimaSuiteOptions::default(),
        })
    }
}

/// True when the invocation is the five-argument positional form.
pub fn is_positional(args: &[String]) -> bool {
    args.len() == 5 && args.iter().all(|a| !a.starts_with('-'))
}
