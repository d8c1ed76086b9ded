//! Writing whole benchmark suites to the on-disk layout.
//!
//! Instances are assigned to sub-folders `1..=N` round-robin in
//! configuration order, so every sub-folder receives a spread of sizes and
//! the sub-folders partition the suite. Generation and writing fan out over
//! the worker count; outputs are byte-identical regardless of parallelism.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::batch::map_batch;
use crate::io::{certificate, known_optima as ko_io, large_ta as ta_io, names, BenchmarkKind};
use crate::known_optima::{
    known_optima_suite_configs_with, GenerationConfig, SuccessorGap, DEFAULT_INSTANCES_PER_SHAPE,
    DEFAULT_MIN_DURATION, DEFAULT_SUITE_SHAPES, DEFAULT_TARGET_MAKESPAN,
};
use crate::model::Time;
use crate::taillard::{
    generate_rectangular, large_ta_suite_configs, DEFAULT_DURATION_HIGH, DEFAULT_DURATION_LOW,
    DEFAULT_INSTANCES_PER_GROUP,
};

pub const DEFAULT_BASE_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeTaSuiteOptions {
    pub instances_per_group: usize,
    pub base_seed: u64,
    pub duration_low: Time,
    pub duration_high: Time,
    pub subfolder_count: usize,
}

impl Default for LargeTaSuiteOptions {
    fn default() -> Self {
        LargeTaSuiteOptions {
            instances_per_group: DEFAULT_INSTANCES_PER_GROUP,
            base_seed: DEFAULT_BASE_SEED,
            duration_low: DEFAULT_DURATION_LOW,
            duration_high: DEFAULT_DURATION_HIGH,
            subfolder_count: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownOptimaSuiteOptions {
    /// `(machine_count, total_ops)` per shape.
    pub shapes: Vec<(usize, usize)>,
    pub instances_per_shape: usize,
    pub base_seed: u64,
    pub target_makespan: Time,
    pub min_duration: Time,
    pub successor_gap: SuccessorGap,
    pub subfolder_count: usize,
}

impl Default for KnownOptimaSuiteOptions {
    fn default() -> Self {
        KnownOptimaSuiteOptions {
            shapes: DEFAULT_SUITE_SHAPES.to_vec(),
            instances_per_shape: DEFAULT_INSTANCES_PER_SHAPE,
            base_seed: DEFAULT_BASE_SEED,
            target_makespan: DEFAULT_TARGET_MAKESPAN,
            min_duration: DEFAULT_MIN_DURATION,
            successor_gap: SuccessorGap::Strict,
            subfolder_count: 1,
        }
    }
}

/// One file written by a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteEntry {
    pub subfolder: String,
    pub path: PathBuf,
    /// The `.sol` sidecar, for suites that ship certificates.
    pub certificate: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("invalid suite options: {0}")]
    InvalidOptions(String),
    #[error(transparent)]
    LargeTaConfig(#[from] crate::taillard::ConfigError),
    #[error(transparent)]
    KnownOptimaConfig(#[from] crate::known_optima::ConfigError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SuiteError + '_ {
    move |source| SuiteError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn prepare_subfolders(
    root: &Path,
    kind: BenchmarkKind,
    count: usize,
) -> Result<Vec<PathBuf>, SuiteError> {
    if count == 0 {
        return Err(SuiteError::InvalidOptions(
            "at least one sub-folder is required".into(),
        ));
    }
    let base = root.join(kind.dir_name());
    let mut dirs = Vec::with_capacity(count);
    for i in 1..=count {
        let dir = base.join(i.to_string());
        std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        dirs.push(dir);
    }
    Ok(dirs)
}

/// Generates and writes the 9-group suite under `<root>/large/`, returning
/// the written entries in configuration order.
pub fn write_large_ta_suite(
    root: &Path,
    options: &LargeTaSuiteOptions,
    workers: usize,
) -> Result<Vec<SuiteEntry>, SuiteError> {
    let dirs = prepare_subfolders(root, BenchmarkKind::LargeTa, options.subfolder_count)?;
    let configs = large_ta_suite_configs(
        options.instances_per_group,
        options.base_seed,
        options.duration_low,
        options.duration_high,
    );
    for (_, config) in &configs {
        config.validate()?;
    }
    let jobs: Vec<(usize, String, crate::taillard::TaillardConfig)> = configs
        .into_iter()
        .enumerate()
        .map(|(i, (name, config))| (i, name, config))
        .collect();
    let dir_count = dirs.len();
    map_batch(jobs, workers, |(i, name, config)| {
        let dir = &dirs[i % dir_count];
        let path = dir.join(&name);
        let instance = generate_rectangular(&config).expect("validated above");
        ta_io::write_large_ta_file(&path, &instance).map_err(|e| match e {
            ta_io::SerializeError::Io(source) => SuiteError::Io {
                path: path.clone(),
                source,
            },
            ta_io::SerializeError::WrongKind => unreachable!("generator emits rectangular"),
        })?;
        Ok(SuiteEntry {
            subfolder: dir.file_name().unwrap().to_string_lossy().into_owned(),
            path,
            certificate: None,
        })
    })
    .into_iter()
    .collect()
}

/// Generates and writes a Known-Optima suite with its `.sol` certificates
/// under `<root>/bench/`, returning the written entries in configuration
/// order.
pub fn write_known_optima_suite(
    root: &Path,
    options: &KnownOptimaSuiteOptions,
    workers: usize,
) -> Result<Vec<SuiteEntry>, SuiteError> {
    let dirs = prepare_subfolders(root, BenchmarkKind::KnownOptima, options.subfolder_count)?;
    let configs = known_optima_suite_configs_with(
        &options.shapes,
        options.instances_per_shape,
        options.base_seed,
        options.target_makespan,
        options.min_duration,
        options.successor_gap,
    );
    for (_, config) in &configs {
        config.validate()?;
    }
    let jobs: Vec<(usize, String, GenerationConfig)> = configs
        .into_iter()
        .enumerate()
        .map(|(i, (name, config))| (i, name, config))
        .collect();
    let dir_count = dirs.len();
    map_batch(jobs, workers, |(i, name, config)| {
        let dir = &dirs[i % dir_count];
        let path = dir.join(&name);
        let solution = crate::known_optima::generate_known_optima(&config)?;
        ko_io::write_known_optima_file(&path, &solution.instance).map_err(io_err(&path))?;
        let cert_path = names::certificate_path(&path);
        certificate::write_certificate_file(&cert_path, &solution.certificate)
            .map_err(io_err(&cert_path))?;
        Ok(SuiteEntry {
            subfolder: dir.file_name().unwrap().to_string_lossy().into_owned(),
            path,
            certificate: Some(cert_path),
        })
    })
    .into_iter()
    .collect()
}
