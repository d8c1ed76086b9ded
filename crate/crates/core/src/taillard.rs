//! Generator for rectangular Large-TA instances.
//!
//! Instances follow Taillard's construction: each job's machine sequence is an
//! independent uniform random permutation of all machines and each duration is
//! drawn uniformly from a configurable range, `[1, 99]` by default. The
//! classical generator's exact RNG is not reproduced; determinism here comes
//! from [`crate::rng::GeneratorRng`] and the seed, so regenerating with the
//! same configuration yields byte-identical files.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::model::{Instance, Job, Operation, Time};
use crate::rng::{derive_seed, GeneratorRng};
use rand::SeedableRng;

/// The 9-group size grid, as `(machine_count, job_count)` in suite order.
pub const SIZE_GRID: [(usize, usize); 9] = [
    (10, 10),
    (100, 10),
    (1000, 10),
    (10, 100),
    (100, 100),
    (1000, 100),
    (10, 1000),
    (100, 1000),
    (1000, 1000),
];

/// Default instances per size group: 9 groups of 10 give the 90-instance suite.
pub const DEFAULT_INSTANCES_PER_GROUP: usize = 10;

/// Classical duration range.
pub const DEFAULT_DURATION_LOW: Time = 1;
pub const DEFAULT_DURATION_HIGH: Time = 99;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaillardConfig {
    pub job_count: usize,
    pub machine_count: usize,
    pub duration_low: Time,
    pub duration_high: Time,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("job count must be at least 1")]
    NoJobs,
    #[error("machine count must be at least 1")]
    NoMachines,
    #[error("duration range [{low}, {high}] is empty or starts below 1")]
    BadDurationRange { low: Time, high: Time },
}

impl TaillardConfig {
    /// A configuration with the classical `[1, 99]` duration range.
    pub fn new(job_count: usize, machine_count: usize, seed: u64) -> Self {
        TaillardConfig {
            job_count,
            machine_count,
            duration_low: DEFAULT_DURATION_LOW,
            duration_high: DEFAULT_DURATION_HIGH,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.job_count == 0 {
            return Err(ConfigError::NoJobs);
        }
        if self.machine_count == 0 {
            return Err(ConfigError::NoMachines);
        }
        if self.duration_low < 1 || self.duration_high < self.duration_low {
            return Err(ConfigError::BadDurationRange {
                low: self.duration_low,
                high: self.duration_high,
            });
        }
        Ok(())
    }
}

/// Generates one rectangular instance. Pure in the configuration: the same
/// config always produces the identical instance.
pub fn generate_rectangular(config: &TaillardConfig) -> Result<Instance, ConfigError> {
    config.validate()?;
    let mut rng = GeneratorRng::seed_from_u64(config.seed);
    let mut jobs = Vec::with_capacity(config.job_count);
    let mut machines: Vec<usize> = (0..config.machine_count).collect();
    for _ in 0..config.job_count {
        machines.shuffle(&mut rng);
        let operations = machines
            .iter()
            .map(|&m| {
                Operation::new(m, rng.random_range(config.duration_low..=config.duration_high))
            })
            .collect();
        jobs.push(Job::new(operations));
    }
    Ok(Instance::rectangular(config.machine_count, jobs)
        .expect("generated jobs are permutations by construction"))
}

/// Configurations for the full suite: for each grid group, `instances_per_group`
/// members named by the `tai_j<jobs>_m<machines>_<index>` convention.
///
/// Per-instance seeds are `derive_seed(base_seed, [machines, jobs, index])`,
/// so adding groups or instances never changes existing ones.
pub fn large_ta_suite_configs(
    instances_per_group: usize,
    base_seed: u64,
    duration_low: Time,
    duration_high: Time,
) -> Vec<(String, TaillardConfig)> {
    let mut out = Vec::with_capacity(SIZE_GRID.len() * instances_per_group);
    for &(machine_count, job_count) in &SIZE_GRID {
        for index in 1..=instances_per_group {
            let name = crate::io::names::large_ta_name(job_count, machine_count, index);
            let config = TaillardConfig {
                job_count,
                machine_count,
                duration_low,
                duration_high,
                seed: derive_seed(
                    base_seed,
                    &[machine_count as u64, job_count as u64, index as u64],
                ),
            };
            out.push((name, config));
        }
    }
    out
}

/// Lazily generates the suite in grid order with the default duration range.
pub fn generate_large_ta_suite(
    instances_per_group: usize,
    base_seed: u64,
) -> impl Iterator<Item = (String, Instance)> {
    large_ta_suite_configs(
        instances_per_group,
        base_seed,
        DEFAULT_DURATION_LOW,
        DEFAULT_DURATION_HIGH,
    )
    .into_iter()
    .map(|(name, config)| {
        let instance = generate_rectangular(&config).expect("suite configs are valid");
        (name, instance)
    })
}
