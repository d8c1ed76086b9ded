//! Domain model shared by all modules: instances, schedules, and elementary
//! makespan bounds.
//!
//! Times and durations are `i64` seconds. A million operations with durations
//! up to 600 000 overflow 32 bits as soon as they are summed, so every
//! quantity that can be a sum of durations is 64-bit from the start.

use thiserror::Error;

/// Time unit used throughout: integer seconds.
pub type Time = i64;

/// One processing step of a job, bound to a machine for a fixed duration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Operation {
    /// 0-based machine index.
    pub machine: usize,
    /// Processing time, at least 1.
    pub duration: Time,
}

impl Operation {
    pub fn new(machine: usize, duration: Time) -> Self {
        Operation { machine, duration }
    }
}

/// An ordered sequence of operations. The order is the mandatory processing
/// order: operation `i + 1` may not start before operation `i` finishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub operations: Vec<Operation>,
}

impl Job {
    pub fn new(operations: Vec<Operation>) -> Self {
        Job { operations }
    }

    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }

    /// Sum of this job's durations.
    pub fn total_work(&self) -> Time {
        self.operations.iter().map(|op| op.duration).sum()
    }
}

/// Structural family of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    /// Every job visits every machine exactly once; operations per job equals
    /// the machine count.
    Rectangular,
    /// Job lengths vary freely; machines may be revisited or skipped.
    FreeForm,
}

/// A job-shop problem: jobs, each an ordered sequence of operations bound to
/// machines with integer durations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    machine_count: usize,
    jobs: Vec<Job>,
    kind: InstanceKind,
    known_optimum: Option<Time>,
}

/// Structural defects detected while building an [`Instance`] or reading a
/// [`Schedule`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("machine count must be at least 1")]
    NoMachines,
    #[error("job {job} has no operations")]
    EmptyJob { job: usize },
    #[error("job {job} operation {op}: duration {duration} must be at least 1")]
    NonPositiveDuration { job: usize, op: usize, duration: Time },
    #[error("job {job} operation {op}: machine {machine} out of range for machine count {machine_count}")]
    MachineOutOfRange {
        job: usize,
        op: usize,
        machine: usize,
        machine_count: usize,
    },
    #[error("job {job} is not a permutation of the {machine_count} machines (machine {machine} visited twice)")]
    NotAPermutation {
        job: usize,
        machine: usize,
        machine_count: usize,
    },
    #[error("job {job} has {ops} operations but rectangular instances require exactly {machine_count}")]
    WrongRectangularLength {
        job: usize,
        ops: usize,
        machine_count: usize,
    },
    #[error("schedule is missing a start time for job {job} operation {op}")]
    IncompleteSchedule { job: usize, op: usize },
    #[error("schedule has start times for job {job} which the instance does not contain")]
    ExtraScheduleRow { job: usize },
}

impl Instance {
    /// Builds a rectangular instance, checking that every job visits every
    /// machine exactly once.
    pub fn rectangular(machine_count: usize, jobs: Vec<Job>) -> Result<Self, ModelError> {
        let inst = Instance {
            machine_count,
            jobs,
            kind: InstanceKind::Rectangular,
            known_optimum: None,
        };
        inst.check_structure()?;
        Ok(inst)
    }

    /// Builds a free-form instance: any job lengths, machines may repeat.
    pub fn free_form(machine_count: usize, jobs: Vec<Job>) -> Result<Self, ModelError> {
        let inst = Instance {
            machine_count,
            jobs,
            kind: InstanceKind::FreeForm,
            known_optimum: None,
        };
        inst.check_structure()?;
        Ok(inst)
    }

    /// Builds an instance without validating the structural invariants.
    ///
    /// Intended for callers that have already established validity (parsers
    /// with their own line-level diagnostics) and for feeding deliberately
    /// broken data to [`crate::validate::validate_instance`].
    pub fn from_raw_parts(
        machine_count: usize,
        jobs: Vec<Job>,
        kind: InstanceKind,
        known_optimum: Option<Time>,
    ) -> Self {
        Instance {
            machine_count,
            jobs,
            kind,
            known_optimum,
        }
    }

    fn check_structure(&self) -> Result<(), ModelError> {
        if self.machine_count == 0 {
            return Err(ModelError::NoMachines);
        }
        // Scratch for the permutation check, stamped per job to avoid clearing.
        let mut seen = vec![usize::MAX; self.machine_count];
        for (j, job) in self.jobs.iter().enumerate() {
            if job.is_empty() {
                return Err(ModelError::EmptyJob { job: j });
            }
            if self.kind == InstanceKind::Rectangular && job.len() != self.machine_count {
                return Err(ModelError::WrongRectangularLength {
                    job: j,
                    ops: job.len(),
                    machine_count: self.machine_count,
                });
            }
            for (k, op) in job.operations.iter().enumerate() {
                if op.duration < 1 {
                    return Err(ModelError::NonPositiveDuration {
                        job: j,
                        op: k,
                        duration: op.duration,
                    });
                }
                if op.machine >= self.machine_count {
                    return Err(ModelError::MachineOutOfRange {
                        job: j,
                        op: k,
                        machine: op.machine,
                        machine_count: self.machine_count,
                    });
                }
                if self.kind == InstanceKind::Rectangular {
                    if seen[op.machine] == j {
                        return Err(ModelError::NotAPermutation {
                            job: j,
                            machine: op.machine,
                            machine_count: self.machine_count,
                        });
                    }
                    seen[op.machine] = j;
                }
            }
        }
        Ok(())
    }

    /// Attaches a known optimal makespan (used by the known-optima generator).
    pub fn with_known_optimum(mut self, optimum: Time) -> Self {
        self.known_optimum = Some(optimum);
        self
    }

    pub fn machine_count(&self) -> usize {
        self.machine_count
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job_count(&self) -> usize {
        self.jobs.len()
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn known_optimum(&self) -> Option<Time> {
        self.known_optimum
    }

    /// Total number of operations across all jobs.
    pub fn total_ops(&self) -> usize {
        self.jobs.iter().map(Job::len).sum()
    }

    /// Iterates over all operations as `(job, op_index, operation)`.
    pub fn operations(&self) -> impl Iterator<Item = (usize, usize, Operation)> + '_ {
        self.jobs.iter().enumerate().flat_map(|(j, job)| {
            job.operations
                .iter()
                .copied()
                .enumerate()
                .map(move |(k, op)| (j, k, op))
        })
    }
}

/// An assignment of start times to every operation, indexed positionally:
/// `starts()[job][op]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    starts: Vec<Vec<Time>>,
}

impl Schedule {
    pub fn new(starts: Vec<Vec<Time>>) -> Self {
        Schedule { starts }
    }

    pub fn starts(&self) -> &[Vec<Time>] {
        &self.starts
    }

    pub fn start(&self, job: usize, op: usize) -> Option<Time> {
        self.starts.get(job)?.get(op).copied()
    }

    /// Checks that this schedule has exactly one start time per operation of
    /// `instance`; returns the first discrepancy.
    pub fn check_complete(&self, instance: &Instance) -> Result<(), ModelError> {
        for (j, job) in instance.jobs().iter().enumerate() {
            let row = self
                .starts
                .get(j)
                .ok_or(ModelError::IncompleteSchedule { job: j, op: 0 })?;
            if row.len() < job.len() {
                return Err(ModelError::IncompleteSchedule {
                    job: j,
                    op: row.len(),
                });
            }
            if row.len() > job.len() {
                return Err(ModelError::ExtraScheduleRow { job: j });
            }
        }
        if self.starts.len() > instance.job_count() {
            return Err(ModelError::ExtraScheduleRow {
                job: instance.job_count(),
            });
        }
        Ok(())
    }
}

/// Completion time of the last operation: `max(start + duration)`.
///
/// Fails if the schedule is not complete for the instance; feasibility is the
/// validator's concern, not this function's.
pub fn makespan(instance: &Instance, schedule: &Schedule) -> Result<Time, ModelError> {
    schedule.check_complete(instance)?;
    let mut best = 0;
    for (j, job) in instance.jobs().iter().enumerate() {
        for (k, op) in job.operations.iter().enumerate() {
            let end = schedule.starts[j][k].saturating_add(op.duration);
            best = best.max(end);
        }
    }
    Ok(best)
}

/// Per-machine total processing time. Tolerates out-of-range machine indices
/// (raw instances) by sizing to the largest index seen.
pub fn machine_loads(instance: &Instance) -> Vec<Time> {
    let mut width = instance.machine_count();
    for (_, _, op) in instance.operations() {
        width = width.max(op.machine + 1);
    }
    let mut loads = vec![0; width];
    for (_, _, op) in instance.operations() {
        loads[op.machine] += op.duration;
    }
    loads
}

/// Largest per-machine total processing time. A lower bound on the optimal
/// makespan: some machine must process all of its operations.
pub fn machine_load_bound(instance: &Instance) -> Time {
    machine_loads(instance).into_iter().max().unwrap_or(0)
}

/// Largest per-job total processing time. A lower bound on the optimal
/// makespan: a job's operations run strictly in sequence.
pub fn job_length_bound(instance: &Instance) -> Time {
    instance
        .jobs()
        .iter()
        .map(Job::total_work)
        .max()
        .unwrap_or(0)
}
