//! Exhaustive optimum for tiny instances.
//!
//! Depth-first enumeration of active schedules: at every step the earliest
//! possible completion fixes a machine, and each operation on that machine
//! able to start before that completion is tried in turn. Active schedules
//! always contain an optimal one, and unlike dispatching this search may
//! leave a machine idle on purpose, so it reaches true optima.

use thiserror::Error;

use crate::model::{Instance, Time};

/// Default ceiling on exhaustive search; growth beyond this is factorial.
pub const DEFAULT_OP_LIMIT: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("instance has {total_ops} operations, above the exhaustive-search limit {op_limit}")]
    TooLarge { total_ops: usize, op_limit: usize },
}

/// The exact optimal makespan, for instances of at most `op_limit`
/// operations.
pub fn brute_force_optimum(instance: &Instance, op_limit: usize) -> Result<Time, ExactError> {
    let total_ops = instance.total_ops();
    if total_ops > op_limit {
        return Err(ExactError::TooLarge { total_ops, op_limit });
    }
    let mut machine_load = vec![0 as Time; instance.machine_count()];
    for (_, _, op) in instance.operations() {
        machine_load[op.machine] += op.duration;
    }
    // The fully serial schedule achieves the sum of all durations, so the
    // optimum never exceeds it and the bound below can prune safely.
    let serial: Time = machine_load.iter().sum();
    let mut search = Search {
        instance,
        job_next: vec![0; instance.job_count()],
        job_ready: vec![0; instance.job_count()],
        job_work: instance.jobs().iter().map(|j| j.total_work()).collect(),
        machine_free: vec![0; instance.machine_count()],
        machine_load,
        unscheduled: total_ops,
        best: serial,
    };
    search.descend(0);
    Ok(search.best)
}

struct Search<'a> {
    instance: &'a Instance,
    job_next: Vec<usize>,
    job_ready: Vec<Time>,
    /// Remaining work per job, current operation included.
    job_work: Vec<Time>,
    machine_free: Vec<Time>,
    /// Remaining load per machine, unscheduled operations only.
    machine_load: Vec<Time>,
    unscheduled: usize,
    best: Time,
}

impl Search<'_> {
    fn descend(&mut self, makespan: Time) {
        if self.unscheduled == 0 {
            self.best = self.best.min(makespan);
            return;
        }
        let mut bound = makespan;
        for m in 0..self.machine_free.len() {
            bound = bound.max(self.machine_free[m] + self.machine_load[m]);
        }
        for j in 0..self.job_ready.len() {
            bound = bound.max(self.job_ready[j] + self.job_work[j]);
        }
        if bound >= self.best {
            return;
        }

        // The machine with the earliest achievable completion; only its
        // operations that can start before that completion lead to distinct
        // active schedules.
        let mut earliest_completion = Time::MAX;
        let mut focus_machine = 0;
        for (j, job) in self.instance.jobs().iter().enumerate() {
            let Some(op) = job.operations.get(self.job_next[j]) else {
                continue;
            };
            let start = self.job_ready[j].max(self.machine_free[op.machine]);
            if start + op.duration < earliest_completion {
                earliest_completion = start + op.duration;
                focus_machine = op.machine;
            }
        }

        for j in 0..self.job_next.len() {
            let Some(&op) = self.instance.jobs()[j].operations.get(self.job_next[j]) else {
                continue;
            };
            if op.machine != focus_machine {
                continue;
            }
            let start = self.job_ready[j].max(self.machine_free[op.machine]);
            if start >= earliest_completion {
                continue;
            }
            let end = start + op.duration;
            let saved_ready = self.job_ready[j];
            let saved_free = self.machine_free[op.machine];
            self.job_next[j] += 1;
            self.job_ready[j] = end;
            self.job_work[j] -= op.duration;
            self.machine_free[op.machine] = end;
            self.machine_load[op.machine] -= op.duration;
            self.unscheduled -= 1;

            self.descend(makespan.max(end));

            self.unscheduled += 1;
            self.machine_load[op.machine] += op.duration;
            self.machine_free[op.machine] = saved_free;
            self.job_work[j] += op.duration;
            self.job_ready[j] = saved_ready;
            self.job_next[j] -= 1;
        }
    }
}
