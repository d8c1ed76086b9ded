//! Reference implementations the integration tests check the library
//! against: a quadratic all-pairs feasibility checker and an exhaustive
//! optimum search over operation orders. Both favor obviousness over speed.

#![allow(dead_code)]

use jobshop_core::validate::Verdict;
use jobshop_core::{Instance, InstanceKind, Job, Operation, Schedule, Time};
use rand::Rng;

/// What the quadratic checker concludes about a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveReport {
    pub verdict: Verdict,
    /// Timing violations: precedence breaks plus overlapping pairs. Zero
    /// whenever the schedule is malformed, mirroring the early structural
    /// bail-out.
    pub violation_count: usize,
    pub makespan: Option<Time>,
}

/// Checks a schedule the slow way: every structural rule spelled out, then
/// every pair of operations on the same machine compared directly.
pub fn naive_validate(instance: &Instance, schedule: &Schedule) -> NaiveReport {
    let malformed = NaiveReport {
        verdict: Verdict::Malformed,
        violation_count: 0,
        makespan: None,
    };
    let mc = instance.machine_count();
    if mc == 0 && instance.job_count() > 0 {
        return malformed;
    }
    for job in instance.jobs() {
        if job.is_empty() {
            return malformed;
        }
        if instance.kind() == InstanceKind::Rectangular {
            if job.len() != mc {
                return malformed;
            }
            let mut visited = vec![false; mc];
            for op in &job.operations {
                if op.machine < mc && std::mem::replace(&mut visited[op.machine], true) {
                    return malformed;
                }
            }
        }
        for op in &job.operations {
            if op.machine >= mc || op.duration < 1 {
                return malformed;
            }
        }
    }
    let starts = schedule.starts();
    if starts.len() != instance.job_count() {
        return malformed;
    }
    for (j, job) in instance.jobs().iter().enumerate() {
        if starts[j].len() != job.len() {
            return malformed;
        }
        if starts[j].iter().any(|&s| s < 0) {
            return malformed;
        }
    }

    let mut violations = 0usize;
    let mut makespan: Time = 0;
    for (j, job) in instance.jobs().iter().enumerate() {
        for (k, op) in job.operations.iter().enumerate() {
            makespan = makespan.max(starts[j][k].saturating_add(op.duration));
            if k > 0 {
                let prev_end =
                    starts[j][k - 1].saturating_add(job.operations[k - 1].duration);
                if starts[j][k] < prev_end {
                    violations += 1;
                }
            }
        }
    }
    let ops: Vec<(usize, Time, Time)> = instance
        .operations()
        .map(|(j, k, op)| {
            let start = starts[j][k];
            (op.machine, start, start.saturating_add(op.duration))
        })
        .collect();
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let (ma, sa, ea) = ops[a];
            let (mb, sb, eb) = ops[b];
            if ma == mb && sa < eb && sb < ea {
                violations += 1;
            }
        }
    }
    NaiveReport {
        verdict: if violations == 0 {
            Verdict::Feasible
        } else {
            Verdict::Infeasible
        },
        violation_count: violations,
        makespan: (violations == 0).then_some(makespan),
    }
}

/// The exact optimum by trying every interleaving of the jobs: at each step
/// any job with work left may run next, and its operation starts as early as
/// its predecessor and machine allow. Some interleaving places every
/// operation of an optimal schedule in start order, so the minimum over all
/// of them is the true optimum. Only sensible for a handful of operations.
pub fn enumerate_optimum(instance: &Instance) -> Time {
    assert!(
        instance.total_ops() <= 10,
        "exhaustive search is limited to tiny instances"
    );
    let mut job_next = vec![0usize; instance.job_count()];
    let mut job_ready = vec![0 as Time; instance.job_count()];
    let mut machine_free = vec![0 as Time; instance.machine_count()];
    let mut best = Time::MAX;
    descend(
        instance,
        &mut job_next,
        &mut job_ready,
        &mut machine_free,
        0,
        &mut best,
    );
    best
}

fn descend(
    instance: &Instance,
    job_next: &mut [usize],
    job_ready: &mut [Time],
    machine_free: &mut [Time],
    makespan: Time,
    best: &mut Time,
) {
    let mut any = false;
    for j in 0..instance.job_count() {
        let Some(&op) = instance.jobs()[j].operations.get(job_next[j]) else {
            continue;
        };
        any = true;
        let start = job_ready[j].max(machine_free[op.machine]);
        let end = start + op.duration;
        let (prev_ready, prev_free) = (job_ready[j], machine_free[op.machine]);
        job_next[j] += 1;
        job_ready[j] = end;
        machine_free[op.machine] = end;
        descend(
            instance,
            job_next,
            job_ready,
            machine_free,
            makespan.max(end),
            best,
        );
        job_next[j] -= 1;
        job_ready[j] = prev_ready;
        machine_free[op.machine] = prev_free;
    }
    if !any {
        *best = (*best).min(makespan);
    }
}

/// A random free-form instance with at most `max_ops` operations spread
/// over at most `max_machines` machines, durations in 1..=9.
pub fn random_tiny_instance(
    rng: &mut impl Rng,
    max_machines: usize,
    max_ops: usize,
) -> Instance {
    let machine_count = rng.random_range(1..=max_machines);
    let total_ops = rng.random_range(1..=max_ops);
    let job_count = rng.random_range(1..=total_ops);
    // One op per job up front, the rest land anywhere.
    let mut per_job = vec![1usize; job_count];
    for _ in job_count..total_ops {
        per_job[rng.random_range(0..job_count)] += 1;
    }
    let jobs = per_job
        .into_iter()
        .map(|len| {
            Job::new(
                (0..len)
                    .map(|_| {
                        Operation::new(
                            rng.random_range(0..machine_count),
                            rng.random_range(1..=9),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    Instance::free_form(machine_count, jobs).unwrap()
}

/// Damages a schedule at random: shifted starts, a negative start, a
/// dropped trailing start, or an extra one. May leave it feasible.
pub fn perturb_schedule(rng: &mut impl Rng, schedule: &Schedule) -> Schedule {
    let mut starts: Vec<Vec<Time>> = schedule.starts().to_vec();
    let rows = starts.len();
    for _ in 0..rng.random_range(1..=3) {
        let j = rng.random_range(0..rows);
        match rng.random_range(0..10) {
            0 => {
                if !starts[j].is_empty() {
                    let k = rng.random_range(0..starts[j].len());
                    starts[j][k] = -1;
                }
            }
            1 => {
                starts[j].pop();
            }
            2 => {
                starts[j].push(rng.random_range(0..20));
            }
            _ => {
                if !starts[j].is_empty() {
                    let k = rng.random_range(0..starts[j].len());
                    starts[j][k] += rng.random_range(-4..=4);
                }
            }
        }
    }
    Schedule::new(starts)
}
