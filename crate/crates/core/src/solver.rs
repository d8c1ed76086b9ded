//! Baseline schedulers: dispatching-rule construction at any scale, plus an
//! exhaustive oracle for tiny instances in [`exact`].
//!
//! Dispatching builds non-delay schedules: a machine never sits idle while
//! an operation is ready for it. That keeps construction at O(n log n) and
//! always feasible, at the price of not reaching optima that require
//! deliberate idling; the oracle deliberately has no such restriction.

pub mod exact;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::model::{
    job_length_bound, machine_load_bound, makespan, Instance, Schedule, Time,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DispatchRule {
    /// Shortest processing time first.
    Spt,
    /// Longest processing time first.
    Lpt,
    /// Most work remaining in the job first.
    Mwr,
    /// First in, first out by ready time.
    Fifo,
}

impl DispatchRule {
    pub const ALL: [DispatchRule; 4] = [
        DispatchRule::Spt,
        DispatchRule::Lpt,
        DispatchRule::Mwr,
        DispatchRule::Fifo,
    ];

    fn tag(self) -> &'static str {
        match self {
            DispatchRule::Spt => "spt",
            DispatchRule::Lpt => "lpt",
            DispatchRule::Mwr => "mwr",
            DispatchRule::Fifo => "fifo",
        }
    }
}

impl fmt::Display for DispatchRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DispatchRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spt" | "shortest-processing-time" => Ok(DispatchRule::Spt),
            "lpt" | "longest-processing-time" => Ok(DispatchRule::Lpt),
            "mwr" | "most-work-remaining" => Ok(DispatchRule::Mwr),
            "fifo" | "first-in-first-out" => Ok(DispatchRule::Fifo),
            other => Err(format!(
                "unknown dispatch rule {other:?}, expected spt, lpt, mwr, or fifo"
            )),
        }
    }
}

/// The trivial lower bound every schedule obeys: no machine finishes before
/// its total load, no job before its own chain length.
pub fn lower_bound(instance: &Instance) -> Time {
    machine_load_bound(instance).max(job_length_bound(instance))
}

const EVENT_ARRIVAL: u8 = 0;
const EVENT_FREE: u8 = 1;

/// How many events pass between deadline checks.
const DEADLINE_STRIDE: u64 = 1024;

/// Builds a non-delay schedule under `rule`. Deterministic: ready operations
/// are ordered by (rule key, job index, operation index).
pub fn dispatch_schedule(instance: &Instance, rule: DispatchRule) -> Schedule {
    dispatch_with_deadline(instance, rule, None).expect("unbounded dispatch cannot time out")
}

/// Like [`dispatch_schedule`] but abandons construction once `deadline`
/// passes, returning `None`. The check runs every few thousand events, so
/// overshoot is tiny.
pub fn dispatch_with_deadline(
    instance: &Instance,
    rule: DispatchRule,
    deadline: Option<Instant>,
) -> Option<Schedule> {
    let jobs = instance.jobs();
    let mc = instance.machine_count();
    let mut starts: Vec<Vec<Time>> = jobs.iter().map(|j| vec![0; j.len()]).collect();
    let mut job_next = vec![0usize; jobs.len()];
    let mut remaining: Vec<Time> = jobs.iter().map(|j| j.total_work()).collect();
    let mut machine_free = vec![0 as Time; mc];
    let mut queues: Vec<BinaryHeap<Reverse<(i64, usize, usize)>>> =
        (0..mc).map(|_| BinaryHeap::new()).collect();

    // Event heap ordered by time; all events at one instant are applied
    // before any machine decides, so simultaneous arrivals compete fairly.
    let mut events: BinaryHeap<Reverse<(Time, u8, usize)>> = BinaryHeap::new();
    for (j, job) in jobs.iter().enumerate() {
        if !job.is_empty() {
            events.push(Reverse((0, EVENT_ARRIVAL, j)));
        }
    }

    let mut pending: Vec<usize> = Vec::new();
    let mut pending_mark = vec![0u64; mc];
    let mut epoch: u64 = 0;
    let mut ticks: u64 = 0;
    while let Some(&Reverse((now, _, _))) = events.peek() {
        ticks += 1;
        if ticks % DEADLINE_STRIDE == 0 {
            if let Some(deadline) = deadline {
                if Instant::now() >= deadline {
                    return None;
                }
            }
        }
        epoch += 1;
        pending.clear();
        while let Some(&Reverse((time, kind, id))) = events.peek() {
            if time != now {
                break;
            }
            events.pop();
            let machine = match kind {
                EVENT_ARRIVAL => {
                    let op = jobs[id].operations[job_next[id]];
                    let key = match rule {
                        DispatchRule::Spt => op.duration,
                        DispatchRule::Lpt => -op.duration,
                        DispatchRule::Mwr => -remaining[id],
                        DispatchRule::Fifo => now,
                    };
                    queues[op.machine].push(Reverse((key, id, job_next[id])));
                    op.machine
                }
                _ => id,
            };
            if machine_free[machine] <= now && pending_mark[machine] != epoch {
                pending_mark[machine] = epoch;
                pending.push(machine);
            }
        }
        for &machine in &pending {
            let Some(&Reverse((_, job, op_index))) = queues[machine].peek() else {
                continue;
            };
            queues[machine].pop();
            let duration = jobs[job].operations[op_index].duration;
            starts[job][op_index] = now;
            let end = now + duration;
            machine_free[machine] = end;
            events.push(Reverse((end, EVENT_FREE, machine)));
            remaining[job] -= duration;
            job_next[job] = op_index + 1;
            if op_index + 1 < jobs[job].len() {
                events.push(Reverse((end, EVENT_ARRIVAL, job)));
            }
        }
    }
    Some(Schedule::new(starts))
}

#[derive(Debug, Clone)]
pub struct RuleRun {
    pub rule: DispatchRule,
    pub makespan: Time,
    pub schedule: Schedule,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Completed runs in rule order.
    pub runs: Vec<RuleRun>,
    /// True when the deadline cut the remaining rules off.
    pub timed_out: bool,
}

impl SolveReport {
    /// The best completed run, ties broken by rule order.
    pub fn best(&self) -> Option<&RuleRun> {
        self.runs.iter().min_by_key(|r| r.makespan)
    }
}

/// Runs the rules in order under one shared per-instance deadline. A rule
/// that cannot finish in time is abandoned; earlier completed runs are kept
/// as best-so-far.
pub fn solve_with_rules(
    instance: &Instance,
    rules: &[DispatchRule],
    timeout: Duration,
) -> SolveReport {
    let deadline = Instant::now() + timeout;
    let mut runs = Vec::with_capacity(rules.len());
    let mut timed_out = false;
    for &rule in rules {
        let begun = Instant::now();
        match dispatch_with_deadline(instance, rule, Some(deadline)) {
            Some(schedule) => {
                let makespan = makespan(instance, &schedule)
                    .expect("dispatch schedules every operation");
                runs.push(RuleRun {
                    rule,
                    makespan,
                    schedule,
                    elapsed: begun.elapsed(),
                });
            }
            None => {
                timed_out = true;
                break;
            }
        }
    }
    SolveReport { runs, timed_out }
}
