//! Feasibility validation, well-formedness checks, and known-optimum
//! certification.
//!
//! Problems are reported, never thrown: validation returns a
//! [`ValidationReport`] listing every violation found up to a configurable
//! cap. Structural damage (missing starts, ids out of range) makes a
//! schedule `Malformed`; timing conflicts (overlaps, broken precedence) make
//! it `Infeasible`; otherwise it is `Feasible` and the achieved makespan is
//! reported.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use thiserror::Error;

use crate::model::{machine_load_bound, Instance, InstanceKind, Schedule, Time};

/// Default cap on reported violations, keeping reports on badly broken
/// million-operation files bounded.
pub const DEFAULT_VIOLATION_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No violations; for instance-only validation this means well-formed.
    Feasible,
    Infeasible,
    Malformed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Malformed => "malformed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The schedule has no start time for this operation.
    Missing { job: usize, op: usize },
    /// A structurally invalid value; job/op locate it when meaningful.
    Range {
        job: Option<usize>,
        op: Option<usize>,
        detail: String,
    },
    /// An operation starts before its job predecessor ends.
    Precedence {
        job: usize,
        op: usize,
        prev_end: Time,
        start: Time,
    },
    /// Two operations run concurrently on one machine; `first` started no
    /// later than `second`, and `at` is the instant the overlap begins.
    Overlap {
        machine: usize,
        first: (usize, usize),
        second: (usize, usize),
        at: Time,
    },
}

impl Violation {
    fn is_structural(&self) -> bool {
        matches!(self, Violation::Missing { .. } | Violation::Range { .. })
    }

    /// Stable lowercase tag for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Missing { .. } => "missing",
            Violation::Range { .. } => "range",
            Violation::Precedence { .. } => "precedence",
            Violation::Overlap { .. } => "overlap",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Missing { job, op } => {
                write!(f, "missing start for job {job} operation {op}")
            }
            Violation::Range { job, op, detail } => {
                match (job, op) {
                    (Some(j), Some(k)) => write!(f, "job {j} operation {k}: {detail}"),
                    (Some(j), None) => write!(f, "job {j}: {detail}"),
                    _ => f.write_str(detail),
                }
            }
            Violation::Precedence {
                job,
                op,
                prev_end,
                start,
            } => write!(
                f,
                "job {job} operation {op} starts at {start} before its predecessor ends at {prev_end}"
            ),
            Violation::Overlap {
                machine,
                first,
                second,
                at,
            } => write!(
                f,
                "machine {machine}: job {} operation {} overlaps job {} operation {} from time {at}",
                second.0, second.1, first.0, first.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    /// Achieved makespan; present only when feasible.
    pub makespan: Option<Time>,
    /// True when more violations existed than the cap admitted.
    pub truncated: bool,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>, truncated: bool, makespan: Time) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Feasible
        } else if violations.iter().any(Violation::is_structural) {
            Verdict::Malformed
        } else {
            Verdict::Infeasible
        };
        ValidationReport {
            makespan: (verdict == Verdict::Feasible).then_some(makespan),
            verdict,
            violations,
            truncated,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }

    /// Multi-line human-readable rendering.
    pub fn render_text(&self) -> String {
        use std::fmt::Write as _;

        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if let Some(makespan) = self.makespan {
            let _ = writeln!(out, "makespan: {makespan}");
        }
        for violation in &self.violations {
            let _ = writeln!(out, "  - {violation}");
        }
        if self.truncated {
            let _ = writeln!(out, "  ... further violations suppressed");
        }
        out
    }

    /// Single-line `key=value` rendering.
    pub fn render_kv(&self) -> String {
        let mut out = format!(
            "verdict={} violations={} truncated={}",
            self.verdict,
            self.violations.len(),
            self.truncated
        );
        if let Some(makespan) = self.makespan {
            out.push_str(&format!(" makespan={makespan}"));
        }
        out
    }
}

/// Collects violations up to a cap.
struct Collector {
    violations: Vec<Violation>,
    cap: usize,
    truncated: bool,
}

impl Collector {
    fn new(cap: usize) -> Collector {
        Collector {
            violations: Vec::new(),
            cap,
            truncated: false,
        }
    }

    /// Records the violation; false once the cap is exhausted.
    fn push(&mut self, violation: Violation) -> bool {
        if self.violations.len() == self.cap {
            self.truncated = true;
            return false;
        }
        self.violations.push(violation);
        true
    }

    fn is_full(&self) -> bool {
        self.truncated
    }
}

fn collect_instance_violations(instance: &Instance, out: &mut Collector) {
    let mc = instance.machine_count();
    if mc == 0 && instance.job_count() > 0 {
        out.push(Violation::Range {
            job: None,
            op: None,
            detail: "instance declares zero machines".into(),
        });
        return;
    }
    // Stamped with the job index, one allocation across all jobs.
    let mut seen = vec![usize::MAX; mc];
    for (j, job) in instance.jobs().iter().enumerate() {
        if job.is_empty() {
            out.push(Violation::Range {
                job: Some(j),
                op: None,
                detail: "job has no operations".into(),
            });
            continue;
        }
        if instance.kind() == InstanceKind::Rectangular && job.len() != mc {
            out.push(Violation::Range {
                job: Some(j),
                op: None,
                detail: format!(
                    "rectangular job has {} operations for {mc} machines",
                    job.len()
                ),
            });
        }
        for (k, op) in job.operations.iter().enumerate() {
            if op.machine >= mc {
                out.push(Violation::Range {
                    job: Some(j),
                    op: Some(k),
                    detail: format!("machine id {} out of range for {mc} machines", op.machine),
                });
                continue;
            }
            if op.duration < 1 {
                out.push(Violation::Range {
                    job: Some(j),
                    op: Some(k),
                    detail: format!("duration {} is not positive", op.duration),
                });
            }
            if instance.kind() == InstanceKind::Rectangular {
                if seen[op.machine] == j {
                    out.push(Violation::Range {
                        job: Some(j),
                        op: Some(k),
                        detail: format!("machine {} visited twice", op.machine),
                    });
                }
                seen[op.machine] = j;
            }
        }
        if out.is_full() {
            return;
        }
    }
}

/// Checks the instance's own structural rules: positive durations, machine
/// ids in range, non-empty jobs, and the once-per-machine rule when the
/// instance claims to be rectangular.
pub fn validate_instance(instance: &Instance) -> ValidationReport {
    validate_instance_capped(instance, DEFAULT_VIOLATION_CAP)
}

pub fn validate_instance_capped(instance: &Instance, cap: usize) -> ValidationReport {
    let mut out = Collector::new(cap);
    collect_instance_violations(instance, &mut out);
    let mut report = ValidationReport::from_violations(out.violations, out.truncated, 0);
    // A clean instance is well-formed, not "scheduled"; no makespan applies.
    report.makespan = None;
    report
}

/// Validates a schedule against its instance: completeness, per-job
/// precedence, and per-machine disjointness via a single sorted sweep per
/// machine. Every overlapping pair is counted once.
pub fn validate_schedule(instance: &Instance, schedule: &Schedule) -> ValidationReport {
    validate_schedule_capped(instance, schedule, DEFAULT_VIOLATION_CAP)
}

pub fn validate_schedule_capped(
    instance: &Instance,
    schedule: &Schedule,
    cap: usize,
) -> ValidationReport {
    let mut out = Collector::new(cap);
    collect_instance_violations(instance, &mut out);
    let starts = schedule.starts();
    if starts.len() > instance.job_count() {
        out.push(Violation::Range {
            job: None,
            op: None,
            detail: format!(
                "schedule has {} rows for {} jobs",
                starts.len(),
                instance.job_count()
            ),
        });
    }
    for (j, job) in instance.jobs().iter().enumerate() {
        let row = starts.get(j).map(Vec::as_slice).unwrap_or(&[]);
        for k in 0..job.len() {
            match row.get(k) {
                None => {
                    out.push(Violation::Missing { job: j, op: k });
                }
                Some(&start) if start < 0 => {
                    out.push(Violation::Range {
                        job: Some(j),
                        op: Some(k),
                        detail: format!("start time {start} is negative"),
                    });
                }
                Some(_) => {}
            }
        }
        if row.len() > job.len() {
            out.push(Violation::Range {
                job: Some(j),
                op: None,
                detail: format!(
                    "schedule row has {} starts for {} operations",
                    row.len(),
                    job.len()
                ),
            });
        }
        if out.is_full() {
            break;
        }
    }
    if !out.violations.is_empty() {
        return ValidationReport::from_violations(out.violations, out.truncated, 0);
    }

    // Structure is sound; check timing.
    let mut makespan: Time = 0;
    for (j, job) in instance.jobs().iter().enumerate() {
        let row = &starts[j];
        for (k, op) in job.operations.iter().enumerate() {
            let start = row[k];
            let end = start.saturating_add(op.duration);
            makespan = makespan.max(end);
            if k > 0 {
                let prev_end = row[k - 1].saturating_add(job.operations[k - 1].duration);
                if start < prev_end {
                    out.push(Violation::Precedence {
                        job: j,
                        op: k,
                        prev_end,
                        start,
                    });
                }
            }
        }
    }

    // Group intervals by machine, then sweep each machine in start order
    // keeping the still-running intervals in a heap by end time.
    let mc = instance.machine_count();
    let mut counts = vec![0usize; mc];
    for (_, _, op) in instance.operations() {
        counts[op.machine] += 1;
    }
    let mut offsets = vec![0usize; mc + 1];
    for m in 0..mc {
        offsets[m + 1] = offsets[m] + counts[m];
    }
    let mut intervals = vec![(0 as Time, 0 as Time, 0usize, 0usize); instance.total_ops()];
    let mut fill = offsets.clone();
    for (j, k, op) in instance.operations() {
        let start = starts[j][k];
        intervals[fill[op.machine]] = (start, start.saturating_add(op.duration), j, k);
        fill[op.machine] += 1;
    }

    let mut running: BinaryHeap<Reverse<(Time, Time, usize, usize)>> = BinaryHeap::new();
    'machines: for m in 0..mc {
        let slice = &mut intervals[offsets[m]..offsets[m + 1]];
        slice.sort_unstable();
        running.clear();
        for &(start, end, j, k) in slice.iter() {
            while let Some(&Reverse((run_end, _, _, _))) = running.peek() {
                if run_end <= start {
                    running.pop();
                } else {
                    break;
                }
            }
            for &Reverse((_, _, rj, rk)) in running.iter() {
                if !out.push(Violation::Overlap {
                    machine: m,
                    first: (rj, rk),
                    second: (j, k),
                    at: start,
                }) {
                    break 'machines;
                }
            }
            running.push(Reverse((end, start, j, k)));
        }
    }

    ValidationReport::from_violations(out.violations, out.truncated, makespan)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified { makespan: Time },
    NotCertified { reason: String },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("instance carries no known optimum to certify against")]
    NoKnownOptimum,
}

/// Certifies that a schedule witnesses the instance's known optimum: it must
/// be feasible, achieve exactly the known makespan, and leave no idle time
/// (the heaviest machine load equals the makespan, proving no schedule can
/// do better).
pub fn certify_known_optimum(
    instance: &Instance,
    schedule: &Schedule,
) -> Result<Certification, CertifyError> {
    let target = instance.known_optimum().ok_or(CertifyError::NoKnownOptimum)?;
    let report = validate_schedule(instance, schedule);
    let makespan = match (report.verdict, report.makespan) {
        (Verdict::Feasible, Some(makespan)) => makespan,
        _ => {
            let detail = report
                .violations
                .first()
                .map(|v| v.to_string())
                .unwrap_or_else(|| "no violations recorded".into());
            return Ok(Certification::NotCertified {
                reason: format!("schedule is {}: {detail}", report.verdict),
            });
        }
    };
    if makespan != target {
        return Ok(Certification::NotCertified {
            reason: format!(
                "makespan {makespan} differs from known optimum {target} by {}",
                makespan - target
            ),
        });
    }
    let load = machine_load_bound(instance);
    if load != target {
        return Ok(Certification::NotCertified {
            reason: format!(
                "heaviest machine load {load} does not reach the known optimum {target}, \
                 so optimality is not witnessed"
            ),
        });
    }
    Ok(Certification::Certified { makespan })
}
