//! Statistical profile of an instance: job counts, operations per job, and
//! duration spread.
//!
//! Sums are kept exact in wide integers; means are rendered to one decimal
//! with half-up rounding computed in integer arithmetic, so displayed values
//! never drift from the exact rationals.

use std::fmt;

use crate::model::Instance;

/// Exact summary of a non-negative integer distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistSummary {
    pub min: i64,
    pub max: i64,
    pub sum: i128,
    pub count: usize,
}

impl DistSummary {
    pub fn collect(values: impl IntoIterator<Item = i64>) -> DistSummary {
        let mut summary = DistSummary {
            min: i64::MAX,
            max: i64::MIN,
            sum: 0,
            count: 0,
        };
        for v in values {
            summary.min = summary.min.min(v);
            summary.max = summary.max.max(v);
            summary.sum += v as i128;
            summary.count += 1;
        }
        if summary.count == 0 {
            summary.min = 0;
            summary.max = 0;
        }
        summary
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum as f64 / self.count as f64
        }
    }

    /// The mean rounded half-up to one decimal, e.g. `97.1`.
    pub fn mean_display(&self) -> String {
        if self.count == 0 {
            return "0.0".into();
        }
        let c = self.count as i128;
        let tenths = (self.sum * 20 + c) / (2 * c);
        format!("{}.{}", tenths / 10, tenths % 10)
    }
}

impl fmt::Display for DistSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "min {}, max {}, mean {}",
            self.min,
            self.max,
            self.mean_display()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceStats {
    pub job_count: usize,
    pub machine_count: usize,
    pub total_ops: usize,
    pub ops_per_job: DistSummary,
    pub duration: DistSummary,
}

pub fn instance_statistics(instance: &Instance) -> InstanceStats {
    let ops_per_job = DistSummary::collect(instance.jobs().iter().map(|j| j.len() as i64));
    let duration = DistSummary::collect(instance.operations().map(|(_, _, op)| op.duration));
    InstanceStats {
        job_count: instance.job_count(),
        machine_count: instance.machine_count(),
        total_ops: instance.total_ops(),
        ops_per_job,
        duration,
    }
}

impl InstanceStats {
    pub fn render_text(&self) -> String {
        format!(
            "jobs: {}\nmachines: {}\noperations: {}\nops per job: {}\ndurations: {}\n",
            self.job_count, self.machine_count, self.total_ops, self.ops_per_job, self.duration
        )
    }

    pub fn render_kv(&self) -> String {
        format!(
            "jobs={} machines={} total_ops={} ops_min={} ops_max={} ops_mean={} \
             dur_min={} dur_max={} dur_mean={}",
            self.job_count,
            self.machine_count,
            self.total_ops,
            self.ops_per_job.min,
            self.ops_per_job.max,
            self.ops_per_job.mean_display(),
            self.duration.min,
            self.duration.max,
            self.duration.mean_display()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::large_ta::{parse_large_ta, serialize_large_ta};
    use crate::model::{Job, Operation};
    use crate::taillard::{generate_rectangular, TaillardConfig};

    #[test]
    fn single_operation_instance() {
        let instance =
            Instance::free_form(1, vec![Job::new(vec![Operation::new(0, 5)])]).unwrap();
        let stats = instance_statistics(&instance);
        assert_eq!(stats.job_count, 1);
        assert_eq!(stats.total_ops, 1);
        assert_eq!((stats.ops_per_job.min, stats.ops_per_job.max), (1, 1));
        assert_eq!(stats.ops_per_job.mean_display(), "1.0");
        assert_eq!((stats.duration.min, stats.duration.max), (5, 5));
        assert_eq!(stats.duration.mean_display(), "5.0");
    }

    #[test]
    fn means_round_half_up_in_exact_arithmetic() {
        assert_eq!(DistSummary::collect([3, 4]).mean_display(), "3.5");
        assert_eq!(DistSummary::collect([1, 2, 2]).mean_display(), "1.7");
        assert_eq!(DistSummary::collect([1, 1, 1, 2]).mean_display(), "1.3");
        assert_eq!(DistSummary::collect([971]).mean_display(), "971.0");
        assert_eq!(DistSummary::collect([]).mean_display(), "0.0");
    }

    #[test]
    fn sums_stay_exact() {
        let stats = DistSummary::collect([i64::MAX, i64::MAX]);
        assert_eq!(stats.sum, 2 * i64::MAX as i128);
    }

    #[test]
    fn round_trip_preserves_statistics() {
        let instance = generate_rectangular(&TaillardConfig::new(6, 4, 21)).unwrap();
        let mut bytes = Vec::new();
        serialize_large_ta(&instance, &mut bytes).unwrap();
        let reparsed = parse_large_ta(bytes.as_slice()).unwrap();
        assert_eq!(instance_statistics(&reparsed), instance_statistics(&instance));
    }

    #[test]
    fn renders_both_ways() {
        let instance =
            Instance::free_form(2, vec![Job::new(vec![Operation::new(1, 7)])]).unwrap();
        let stats = instance_statistics(&instance);
        assert!(stats.render_text().contains("ops per job: min 1, max 1, mean 1.0"));
        assert_eq!(
            stats.render_kv(),
            "jobs=1 machines=2 total_ops=1 ops_min=1 ops_max=1 ops_mean=1.0 \
             dur_min=7 dur_max=7 dur_mean=7.0"
        );
    }
}
