//! Generator for Known-Optima instances.
//!
//! Construction runs in two phases. First every machine's time axis
//! `[0, target_makespan)` is partitioned into abutting segments with no idle
//! time, so by construction no schedule can beat `target_makespan` and the
//! segment layout itself is an optimal schedule. Second the segments are
//! linked into job chains by a successor relation; the chains become the
//! jobs of a free-form [`Instance`] and the segment start times become the
//! feasibility certificate.
//!
//! Two linking procedures are provided. Short-jobs linking picks each
//! successor uniformly at random among the eligible segments, which tends to
//! strand late segments without successors and yields many short jobs.
//! Long-jobs linking picks the eligible segment with the smallest gap after
//! the predecessor, which keeps chains growing and yields few long jobs.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::model::{Instance, Job, Operation, Schedule, Time};
use crate::rng::{derive_seed, rng_from, GeneratorRng};

/// Suite default: one week in seconds.
pub const DEFAULT_TARGET_MAKESPAN: Time = 600_000;

/// Suite default minimum segment length.
pub const DEFAULT_MIN_DURATION: Time = 2;

/// Sub-stream tag separating the partition RNG from the linking RNG.
const PARTITION_STREAM: u64 = 1;
const LINK_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkMode {
    ShortJobs,
    LongJobs,
}

impl LinkMode {
    pub const ALL: [LinkMode; 2] = [LinkMode::ShortJobs, LinkMode::LongJobs];

    /// Stable tag used in seed derivation and file names.
    pub fn tag(self) -> u64 {
        match self {
            LinkMode::ShortJobs => 0,
            LinkMode::LongJobs => 1,
        }
    }
}

/// Whether a successor must start strictly after its predecessor ends, or may
/// start exactly when it ends (back-to-back).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuccessorGap {
    Strict,
    NonStrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationConfig {
    pub machine_count: usize,
    pub total_ops: usize,
    pub target_makespan: Time,
    pub min_duration: Time,
    pub linking: LinkMode,
    pub successor_gap: SuccessorGap,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("machine count must be at least 1")]
    NoMachines,
    #[error("{total_ops} operations cannot cover {machine_count} machines (need at least one each)")]
    TooFewOps { total_ops: usize, machine_count: usize },
    #[error("target makespan {0} must be at least 1")]
    BadMakespan(Time),
    #[error("minimum duration {0} must be at least 1")]
    BadMinDuration(Time),
    #[error(
        "a machine would hold {max_per_machine} segments of length >= {min_duration}, \
         which cannot fit in a makespan of {target_makespan}"
    )]
    Infeasible {
        max_per_machine: usize,
        min_duration: Time,
        target_makespan: Time,
    },
}

impl GenerationConfig {
    /// A configuration with the suite defaults: makespan 600 000, minimum
    /// duration 2, strict successor gap.
    pub fn new(machine_count: usize, total_ops: usize, linking: LinkMode, seed: u64) -> Self {
        GenerationConfig {
            machine_count,
            total_ops,
            target_makespan: DEFAULT_TARGET_MAKESPAN,
            min_duration: DEFAULT_MIN_DURATION,
            linking,
            successor_gap: SuccessorGap::Strict,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.machine_count == 0 {
            return Err(ConfigError::NoMachines);
        }
        if self.total_ops < self.machine_count {
            return Err(ConfigError::TooFewOps {
                total_ops: self.total_ops,
                machine_count: self.machine_count,
            });
        }
        if self.target_makespan < 1 {
            return Err(ConfigError::BadMakespan(self.target_makespan));
        }
        if self.min_duration < 1 {
            return Err(ConfigError::BadMinDuration(self.min_duration));
        }
        let max_per_machine = self.total_ops.div_ceil(self.machine_count);
        if (max_per_machine as i128) * (self.min_duration as i128) > (self.target_makespan as i128)
        {
            return Err(ConfigError::Infeasible {
                max_per_machine,
                min_duration: self.min_duration,
                target_makespan: self.target_makespan,
            });
        }
        Ok(())
    }
}

/// One processing period on a machine's time axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentSpan {
    pub start: Time,
    pub end: Time,
}

/// The zero-idle partition of every machine's time axis: per machine, an
/// ascending sequence of segments that abut exactly and cover
/// `[0, makespan)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannedTimeline {
    pub makespan: Time,
    pub machines: Vec<Vec<SegmentSpan>>,
}

impl PlannedTimeline {
    pub fn machine_count(&self) -> usize {
        self.machines.len()
    }

    pub fn total_ops(&self) -> usize {
        self.machines.iter().map(Vec::len).sum()
    }

    /// Flattens into `(machine, span)` in machine-major order. The position
    /// in this flattening is the segment id used by the successor map.
    fn flat_segments(&self) -> Vec<Segment> {
        let mut out = Vec::with_capacity(self.total_ops());
        for (machine, spans) in self.machines.iter().enumerate() {
            for span in spans {
                out.push(Segment {
                    machine,
                    start: span.start,
                    end: span.end,
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Segment {
    machine: usize,
    start: Time,
    end: Time,
}

/// A generated instance with its construction by-products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedSolution {
    pub instance: Instance,
    /// Start times realizing the known optimum; row/column layout matches
    /// `instance.jobs()`.
    pub certificate: Schedule,
    /// Successor relation over machine-major segment ids of the source
    /// timeline: `successors[s] = Some(t)` links segment `s` to `t` within
    /// one job chain.
    pub successors: Vec<Option<usize>>,
}

/// Partitions every machine's `[0, target_makespan)` into abutting segments.
///
/// Each machine receives `total_ops / machine_count` segments; the remainder
/// goes to machines chosen uniformly at random, one extra segment each. Within
/// a machine the boundaries are distinct uniform random cut points kept at
/// least `min_duration` apart, so every segment length is at least
/// `min_duration`. Deterministic in `config.seed`.
pub fn partition_timeline(config: &GenerationConfig) -> Result<PlannedTimeline, ConfigError> {
    config.validate()?;
    let mut rng = rng_from(config.seed, &[PARTITION_STREAM]);
    let mc = config.machine_count;
    let base = config.total_ops / mc;
    let remainder = config.total_ops % mc;
    let mut counts = vec![base; mc];
    let mut ids: Vec<usize> = (0..mc).collect();
    for i in 0..remainder {
        let j = rng.random_range(i..mc);
        ids.swap(i, j);
        counts[ids[i]] += 1;
    }

    let t = config.target_makespan;
    let d = config.min_duration;
    let machines = counts
        .iter()
        .map(|&k| {
            // Sorted uniform draws from [0, t - k*d] shifted by i*d yield
            // distinct cut points with gaps of at least d.
            let span = t - k as Time * d;
            let mut cuts: Vec<Time> = (1..k).map(|_| rng.random_range(0..=span)).collect();
            cuts.sort_unstable();
            let mut spans = Vec::with_capacity(k);
            let mut prev = 0;
            for (i, &u) in cuts.iter().enumerate() {
                let cut = u + (i + 1) as Time * d;
                spans.push(SegmentSpan { start: prev, end: cut });
                prev = cut;
            }
            spans.push(SegmentSpan { start: prev, end: t });
            spans
        })
        .collect();

    Ok(PlannedTimeline {
        makespan: t,
        machines,
    })
}

/// Links segments into chains by visiting them in a uniform random order and
/// giving each a successor chosen uniformly among the eligible segments: on a
/// different machine, starting after the segment ends (strictly or not per
/// `gap`), and without a predecessor so far. Segments with no eligible
/// successor end their chain.
pub fn link_short_jobs(timeline: &PlannedTimeline, gap: SuccessorGap, seed: u64) -> LinkedSolution {
    link(timeline, LinkMode::ShortJobs, gap, seed)
}

/// Links like [`link_short_jobs`] but picks the eligible successor with the
/// smallest gap `successor.start - segment.end`, breaking ties uniformly at
/// random.
pub fn link_long_jobs(timeline: &PlannedTimeline, gap: SuccessorGap, seed: u64) -> LinkedSolution {
    link(timeline, LinkMode::LongJobs, gap, seed)
}

/// Runs the full construction: partition, then the linker selected by
/// `config.linking`. The resulting instance records `target_makespan` as its
/// known optimum and the certificate schedules every operation at its
/// segment's start.
pub fn generate_known_optima(config: &GenerationConfig) -> Result<LinkedSolution, ConfigError> {
    let timeline = partition_timeline(config)?;
    let link_seed = derive_seed(config.seed, &[LINK_STREAM]);
    Ok(link(&timeline, config.linking, config.successor_gap, link_seed))
}

fn link(timeline: &PlannedTimeline, mode: LinkMode, gap: SuccessorGap, seed: u64) -> LinkedSolution {
    let segments = timeline.flat_segments();
    let n = segments.len();
    let mut index = CandidateIndex::new(&segments, timeline.machine_count());
    let mut rng: GeneratorRng = rand::SeedableRng::seed_from_u64(seed);

    let mut visit: Vec<usize> = (0..n).collect();
    visit.shuffle(&mut rng);

    let strict = gap == SuccessorGap::Strict;
    let mut successors: Vec<Option<usize>> = vec![None; n];
    let mut has_predecessor = vec![false; n];
    for &sid in &visit {
        let seg = segments[sid];
        let lo = index.first_position_after(seg.end, strict);
        let total = index.eligible_count(lo, n, seg.machine);
        if total == 0 {
            continue;
        }
        let position = match mode {
            LinkMode::ShortJobs => {
                let k = rng.random_range(0..total);
                index.kth_eligible(lo, n, seg.machine, k)
            }
            LinkMode::LongJobs => {
                let nearest = index.kth_eligible(lo, n, seg.machine, 0);
                let best_start = index.start_at(nearest);
                let (a, b) = index.positions_with_start(best_start);
                let ties = index.eligible_count(a, b, seg.machine);
                let j = rng.random_range(0..ties);
                index.kth_eligible(a, b, seg.machine, j)
            }
        };
        let tid = index.segment_at(position);
        successors[sid] = Some(tid);
        has_predecessor[tid] = true;
        index.remove(position);
    }

    // Chains become jobs, ordered by their first segment for deterministic
    // output; (start, machine) is unique because a machine has at most one
    // segment per start time.
    let mut heads: Vec<usize> = (0..n).filter(|&sid| !has_predecessor[sid]).collect();
    heads.sort_unstable_by_key(|&sid| (segments[sid].start, segments[sid].machine));

    let mut jobs = Vec::with_capacity(heads.len());
    let mut starts = Vec::with_capacity(heads.len());
    for &head in &heads {
        let mut operations = Vec::new();
        let mut row = Vec::new();
        let mut cur = head;
        loop {
            let seg = segments[cur];
            operations.push(Operation::new(seg.machine, seg.end - seg.start));
            row.push(seg.start);
            match successors[cur] {
                Some(next) => cur = next,
                None => break,
            }
        }
        jobs.push(Job::new(operations));
        starts.push(row);
    }

    let instance = Instance::free_form(timeline.machine_count(), jobs)
        .expect("segments have positive lengths and in-range machines")
        .with_known_optimum(timeline.makespan);
    LinkedSolution {
        instance,
        certificate: Schedule::new(starts),
        successors,
    }
}

/// Dynamic index over segments that can still gain a predecessor, ordered by
/// `(start, machine)`. Supports counting and uniform k-th selection over
/// "start beyond a threshold, machine differs" in O(log^2 n) per query and
/// O(log n) removal.
struct CandidateIndex {
    /// Sorted segment starts, one per position.
    starts: Vec<Time>,
    /// Segment id at each position.
    segment_ids: Vec<usize>,
    /// Machine at each position.
    machines: Vec<usize>,
    /// Rank of each position within its machine's position list.
    machine_rank: Vec<usize>,
    /// Per machine, its positions in ascending order.
    machine_positions: Vec<Vec<usize>>,
    /// Count of present positions, globally and per machine.
    global: Fenwick,
    per_machine: Vec<Fenwick>,
}

impl CandidateIndex {
    fn new(segments: &[Segment], machine_count: usize) -> CandidateIndex {
        let n = segments.len();
        let mut by_start: Vec<usize> = (0..n).collect();
        by_start.sort_unstable_by_key(|&sid| (segments[sid].start, segments[sid].machine));

        let mut starts = Vec::with_capacity(n);
        let mut machines = Vec::with_capacity(n);
        let mut machine_rank = vec![0; n];
        let mut machine_positions = vec![Vec::new(); machine_count];
        for (position, &sid) in by_start.iter().enumerate() {
            let seg = segments[sid];
            starts.push(seg.start);
            machines.push(seg.machine);
            machine_rank[position] = machine_positions[seg.machine].len();
            machine_positions[seg.machine].push(position);
        }
        let global = Fenwick::all_ones(n);
        let per_machine = machine_positions
            .iter()
            .map(|positions| Fenwick::all_ones(positions.len()))
            .collect();
        CandidateIndex {
            starts,
            segment_ids: by_start,
            machines,
            machine_rank,
            machine_positions,
            global,
            per_machine,
        }
    }

    fn segment_at(&self, position: usize) -> usize {
        self.segment_ids[position]
    }

    fn start_at(&self, position: usize) -> Time {
        self.starts[position]
    }

    /// First position whose start exceeds (or, non-strictly, reaches) the
    /// threshold.
    fn first_position_after(&self, threshold: Time, strict: bool) -> usize {
        if strict {
            self.starts.partition_point(|&s| s <= threshold)
        } else {
            self.starts.partition_point(|&s| s < threshold)
        }
    }

    /// The contiguous position range holding exactly this start value.
    fn positions_with_start(&self, start: Time) -> (usize, usize) {
        (
            self.starts.partition_point(|&s| s < start),
            self.starts.partition_point(|&s| s <= start),
        )
    }

    /// Present positions in `[lo, hi)` not on machine `exclude`.
    fn eligible_count(&self, lo: usize, hi: usize, exclude: usize) -> usize {
        if hi <= lo {
            return 0;
        }
        let positions = &self.machine_positions[exclude];
        let a = positions.partition_point(|&p| p < lo);
        let b = positions.partition_point(|&p| p < hi);
        self.global.range(lo, hi) - self.per_machine[exclude].range(a, b)
    }

    /// Position of the `k`-th (0-based, in start order) eligible segment in
    /// `[lo, hi)`. Requires `k < eligible_count(lo, hi, exclude)`.
    fn kth_eligible(&self, lo: usize, hi: usize, exclude: usize, k: usize) -> usize {
        let mut a = lo;
        let mut b = hi - 1;
        while a < b {
            let mid = a + (b - a) / 2;
            if self.eligible_count(lo, mid + 1, exclude) > k {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        a
    }

    /// Marks the segment at `position` as having a predecessor, removing it
    /// from all further queries.
    fn remove(&mut self, position: usize) {
        self.global.add(position, -1);
        let machine = self.machines[position];
        self.per_machine[machine].add(self.machine_rank[position], -1);
    }
}

/// Fenwick tree over 0/1 counts.
struct Fenwick {
    tree: Vec<usize>,
}

impl Fenwick {
    fn all_ones(n: usize) -> Fenwick {
        // Linear construction: each node covers [i - lowbit(i), i).
        let mut tree = vec![0usize; n + 1];
        for i in 1..=n {
            tree[i] = i & i.wrapping_neg();
        }
        Fenwick { tree }
    }

    fn add(&mut self, mut position: usize, delta: isize) {
        position += 1;
        while position < self.tree.len() {
            self.tree[position] = (self.tree[position] as isize + delta) as usize;
            position += position & position.wrapping_neg();
        }
    }

    /// Count in `[0, bound)`.
    fn prefix(&self, mut bound: usize) -> usize {
        let mut sum = 0;
        while bound > 0 {
            sum += self.tree[bound];
            bound -= bound & bound.wrapping_neg();
        }
        sum
    }

    fn range(&self, lo: usize, hi: usize) -> usize {
        if hi <= lo {
            0
        } else {
            self.prefix(hi) - self.prefix(lo)
        }
    }
}

/// Default suite shapes as `(machine_count, total_ops)`: with three instances
/// per shape and both linking modes this yields the classic 24-instance suite
/// (12 short, 12 long) spanning up to 1000 machines and 100 000 operations.
pub const DEFAULT_SUITE_SHAPES: [(usize, usize); 4] = [
    (100, 10_000),
    (1000, 10_000),
    (100, 100_000),
    (1000, 100_000),
];

pub const DEFAULT_INSTANCES_PER_SHAPE: usize = 3;

/// Configurations for a Known-Optima suite with the default makespan,
/// minimum duration, and strict gap: for every linking mode, shape, and
/// index, one instance named by the
/// `<long|short>-js-<makespan>-<machines>-<ops>-<index>` convention.
pub fn known_optima_suite_configs(
    shapes: &[(usize, usize)],
    instances_per_shape: usize,
    base_seed: u64,
) -> Vec<(String, GenerationConfig)> {
    known_optima_suite_configs_with(
        shapes,
        instances_per_shape,
        base_seed,
        DEFAULT_TARGET_MAKESPAN,
        DEFAULT_MIN_DURATION,
        SuccessorGap::Strict,
    )
}

/// [`known_optima_suite_configs`] with every knob exposed.
///
/// Per-instance seeds are `derive_seed(base_seed, [mode, machines, ops,
/// index])`, so reordering or extending the shape list never changes
/// existing instances.
pub fn known_optima_suite_configs_with(
    shapes: &[(usize, usize)],
    instances_per_shape: usize,
    base_seed: u64,
    target_makespan: Time,
    min_duration: Time,
    successor_gap: SuccessorGap,
) -> Vec<(String, GenerationConfig)> {
    let mut out = Vec::with_capacity(shapes.len() * instances_per_shape * 2);
    for mode in LinkMode::ALL {
        for &(machine_count, total_ops) in shapes {
            for index in 1..=instances_per_shape {
                let name = crate::io::names::known_optima_name(
                    mode,
                    target_makespan,
                    machine_count,
                    total_ops,
                    index,
                );
                let config = GenerationConfig {
                    machine_count,
                    total_ops,
                    target_makespan,
                    min_duration,
                    linking: mode,
                    successor_gap,
                    seed: derive_seed(
                        base_seed,
                        &[mode.tag(), machine_count as u64, total_ops as u64, index as u64],
                    ),
                };
                out.push((name, config));
            }
        }
    }
    out
}
