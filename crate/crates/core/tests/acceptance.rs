//! End-to-end delivery checks, one test per numbered criterion. Each test
//! prints a single `criterion N ...: PASS` or `... FAIL` line (visible with
//! `--nocapture`) and fails the build on any miss.
//!
//! The generated benchmark suites are built once into temporary
//! directories and shared by every criterion that needs them.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::LazyLock;
use std::time::{Duration, Instant};

use jobshop_core::io::{
    certificate, known_optima as ko_io, large_ta as ta_io, names, scan_benchmark_tree,
    BenchmarkKind,
};
use jobshop_core::known_optima::{
    generate_known_optima, GenerationConfig, LinkMode, SuccessorGap,
};
use jobshop_core::rng::rng_from;
use jobshop_core::solver::exact::brute_force_optimum;
use jobshop_core::solver::{lower_bound, solve_with_rules, DispatchRule};
use jobshop_core::stats::instance_statistics;
use jobshop_core::suite::{
    write_known_optima_suite, write_large_ta_suite, KnownOptimaSuiteOptions, LargeTaSuiteOptions,
    SuiteEntry,
};
use jobshop_core::validate::{certify_known_optimum, validate_schedule, Certification, Verdict};
use jobshop_core::{machine_loads, Instance, Job, Operation, Schedule, Time};
use rand::Rng;
use tempfile::TempDir;

macro_rules! ensure {
    ($cond:expr, $($why:tt)+) => {
        if !$cond {
            return Err(format!($($why)+));
        }
    };
}

fn report(number: u32, what: &str, outcome: Result<String, String>) {
    match &outcome {
        Ok(detail) => println!("criterion {number} ({what}): PASS [{detail}]"),
        Err(why) => println!("criterion {number} ({what}): FAIL [{why}]"),
    }
    if let Err(why) = outcome {
        panic!("criterion {number} ({what}) failed: {why}");
    }
}

struct GeneratedSuite {
    _dir: TempDir,
    root: PathBuf,
    entries: Vec<SuiteEntry>,
    elapsed: Duration,
}

static LARGE_TA: LazyLock<GeneratedSuite> = LazyLock::new(|| {
    let dir = TempDir::new().unwrap();
    let begun = Instant::now();
    let entries = write_large_ta_suite(dir.path(), &LargeTaSuiteOptions::default(), 0).unwrap();
    GeneratedSuite {
        root: dir.path().to_path_buf(),
        _dir: dir,
        entries,
        elapsed: begun.elapsed(),
    }
});

static KNOWN_OPTIMA: LazyLock<GeneratedSuite> = LazyLock::new(|| {
    let dir = TempDir::new().unwrap();
    let options = KnownOptimaSuiteOptions {
        shapes: vec![(20, 2_000), (50, 5_000), (100, 10_000)],
        instances_per_shape: 17,
        ..KnownOptimaSuiteOptions::default()
    };
    let begun = Instant::now();
    let entries = write_known_optima_suite(dir.path(), &options, 0).unwrap();
    GeneratedSuite {
        root: dir.path().to_path_buf(),
        _dir: dir,
        entries,
        elapsed: begun.elapsed(),
    }
});

fn peak_memory_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

#[test]
fn criterion_1_suite_shape() {
    let outcome = (|| {
        let suite = &*LARGE_TA;
        ensure!(
            suite.entries.len() == 90,
            "expected 90 instances, wrote {}",
            suite.entries.len()
        );
        ensure!(
            suite.elapsed < Duration::from_secs(300),
            "suite generation took {:?}",
            suite.elapsed
        );
        let tree = scan_benchmark_tree(&suite.root, BenchmarkKind::LargeTa)
            .map_err(|e| e.to_string())?;
        ensure!(
            tree.instance_count() == 90,
            "directory scan found {} files",
            tree.instance_count()
        );

        let mut groups: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut ops_counts: BTreeMap<usize, usize> = BTreeMap::new();
        for entry in &suite.entries {
            let instance = ta_io::parse_large_ta_file(&entry.path).map_err(|e| e.to_string())?;
            *groups
                .entry((instance.job_count(), instance.machine_count()))
                .or_default() += 1;
            *ops_counts.entry(instance.total_ops()).or_default() += 1;
            let meta = entry
                .path
                .file_name()
                .and_then(|n| n.to_str())
                .and_then(names::parse_large_ta_name)
                .ok_or("unrecognized file name")?;
            ensure!(
                meta.jobs == instance.job_count() && meta.machines == instance.machine_count(),
                "file name disagrees with parsed dimensions for {:?}",
                entry.path
            );
        }
        let expected_groups: BTreeMap<(usize, usize), usize> = [10, 100, 1000]
            .into_iter()
            .flat_map(|jobs| [10, 100, 1000].into_iter().map(move |mc| ((jobs, mc), 10)))
            .collect();
        ensure!(
            groups == expected_groups,
            "group shapes off: {groups:?}"
        );
        ensure!(
            ops_counts.get(&1_000_000) == Some(&10),
            "million-operation group off: {ops_counts:?}"
        );
        Ok(format!(
            "90 instances in 9 groups, built in {:.1}s",
            suite.elapsed.as_secs_f64()
        ))
    })();
    report(1, "suite shape", outcome);
}

#[test]
fn criterion_2_known_optimum_certification() {
    let outcome = (|| {
        let suite = &*KNOWN_OPTIMA;
        let begun = Instant::now();
        let mut per_mode: BTreeMap<LinkMode, usize> = BTreeMap::new();
        let mut largest = (0, 0);
        for entry in &suite.entries {
            let instance = ko_io::parse_known_optima_file(&entry.path).map_err(|e| e.to_string())?;
            ensure!(
                instance.known_optimum() == Some(600_000),
                "file name did not carry the 600000 optimum: {:?}",
                entry.path
            );
            let cert_path = entry.certificate.as_ref().ok_or("certificate missing")?;
            let schedule = certificate::read_certificate_file(cert_path, &instance)
                .map_err(|e| e.to_string())?;
            match certify_known_optimum(&instance, &schedule).map_err(|e| e.to_string())? {
                Certification::Certified { makespan } => {
                    ensure!(makespan == 600_000, "certified at {makespan}");
                }
                Certification::NotCertified { reason } => {
                    return Err(format!("{:?}: {reason}", entry.path));
                }
            }
            let loads = machine_loads(&instance);
            ensure!(
                loads.iter().all(|&l| l == 600_000),
                "a machine load differs from 600000 in {:?}",
                entry.path
            );
            let meta = entry
                .path
                .file_name()
                .and_then(|n| n.to_str())
                .and_then(names::parse_known_optima_name)
                .ok_or("unrecognized file name")?;
            *per_mode.entry(meta.mode).or_default() += 1;
            largest = largest.max((meta.machines, meta.ops));
        }
        for mode in LinkMode::ALL {
            let n = per_mode.get(&mode).copied().unwrap_or(0);
            ensure!(n >= 50, "only {n} instances for {mode:?}");
        }
        ensure!(largest == (100, 10_000), "largest shape was {largest:?}");
        let total = suite.elapsed + begun.elapsed();
        ensure!(
            total < Duration::from_secs(120),
            "generation plus certification took {total:?}"
        );
        Ok(format!(
            "{} certificates at exactly 600000, {:.1}s",
            suite.entries.len(),
            total.as_secs_f64()
        ))
    })();
    report(2, "known-optimum certification", outcome);
}

#[test]
fn criterion_3_oracle_equivalence() {
    let outcome = (|| {
        let begun = Instant::now();
        let mut checked = 0;
        for i in 0..540u64 {
            let machine_count = 1 + (i % 3) as usize;
            let total_ops = machine_count.max(2 + (i % 7) as usize);
            let linking = LinkMode::ALL[(i % 2) as usize];
            let gap = if i % 4 < 2 {
                SuccessorGap::Strict
            } else {
                SuccessorGap::NonStrict
            };
            let mut config = GenerationConfig::new(machine_count, total_ops, linking, 9000 + i);
            config.target_makespan = 60;
            config.successor_gap = gap;
            let solution = generate_known_optima(&config).map_err(|e| e.to_string())?;
            let optimum = brute_force_optimum(&solution.instance, 8).map_err(|e| e.to_string())?;
            ensure!(
                optimum == 60,
                "exact search found {optimum} instead of 60 for {config:?}"
            );
            checked += 1;
        }
        let elapsed = begun.elapsed();
        ensure!(checked >= 500, "only {checked} instances checked");
        ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
        Ok(format!(
            "{checked} tiny instances solved to their built-in optimum, {:.1}s",
            elapsed.as_secs_f64()
        ))
    })();
    report(3, "oracle equivalence", outcome);
}

#[test]
fn criterion_4_short_long_contrast() {
    let outcome = (|| {
        let begun = Instant::now();
        let mut summary = Vec::new();
        for (machine_count, total_ops) in [(100, 10_000), (1000, 10_000)] {
            for seed in 0..3 {
                let mut means = [0.0f64; 2];
                for (slot, linking) in LinkMode::ALL.into_iter().enumerate() {
                    let config =
                        GenerationConfig::new(machine_count, total_ops, linking, 7000 + seed);
                    let solution = generate_known_optima(&config).map_err(|e| e.to_string())?;
                    means[slot] = instance_statistics(&solution.instance).ops_per_job.mean();
                }
                let [short_mean, long_mean] = means;
                ensure!(
                    long_mean >= 2.0 * short_mean,
                    "ratio {:.2} below 2 for {machine_count} machines, seed {seed} \
                     (short {short_mean:.1}, long {long_mean:.1})",
                    long_mean / short_mean
                );
                if seed == 0 {
                    summary.push(format!(
                        "{machine_count}m: {short_mean:.1} vs {long_mean:.1}"
                    ));
                }
            }
        }
        let elapsed = begun.elapsed();
        ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
        Ok(format!("mean ops per job {}", summary.join(", ")))
    })();
    report(4, "short/long contrast", outcome);
}

/// One deliberate defect applied to a valid file, with the line number the
/// parser must point at.
struct Mutation {
    text: String,
    expected_line: u64,
    label: &'static str,
}

/// `lines` excludes the trailing empty split; every source file ends with a
/// newline.
fn mutate(lines: &[String], sentinel: bool, kind: usize, rng: &mut impl Rng) -> Mutation {
    let job_line = 1 + rng.random_range(1..lines.len());
    let rebuild = |changed: Vec<String>| changed.join("\n") + "\n";
    let split =
        |l: usize| -> Vec<String> { lines[l - 1].split(' ').map(str::to_string).collect() };
    let with_line = |l: usize, tokens: Vec<String>| -> String {
        let mut changed = lines.to_vec();
        changed[l - 1] = tokens.join(" ");
        rebuild(changed)
    };
    match kind {
        0 => {
            let mut tokens = split(job_line);
            let at = rng.random_range(0..tokens.len());
            tokens[at] = "x#".into();
            Mutation {
                text: with_line(job_line, tokens),
                expected_line: job_line as u64,
                label: "garbage token",
            }
        }
        1 => {
            let mut tokens = split(1);
            tokens[1] = "x".into();
            Mutation {
                text: with_line(1, tokens),
                expected_line: 1,
                label: "garbage header",
            }
        }
        2 => {
            let mut tokens = split(1);
            tokens[0] = "0".into();
            Mutation {
                text: with_line(1, tokens),
                expected_line: 1,
                label: "zero job count",
            }
        }
        3 => {
            let mut tokens = split(job_line);
            tokens.pop();
            Mutation {
                text: with_line(job_line, tokens),
                expected_line: job_line as u64,
                label: "dropped token",
            }
        }
        4 => {
            let mut tokens = split(job_line);
            tokens.extend(["0".into(), "0".into()]);
            Mutation {
                text: with_line(job_line, tokens),
                expected_line: job_line as u64,
                label: "appended pair",
            }
        }
        5 => {
            let mut tokens = split(job_line);
            // Even positions hold machine ids; sentinel tokens excluded.
            let pair_tokens = tokens.len() - if sentinel { 2 } else { 0 };
            let at = 2 * rng.random_range(0..pair_tokens / 2);
            tokens[at] = "-5".into();
            Mutation {
                text: with_line(job_line, tokens),
                expected_line: job_line as u64,
                label: "negative machine",
            }
        }
        6 => {
            let mut changed = lines.to_vec();
            changed.push("7".into());
            Mutation {
                text: rebuild(changed),
                expected_line: lines.len() as u64 + 1,
                label: "extra line",
            }
        }
        _ => {
            let mut tokens = split(1);
            let claimed: usize = tokens[0].parse().unwrap();
            tokens[0] = (claimed + 1).to_string();
            Mutation {
                text: with_line(1, tokens),
                expected_line: lines.len() as u64 + 1,
                label: "inflated job count",
            }
        }
    }
}

#[test]
fn criterion_5_format_round_trip() {
    let outcome = (|| {
        let ta = &*LARGE_TA;
        let ko = &*KNOWN_OPTIMA;
        let mut round_tripped = 0;
        for entry in &ta.entries {
            let bytes = std::fs::read(&entry.path).map_err(|e| e.to_string())?;
            let instance = ta_io::parse_large_ta(bytes.as_slice()).map_err(|e| e.to_string())?;
            let mut again = Vec::with_capacity(bytes.len());
            ta_io::serialize_large_ta(&instance, &mut again).map_err(|e| e.to_string())?;
            ensure!(again == bytes, "byte drift in {:?}", entry.path);
            round_tripped += 1;
        }
        for entry in &ko.entries {
            let bytes = std::fs::read(&entry.path).map_err(|e| e.to_string())?;
            let instance = ko_io::parse_known_optima(bytes.as_slice()).map_err(|e| e.to_string())?;
            let mut again = Vec::with_capacity(bytes.len());
            ko_io::serialize_known_optima(&instance, &mut again).map_err(|e| e.to_string())?;
            ensure!(again == bytes, "byte drift in {:?}", entry.path);
            round_tripped += 1;

            let cert_path = entry.certificate.as_ref().ok_or("certificate missing")?;
            let cert_bytes = std::fs::read(cert_path).map_err(|e| e.to_string())?;
            let schedule = certificate::read_certificate(cert_bytes.as_slice(), &instance)
                .map_err(|e| e.to_string())?;
            let mut cert_again = Vec::with_capacity(cert_bytes.len());
            certificate::write_certificate(&schedule, &mut cert_again)
                .map_err(|e| e.to_string())?;
            ensure!(cert_again == cert_bytes, "byte drift in {:?}", cert_path);
            round_tripped += 1;
        }

        // Small sources keep a thousand parses quick; 150 KB admits every
        // file of up to ten thousand operations.
        let small = |entries: &[SuiteEntry]| -> Vec<PathBuf> {
            entries
                .iter()
                .map(|e| e.path.clone())
                .filter(|p| std::fs::metadata(p).map(|m| m.len() < 150_000).unwrap_or(false))
                .take(6)
                .collect()
        };
        let sources: Vec<(Vec<String>, bool)> = small(&ta.entries)
            .iter()
            .map(|p| (p, false))
            .chain(small(&ko.entries).iter().map(|p| (p, true)))
            .map(|(path, sentinel)| {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let lines = text
                    .strip_suffix('\n')
                    .ok_or("source file missing final newline")?
                    .split('\n')
                    .map(str::to_string)
                    .collect();
                Ok((lines, sentinel))
            })
            .collect::<Result<_, String>>()?;
        ensure!(sources.len() == 12, "expected 12 mutation sources");

        let mut rng = rng_from(2024, &[50]);
        for i in 0..1000 {
            let (lines, sentinel) = &sources[i % sources.len()];
            let mutation = mutate(lines, *sentinel, i % 8, &mut rng);
            let found = if *sentinel {
                ko_io::parse_known_optima(mutation.text.as_bytes())
            } else {
                ta_io::parse_large_ta(mutation.text.as_bytes())
            };
            let err = found.map_err(|e| e.line);
            ensure!(
                err == Err(mutation.expected_line),
                "mutation {i} ({}) reported {err:?}, expected line {}",
                mutation.label,
                mutation.expected_line
            );
        }
        Ok(format!(
            "{round_tripped} files byte-identical, 1000 mutations located"
        ))
    })();
    report(5, "format round-trip", outcome);
}

#[test]
fn criterion_6_scale_and_validator_agreement() {
    let outcome = (|| {
        // The million-operation instance, parsed and validated end to end.
        let suite = &*LARGE_TA;
        let million = suite
            .entries
            .iter()
            .find(|e| {
                e.path
                    .file_name()
                    .and_then(|n| n.to_str())
                    .and_then(names::parse_large_ta_name)
                    .is_some_and(|m| m.jobs * m.machines == 1_000_000)
            })
            .ok_or("no million-operation file")?;
        let begun = Instant::now();
        let instance = ta_io::parse_large_ta_file(&million.path).map_err(|e| e.to_string())?;
        let parse_time = begun.elapsed();
        let schedule =
            jobshop_core::solver::dispatch_schedule(&instance, DispatchRule::Spt);
        let begun = Instant::now();
        let validation = validate_schedule(&instance, &schedule);
        let validate_time = begun.elapsed();
        ensure!(validation.is_feasible(), "dispatch schedule failed validation");
        let budget = parse_time + validate_time;
        ensure!(
            budget < Duration::from_secs(60),
            "parse {parse_time:?} + validate {validate_time:?} over budget"
        );
        let peak = peak_memory_kb();
        if let Some(kb) = peak {
            ensure!(kb < 4 * 1024 * 1024, "peak memory {kb} kB exceeds 4 GB");
        }

        // Verdict agreement with the quadratic checker over every tiny
        // free-form instance in a bounded family, schedules included.
        let mut compared = 0u64;
        let mut rng = rng_from(2024, &[60]);
        for total in 1..=4usize {
            for shape in compositions(total) {
                for machine_count in 1..=2usize {
                    let assignments = pow(machine_count, total);
                    for machine_pick in 0..assignments {
                        for duration_pick in 0..pow(2, total) {
                            let instance = build_instance(
                                &shape,
                                machine_count,
                                machine_pick,
                                duration_pick,
                            );
                            compared += compare_schedules(&instance, total, &mut rng)?;
                        }
                    }
                }
            }
        }
        ensure!(compared > 100_000, "only {compared} comparisons ran");
        Ok(format!(
            "1M ops parsed in {:.1}s, validated in {:.1}s, {} kB peak; {compared} verdicts agree",
            parse_time.as_secs_f64(),
            validate_time.as_secs_f64(),
            peak.map(|kb| kb.to_string()).unwrap_or_else(|| "?".into()),
        ))
    })();
    report(6, "scale and validator agreement", outcome);
}

/// Ordered splits of `total` into at most three positive parts.
fn compositions(total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for first in 1..=total {
        let rest = total - first;
        if rest == 0 {
            out.push(vec![first]);
            continue;
        }
        for second in 1..=rest {
            let tail = rest - second;
            if tail == 0 {
                out.push(vec![first, second]);
            } else {
                out.push(vec![first, second, tail]);
            }
        }
    }
    out
}

fn pow(base: usize, exp: usize) -> usize {
    base.pow(exp as u32)
}

/// Decodes one instance of the bounded family: `machine_pick` and
/// `duration_pick` are mixed-radix encodings of per-operation choices.
fn build_instance(
    shape: &[usize],
    machine_count: usize,
    mut machine_pick: usize,
    mut duration_pick: usize,
) -> Instance {
    let jobs = shape
        .iter()
        .map(|&len| {
            Job::new(
                (0..len)
                    .map(|_| {
                        let machine = machine_pick % machine_count;
                        machine_pick /= machine_count;
                        let duration = 1 + (duration_pick % 2) as Time;
                        duration_pick /= 2;
                        Operation::new(machine, duration)
                    })
                    .collect(),
            )
        })
        .collect();
    Instance::free_form(machine_count, jobs).unwrap()
}

fn compare_schedules(
    instance: &Instance,
    total: usize,
    rng: &mut impl Rng,
) -> Result<u64, String> {
    let domain: [Time; 5] = [-1, 0, 1, 2, 3];
    let mut compared = 0;
    let check = |starts: Vec<Time>| -> Result<(), String> {
        let mut rows = Vec::with_capacity(instance.job_count());
        let mut it = starts.into_iter();
        for job in instance.jobs() {
            rows.push((&mut it).take(job.len()).collect());
        }
        let schedule = Schedule::new(rows);
        let fast = jobshop_core::validate::validate_schedule_capped(
            instance,
            &schedule,
            usize::MAX,
        );
        let slow = common::naive_validate(instance, &schedule);
        ensure!(
            fast.verdict == slow.verdict,
            "verdicts split on {:?} with {:?}: {:?} vs {:?}",
            instance.jobs(),
            schedule.starts(),
            fast.verdict,
            slow.verdict
        );
        if fast.verdict != Verdict::Malformed {
            ensure!(
                fast.violations.len() == slow.violation_count
                    && fast.makespan == slow.makespan,
                "reports split on {:?} with {:?}",
                instance.jobs(),
                schedule.starts()
            );
        }
        Ok(())
    };
    if total <= 3 {
        for pick in 0..pow(domain.len(), total) {
            let mut rest = pick;
            let starts = (0..total)
                .map(|_| {
                    let s = domain[rest % domain.len()];
                    rest /= domain.len();
                    s
                })
                .collect();
            check(starts)?;
            compared += 1;
        }
    } else {
        for _ in 0..40 {
            let starts = (0..total)
                .map(|_| domain[rng.random_range(0..domain.len())])
                .collect();
            check(starts)?;
            compared += 1;
        }
    }
    Ok(compared)
}

#[test]
fn criterion_7_baseline_solver_soundness() {
    let outcome = (|| {
        let suite = &*LARGE_TA;
        let timeout = Duration::from_secs(600);
        let mut solved = 0;
        let mut largest: Option<(usize, bool, bool)> = None;
        for entry in &suite.entries {
            let instance = ta_io::parse_large_ta_file(&entry.path).map_err(|e| e.to_string())?;
            let report = solve_with_rules(&instance, &DispatchRule::ALL, timeout);
            ensure!(
                report.timed_out || report.runs.len() == 4,
                "rules went missing on {:?}",
                entry.path
            );
            ensure!(
                !report.timed_out || report.best().is_some(),
                "timed out with no best-so-far on {:?}",
                entry.path
            );
            let bound = lower_bound(&instance);
            for run in &report.runs {
                let validation = validate_schedule(&instance, &run.schedule);
                ensure!(
                    validation.is_feasible(),
                    "{} schedule infeasible on {:?}",
                    run.rule,
                    entry.path
                );
                ensure!(
                    run.makespan >= bound,
                    "{} makespan {} under bound {bound} on {:?}",
                    run.rule,
                    run.makespan,
                    entry.path
                );
                solved += 1;
            }
            let ops = instance.total_ops();
            if largest.is_none_or(|(seen, _, _)| ops > seen) {
                largest = Some((ops, report.timed_out, report.best().is_some()));
            }
        }
        let (ops, timed_out, has_best) = largest.ok_or("no instances solved")?;
        ensure!(ops == 1_000_000, "largest instance had {ops} operations");
        ensure!(
            !timed_out || has_best,
            "largest instance timed out without a best-so-far"
        );

        let ko = &*KNOWN_OPTIMA;
        let mut ko_checked = 0;
        for entry in &ko.entries {
            let instance = ko_io::parse_known_optima_file(&entry.path).map_err(|e| e.to_string())?;
            let report = solve_with_rules(&instance, &DispatchRule::ALL, timeout);
            for run in &report.runs {
                ensure!(
                    validate_schedule(&instance, &run.schedule).is_feasible(),
                    "{} schedule infeasible on {:?}",
                    run.rule,
                    entry.path
                );
                ensure!(
                    run.makespan >= 600_000,
                    "{} makespan {} under the 600000 optimum on {:?}",
                    run.rule,
                    run.makespan,
                    entry.path
                );
                ko_checked += 1;
            }
        }
        Ok(format!(
            "{solved} rule runs feasible and bounded, {ko_checked} known-optima runs at or above 600000"
        ))
    })();
    report(7, "baseline solver soundness", outcome);
}
