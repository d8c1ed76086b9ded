//! Executing a [`RunConfig`]: suite generation, sub-folder traversal, and
//! report writing.
//!
//! Traversal commands fan instances out over the worker pool, gather the
//! per-instance results back in input order, and write one text and one
//! `key=value` report per sub-folder under the results directory. The exit
//! code is 0 unless some instance had a problem: an unreadable or malformed
//! file, an uncertified certificate, or an infeasible schedule. A solver
//! timeout is reported but is not a problem.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use jobshop_core::batch::map_batch;
use jobshop_core::io::certificate::read_certificate_file;
use jobshop_core::io::tree::results_dir;
use jobshop_core::io::{known_optima as ko_io, large_ta as ta_io, names};
use jobshop_core::io::{scan_benchmark_tree, BenchmarkKind, SubFolder};
use jobshop_core::model::Instance;
use jobshop_core::solver::{lower_bound, solve_with_rules, DispatchRule};
use jobshop_core::stats::instance_statistics;
use jobshop_core::suite::{write_known_optima_suite, write_large_ta_suite, SuiteEntry};
use jobshop_core::validate::{certify_known_optimum, validate_instance, Certification};

use crate::config::{CommandKind, RunConfig};

pub fn run(config: &RunConfig) -> Result<i32> {
    match config.command {
        CommandKind::GenerateTa => {
            let entries = write_large_ta_suite(&config.root, &config.large_ta, config.workers)?;
            announce_suite("large-ta", &config.root, &entries);
            Ok(0)
        }
        CommandKind::GenerateKo => {
            let entries =
                write_known_optima_suite(&config.root, &config.known_optima, config.workers)?;
            announce_suite("known-optima", &config.root, &entries);
            Ok(0)
        }
        CommandKind::Validate => traverse(config, "validate", validate_one),
        CommandKind::Stats => traverse(config, "stats", stats_one),
        CommandKind::Solve => {
            let rules: Vec<DispatchRule> = match config.rule {
                Some(rule) => vec![rule],
                None => DispatchRule::ALL.to_vec(),
            };
            let timeout = config.timeout;
            traverse(config, "solve", move |kind, path| {
                solve_one(kind, path, &rules, timeout)
            })
        }
    }
}

fn announce_suite(label: &str, root: &Path, entries: &[SuiteEntry]) {
    let certificates = entries.iter().filter(|e| e.certificate.is_some()).count();
    let subfolders: std::collections::BTreeSet<&str> =
        entries.iter().map(|e| e.subfolder.as_str()).collect();
    if certificates > 0 {
        println!(
            "{label}: wrote {} instances with certificates across {} sub-folder(s) under {}",
            entries.len(),
            subfolders.len(),
            root.display()
        );
    } else {
        println!(
            "{label}: wrote {} instances across {} sub-folder(s) under {}",
            entries.len(),
            subfolders.len(),
            root.display()
        );
    }
}

/// What one instance contributed to the reports.
struct Entry {
    name: String,
    /// Body lines for the human-readable report, not yet name-prefixed.
    text: Vec<String>,
    /// Lines for the `key=value` report, already `instance=`-prefixed.
    kv: Vec<String>,
    problem: bool,
}

impl Entry {
    fn new(path: &Path) -> Entry {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Entry {
            name,
            text: Vec::new(),
            kv: Vec::new(),
            problem: false,
        }
    }

    fn parse_failure(mut self, error: &jobshop_core::io::ParseError) -> Entry {
        self.text.push(format!("error: {error}"));
        self.kv
            .push(format!("instance={} error=parse line={}", self.name, error.line));
        self.problem = true;
        self
    }
}

/// Runs `per_instance` over every selected instance and writes one report
/// pair per sub-folder.
fn traverse<F>(config: &RunConfig, command: &str, per_instance: F) -> Result<i32>
where
    F: Fn(BenchmarkKind, &Path) -> Entry + Send + Sync,
{
    let kind = config.benchmark.with_context(|| {
        format!("--benchmark is required for {command}: large-ta or known-optima")
    })?;
    let tree = scan_benchmark_tree(&config.root, kind)?;
    let selected: Vec<&SubFolder> = match &config.subfolder {
        Some(name) => vec![tree.subfolder(name).with_context(|| {
            format!("sub-folder {name:?} does not exist under {}", kind.dir_name())
        })?],
        None => tree.subfolders.iter().collect(),
    };

    let reports = results_dir(&config.root);
    std::fs::create_dir_all(&reports)
        .with_context(|| format!("cannot create {}", reports.display()))?;

    let mut problems = 0usize;
    for subfolder in selected {
        let paths: Vec<PathBuf> = subfolder.instances.clone();
        let entries = map_batch(paths, config.workers, |path| per_instance(kind, &path));
        problems += entries.iter().filter(|e| e.problem).count();
        write_reports(&reports, command, kind, subfolder, &entries)?;
        println!(
            "{command} {kind}/{}: {} instance(s), {} problem(s)",
            subfolder.name,
            entries.len(),
            entries.iter().filter(|e| e.problem).count()
        );
    }
    println!("reports: {}", reports.display());
    Ok(if problems > 0 { 1 } else { 0 })
}

fn write_reports(
    reports: &Path,
    command: &str,
    kind: BenchmarkKind,
    subfolder: &SubFolder,
    entries: &[Entry],
) -> Result<()> {
    let stem = format!("{command}-{kind}-{}", subfolder.name);
    let problems = entries.iter().filter(|e| e.problem).count();

    let mut text = String::new();
    for entry in entries {
        for line in &entry.text {
            text.push_str(&entry.name);
            text.push_str(": ");
            text.push_str(line);
            text.push('\n');
        }
    }
    text.push_str(&format!(
        "instances: {}, problems: {problems}\n",
        entries.len()
    ));

    let mut kv = String::new();
    for entry in entries {
        for line in &entry.kv {
            kv.push_str(line);
            kv.push('\n');
        }
    }
    kv.push_str(&format!("instances={} problems={problems}\n", entries.len()));

    for (extension, content) in [("txt", &text), ("kv", &kv)] {
        let path = reports.join(format!("{stem}.{extension}"));
        std::fs::write(&path, content)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    print!("{text}");
    Ok(())
}

fn parse_by_kind(kind: BenchmarkKind, path: &Path) -> Result<Instance, jobshop_core::io::ParseError> {
    match kind {
        BenchmarkKind::LargeTa => ta_io::parse_large_ta_file(path),
        BenchmarkKind::KnownOptima => ko_io::parse_known_optima_file(path),
    }
}

fn validate_one(kind: BenchmarkKind, path: &Path) -> Entry {
    let mut entry = Entry::new(path);
    let instance = match parse_by_kind(kind, path) {
        Ok(instance) => instance,
        Err(error) => return entry.parse_failure(&error),
    };

    let report = validate_instance(&instance);
    if !report.violations.is_empty() {
        for line in report.render_text().lines() {
            entry.text.push(line.to_string());
        }
        entry.kv.push(format!("instance={} {}", entry.name, report.render_kv()));
        entry.problem = true;
        return entry;
    }

    let certificate = names::certificate_path(path);
    if !certificate.is_file() {
        entry.text.push("well-formed, no certificate".into());
        entry
            .kv
            .push(format!("instance={} {} certificate=absent", entry.name, report.render_kv()));
        return entry;
    }

    let schedule = match read_certificate_file(&certificate, &instance) {
        Ok(schedule) => schedule,
        Err(error) => {
            entry.text.push(format!(
                "certificate {}: error: {error}",
                certificate.display()
            ));
            entry.kv.push(format!(
                "instance={} error=certificate-parse line={}",
                entry.name, error.line
            ));
            entry.problem = true;
            return entry;
        }
    };

    match certify_known_optimum(&instance, &schedule) {
        Ok(Certification::Certified { makespan }) => {
            entry.text.push(format!("certified, makespan {makespan}"));
            entry
                .kv
                .push(format!("instance={} certified=true makespan={makespan}", entry.name));
        }
        Ok(Certification::NotCertified { reason }) => {
            entry.text.push(format!("not certified: {reason}"));
            entry
                .kv
                .push(format!("instance={} certified=false", entry.name));
            entry.problem = true;
        }
        Err(_) => {
            // No optimum in the name; fall back to plain feasibility.
            let report = jobshop_core::validate::validate_schedule(&instance, &schedule);
            for line in report.render_text().lines() {
                entry.text.push(line.to_string());
            }
            entry.kv.push(format!("instance={} {}", entry.name, report.render_kv()));
            entry.problem = !report.is_feasible();
        }
    }
    entry
}

fn stats_one(kind: BenchmarkKind, path: &Path) -> Entry {
    let mut entry = Entry::new(path);
    match parse_by_kind(kind, path) {
        Ok(instance) => {
            let stats = instance_statistics(&instance);
            for line in stats.render_text().lines() {
                entry.text.push(line.to_string());
            }
            entry.kv.push(format!("instance={} {}", entry.name, stats.render_kv()));
            entry
        }
        Err(error) => entry.parse_failure(&error),
    }
}

fn solve_one(
    kind: BenchmarkKind,
    path: &Path,
    rules: &[DispatchRule],
    timeout: std::time::Duration,
) -> Entry {
    let mut entry = Entry::new(path);
    let instance = match parse_by_kind(kind, path) {
        Ok(instance) => instance,
        Err(error) => return entry.parse_failure(&error),
    };

    let bound = lower_bound(&instance);
    let optimum = instance.known_optimum();
    let report = solve_with_rules(&instance, rules, timeout);
    for run in &report.runs {
        let gap = match optimum {
            Some(optimum) => (run.makespan - optimum).to_string(),
            None => "n/a".into(),
        };
        let wall_ms = run.elapsed.as_millis();
        entry.text.push(format!(
            "{} makespan {} lower-bound {bound} gap {gap} wall {wall_ms} ms",
            run.rule, run.makespan
        ));
        entry.kv.push(format!(
            "instance={} rule={} makespan={} lower_bound={bound} gap={gap} wall_ms={wall_ms}",
            entry.name, run.rule, run.makespan
        ));
    }
    if report.timed_out {
        let best = report
            .best()
            .map(|r| r.makespan.to_string())
            .unwrap_or_else(|| "none".into());
        entry.text.push(format!("timeout, best makespan = {best}"));
        entry.kv.push(format!(
            "instance={} timeout=true best_makespan={best}",
            entry.name
        ));
    }
    entry
}
