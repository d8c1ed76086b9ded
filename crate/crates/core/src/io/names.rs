//! File naming conventions.
//!
//! Large-TA instances are named `tai_j<jobs>_m<machines>_<index>.data` and
//! Known-Optima instances `<long|short>-js-<makespan>-<machines>-<ops>-<index>.data`.
//! Writers always emit these names; readers may mine them for metadata but
//! never depend on them.

use std::path::{Path, PathBuf};

use crate::known_optima::LinkMode;
use crate::model::Time;

pub const DATA_EXTENSION: &str = "data";
pub const CERTIFICATE_EXTENSION: &str = "sol";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LargeTaMeta {
    pub jobs: usize,
    pub machines: usize,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownOptimaMeta {
    pub mode: LinkMode,
    pub makespan: Time,
    pub machines: usize,
    pub ops: usize,
    pub index: usize,
}

pub fn large_ta_name(jobs: usize, machines: usize, index: usize) -> String {
    format!("tai_j{jobs}_m{machines}_{index}.{DATA_EXTENSION}")
}

pub fn parse_large_ta_name(name: &str) -> Option<LargeTaMeta> {
    let stem = name.strip_suffix(".data").unwrap_or(name);
    let rest = stem.strip_prefix("tai_j")?;
    let mut parts = rest.split('_');
    let jobs = parts.next()?.parse().ok()?;
    let machines = parts.next()?.strip_prefix('m')?.parse().ok()?;
    let index = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(LargeTaMeta {
        jobs,
        machines,
        index,
    })
}

pub fn known_optima_name(
    mode: LinkMode,
    makespan: Time,
    machines: usize,
    ops: usize,
    index: usize,
) -> String {
    let prefix = match mode {
        LinkMode::ShortJobs => "short",
        LinkMode::LongJobs => "long",
    };
    format!("{prefix}-js-{makespan}-{machines}-{ops}-{index}.{DATA_EXTENSION}")
}

pub fn parse_known_optima_name(name: &str) -> Option<KnownOptimaMeta> {
    let stem = name.strip_suffix(".data").unwrap_or(name);
    let mut parts = stem.split('-');
    let mode = match parts.next()? {
        "short" => LinkMode::ShortJobs,
        "long" => LinkMode::LongJobs,
        _ => return None,
    };
    if parts.next()? != "js" {
        return None;
    }
    let makespan = parts.next()?.parse().ok()?;
    let machines = parts.next()?.parse().ok()?;
    let ops = parts.next()?.parse().ok()?;
    let index = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(KnownOptimaMeta {
        mode,
        makespan,
        machines,
        ops,
        index,
    })
}

/// The certificate sidecar sits beside its instance with the `.sol`
/// extension.
pub fn certificate_path(instance_path: &Path) -> PathBuf {
    instance_path.with_extension(CERTIFICATE_EXTENSION)
}
