//! On-disk benchmark layout.
//!
//! A benchmark root holds `large/` for Large-TA and `bench/` for
//! Known-Optima, each divided into at least one sub-folder of `.data`
//! instance files so suites split naturally across workers or hosts.
//! Reports go to a `results/` directory beside them, overridable with the
//! `JSSP_RESULTS_DIR` environment variable.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

/// Name of the environment variable overriding the results directory.
pub const RESULTS_DIR_VAR: &str = "JSSP_RESULTS_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkKind {
    LargeTa,
    KnownOptima,
}

impl BenchmarkKind {
    /// Directory under the benchmark root holding this benchmark.
    pub fn dir_name(self) -> &'static str {
        match self {
            BenchmarkKind::LargeTa => "large",
            BenchmarkKind::KnownOptima => "bench",
        }
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchmarkKind::LargeTa => "large-ta",
            BenchmarkKind::KnownOptima => "known-optima",
        })
    }
}

impl FromStr for BenchmarkKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "large-ta" => Ok(BenchmarkKind::LargeTa),
            "known-optima" => Ok(BenchmarkKind::KnownOptima),
            other => Err(format!(
                "unknown benchmark {other:?}, expected large-ta or known-optima"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubFolder {
    pub name: String,
    /// Full paths of the `.data` files, lexicographic by file name.
    pub instances: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkTree {
    pub root: PathBuf,
    pub kind: BenchmarkKind,
    /// Lexicographic by name; never empty.
    pub subfolders: Vec<SubFolder>,
}

impl BenchmarkTree {
    pub fn subfolder(&self, name: &str) -> Option<&SubFolder> {
        self.subfolders.iter().find(|s| s.name == name)
    }

    pub fn instance_count(&self) -> usize {
        self.subfolders.iter().map(|s| s.instances.len()).sum()
    }

    /// All instance paths, sub-folder by sub-folder.
    pub fn all_instances(&self) -> impl Iterator<Item = &PathBuf> {
        self.subfolders.iter().flat_map(|s| s.instances.iter())
    }
}

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("benchmark directory {0} does not exist")]
    MissingBenchmarkDir(PathBuf),
    #[error("benchmark directory {0} holds no sub-folders; at least one is required")]
    NoSubFolders(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Enumerates `<root>/<large|bench>/<subfolder>/*.data` in stable
/// lexicographic order.
pub fn scan_benchmark_tree(root: &Path, kind: BenchmarkKind) -> Result<BenchmarkTree, TreeError> {
    let dir = root.join(kind.dir_name());
    if !dir.is_dir() {
        return Err(TreeError::MissingBenchmarkDir(dir));
    }
    let read = |path: &Path| {
        std::fs::read_dir(path).map_err(|source| TreeError::Io {
            path: path.to_path_buf(),
            source,
        })
    };
    let mut subfolders = Vec::new();
    for entry in read(&dir)? {
        let entry = entry.map_err(|source| TreeError::Io {
            path: dir.clone(),
            source,
        })?;
        if !entry.path().is_dir() {
            continue;
        }
        let mut instances = Vec::new();
        for file in read(&entry.path())? {
            let file = file.map_err(|source| TreeError::Io {
                path: entry.path(),
                source,
            })?;
            let path = file.path();
            if path.is_file() && path.extension().is_some_and(|e| e == "data") {
                instances.push(path);
            }
        }
        instances.sort();
        subfolders.push(SubFolder {
            name: entry.file_name().to_string_lossy().into_owned(),
            instances,
        });
    }
    subfolders.sort_by(|a, b| a.name.cmp(&b.name));
    if subfolders.is_empty() {
        return Err(TreeError::NoSubFolders(dir));
    }
    Ok(BenchmarkTree {
        root: root.to_path_buf(),
        kind,
        subfolders,
    })
}

/// Where reports belong: `$JSSP_RESULTS_DIR` when set, else
/// `<root>/results`.
pub fn results_dir(root: &Path) -> PathBuf {
    match std::env::var_os(RESULTS_DIR_VAR) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => root.join("results"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn touch(path: &Path) {
        fs::write(path, b"").unwrap();
    }

    #[test]
    fn kind_maps_to_directory_names() {
        assert_eq!(BenchmarkKind::LargeTa.dir_name(), "large");
        assert_eq!(BenchmarkKind::KnownOptima.dir_name(), "bench");
        assert_eq!("known-optima".parse(), Ok(BenchmarkKind::KnownOptima));
        assert_eq!(BenchmarkKind::LargeTa.to_string(), "large-ta");
        assert!("classic".parse::<BenchmarkKind>().is_err());
    }

    #[test]
    fn scans_subfolders_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        for sub in ["2", "1"] {
            fs::create_dir_all(root.join("large").join(sub)).unwrap();
        }
        touch(&root.join("large/1/b.data"));
        touch(&root.join("large/1/a.data"));
        touch(&root.join("large/2/c.data"));
        touch(&root.join("large/2/notes.txt"));
        touch(&root.join("large/stray.data"));

        let tree = scan_benchmark_tree(root, BenchmarkKind::LargeTa).unwrap();
        let names: Vec<&str> = tree.subfolders.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["1", "2"]);
        assert_eq!(tree.subfolders[0].instances[0].file_name().unwrap(), "a.data");
        assert_eq!(tree.subfolders[0].instances[1].file_name().unwrap(), "b.data");
        assert_eq!(tree.instance_count(), 3);
        assert!(tree.subfolder("2").is_some());
        assert!(tree.subfolder("3").is_none());
    }

    #[test]
    fn missing_and_empty_roots_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            scan_benchmark_tree(dir.path(), BenchmarkKind::KnownOptima),
            Err(TreeError::MissingBenchmarkDir(_))
        ));
        fs::create_dir_all(dir.path().join("bench")).unwrap();
        assert!(matches!(
            scan_benchmark_tree(dir.path(), BenchmarkKind::KnownOptima),
            Err(TreeError::NoSubFolders(_))
        ));
    }

    #[test]
    fn results_dir_defaults_beside_the_root() {
        assert_eq!(
            results_dir(Path::new("/tmp/suite")),
            PathBuf::from("/tmp/suite/results")
        );
    }
}
