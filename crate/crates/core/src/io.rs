//! File formats, naming conventions, and the on-disk benchmark layout.
//!
//! Both instance formats share a `jobs machines` header line followed by one
//! line per job holding `machine duration` pairs. Large-TA lines carry
//! exactly one pair per machine; Known-Optima lines carry a variable number
//! of pairs and end with the `-1 -1` sentinel. Writers emit single spaces,
//! `\n` line endings, and no trailing whitespace, so files round-trip
//! byte-for-byte; readers additionally tolerate extra blanks and `\r\n`.

pub mod certificate;
pub mod known_optima;
pub mod large_ta;
pub mod names;
pub mod tokenizer;
pub mod tree;

mod common;
mod error;

pub use error::{ParseError, ParseErrorKind};
pub use tree::{scan_benchmark_tree, BenchmarkKind, BenchmarkTree, SubFolder, TreeError};

/// How machine ids in instance files are numbered. Generated files are
/// 0-based; the 1-based option reads foreign files whose ids start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MachineIndexing {
    #[default]
    ZeroBased,
    OneBased,
}
