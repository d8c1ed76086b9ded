use thiserror::Error;

/// A parse failure together with the 1-based line it was detected on.
/// Line 0 marks failures that precede reading, such as opening the file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: u64,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("not an integer: {0:?}")]
    NotAnInteger(String),
    #[error("file ends in the middle of the expected structure")]
    UnexpectedEof,
    #[error("line ends before all expected values")]
    UnexpectedEndOfLine,
    #[error("unexpected extra value on the line")]
    TrailingTokens,
    #[error("content after the final expected line")]
    TrailingContent,
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("machine id {found} outside the valid range for {machine_count} machines")]
    MachineOutOfRange { found: i64, machine_count: usize },
    #[error("machine {0} appears twice in one job")]
    DuplicateMachine(usize),
    #[error("duration {0} is not positive")]
    NonPositiveDuration(i64),
    #[error("job line does not end with the -1 -1 sentinel")]
    MissingSentinel,
    #[error("malformed -1 -1 sentinel")]
    BadSentinel,
    #[error("job line holds no operations")]
    EmptyJob,
    #[error("io error: {0}")]
    Io(String),
}
