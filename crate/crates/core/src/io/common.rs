//! Pieces shared by the two instance formats.

use std::io::{BufRead, Write};

use super::tokenizer::{LineEvent, Tokenizer};
use super::{MachineIndexing, ParseError, ParseErrorKind};
use crate::model::Instance;

/// Upper bound on header counts, guarding allocations against absurd or
/// corrupted headers before any job line is read.
pub(super) const MAX_DIMENSION: usize = 10_000_000;

/// Reads the `jobs machines` header line.
pub(super) fn read_header<R: BufRead>(tok: &mut Tokenizer<R>) -> Result<(usize, usize), ParseError> {
    let job_count = header_count(tok, "job count")?;
    let machine_count = header_count(tok, "machine count")?;
    match tok.next_event()? {
        LineEvent::Int(_) => Err(tok.fail(ParseErrorKind::TrailingTokens)),
        LineEvent::EndOfLine | LineEvent::EndOfFile => Ok((job_count, machine_count)),
    }
}

fn header_count<R: BufRead>(tok: &mut Tokenizer<R>, what: &str) -> Result<usize, ParseError> {
    match tok.next_event()? {
        LineEvent::Int(v) if (1..=MAX_DIMENSION as i64).contains(&v) => Ok(v as usize),
        LineEvent::Int(v) => Err(tok.fail(ParseErrorKind::BadHeader(format!(
            "{what} {v} outside 1..={MAX_DIMENSION}"
        )))),
        LineEvent::EndOfLine | LineEvent::EndOfFile => {
            Err(tok.fail(ParseErrorKind::BadHeader(format!("missing {what}"))))
        }
    }
}

pub(super) fn decode_machine<R: BufRead>(
    tok: &Tokenizer<R>,
    raw: i64,
    machine_count: usize,
    indexing: MachineIndexing,
) -> Result<usize, ParseError> {
    match indexing {
        MachineIndexing::ZeroBased if (0..machine_count as i64).contains(&raw) => Ok(raw as usize),
        MachineIndexing::OneBased if (1..=machine_count as i64).contains(&raw) => {
            Ok((raw - 1) as usize)
        }
        _ => Err(tok.fail(ParseErrorKind::MachineOutOfRange {
            found: raw,
            machine_count,
        })),
    }
}

/// Writes the shared layout: header, then per job a line of
/// space-separated `machine duration` pairs, with the Known-Optima
/// sentinel appended on request.
pub(super) fn write_instance<W: Write>(
    instance: &Instance,
    writer: &mut W,
    sentinel: bool,
) -> std::io::Result<()> {
    use std::fmt::Write as _;

    let mut line = String::new();
    let _ = write!(line, "{} {}\n", instance.job_count(), instance.machine_count());
    writer.write_all(line.as_bytes())?;
    for job in instance.jobs() {
        line.clear();
        for (i, op) in job.operations.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{} {}", op.machine, op.duration);
        }
        if sentinel {
            line.push_str(" -1 -1");
        }
        line.push('\n');
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub(super) fn open_error(e: &std::io::Error) -> ParseError {
    ParseError {
        line: 0,
        kind: ParseErrorKind::Io(e.to_string()),
    }
}
