//! Reader and writer for the rectangular Large-TA format.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use super::common::{decode_machine, open_error, read_header, write_instance};
use super::tokenizer::{LineEvent, Tokenizer};
use super::{MachineIndexing, ParseError, ParseErrorKind};
use crate::model::{Instance, InstanceKind, Job, Operation};

#[derive(Debug, Error)]
pub enum SerializeError {
    #[error("only rectangular instances can be written in the Large-TA format")]
    WrongKind,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parses a rectangular instance: `jobs machines` header, then per job one
/// line of exactly `machines` pairs visiting every machine once.
pub fn parse_large_ta<R: BufRead>(reader: R) -> Result<Instance, ParseError> {
    parse_large_ta_with(reader, MachineIndexing::ZeroBased)
}

pub fn parse_large_ta_with<R: BufRead>(
    reader: R,
    indexing: MachineIndexing,
) -> Result<Instance, ParseError> {
    let mut tok = Tokenizer::new(reader);
    let (job_count, machine_count) = read_header(&mut tok)?;
    let mut jobs = Vec::with_capacity(job_count);
    // Stamped with the job index, so one allocation detects duplicates
    // across all jobs.
    let mut seen = vec![usize::MAX; machine_count];
    for job_index in 0..job_count {
        let mut operations = Vec::with_capacity(machine_count);
        for _ in 0..machine_count {
            let raw = tok.require_int()?;
            let machine = decode_machine(&tok, raw, machine_count, indexing)?;
            if seen[machine] == job_index {
                return Err(tok.fail(ParseErrorKind::DuplicateMachine(machine)));
            }
            seen[machine] = job_index;
            let duration = tok.require_int()?;
            if duration < 1 {
                return Err(tok.fail(ParseErrorKind::NonPositiveDuration(duration)));
            }
            operations.push(Operation::new(machine, duration));
        }
        match tok.next_event()? {
            LineEvent::Int(_) => return Err(tok.fail(ParseErrorKind::TrailingTokens)),
            LineEvent::EndOfLine | LineEvent::EndOfFile => {}
        }
        jobs.push(Job::new(operations));
    }
    tok.expect_end()?;
    Ok(Instance::from_raw_parts(
        machine_count,
        jobs,
        InstanceKind::Rectangular,
        None,
    ))
}

pub fn parse_large_ta_file(path: &Path) -> Result<Instance, ParseError> {
    let file = File::open(path).map_err(|e| open_error(&e))?;
    parse_large_ta(BufReader::with_capacity(1 << 16, file))
}

/// Writes the exact generator layout: single spaces, `\n` endings, no
/// trailing whitespace. Only rectangular instances fit this format.
pub fn serialize_large_ta<W: Write>(instance: &Instance, writer: &mut W) -> Result<(), SerializeError> {
    if instance.kind() != InstanceKind::Rectangular {
        return Err(SerializeError::WrongKind);
    }
    write_instance(instance, writer, false)?;
    Ok(())
}

pub fn write_large_ta_file(path: &Path, instance: &Instance) -> Result<(), SerializeError> {
    let mut writer = BufWriter::with_capacity(1 << 16, File::create(path)?);
    serialize_large_ta(instance, &mut writer)?;
    writer.flush()?;
    Ok(())
}
