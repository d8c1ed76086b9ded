//! Reader and writer for the sentinel-terminated Known-Optima format.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::common::{decode_machine, open_error, read_header, write_instance};
use super::tokenizer::{LineEvent, Tokenizer};
use super::{names, MachineIndexing, ParseError, ParseErrorKind};
use crate::model::{Instance, InstanceKind, Job, Operation};

/// Parses a free-form instance: `jobs machines` header, then per job one
/// line of `machine duration` pairs closed by the `-1 -1` sentinel.
pub fn parse_known_optima<R: BufRead>(reader: R) -> Result<Instance, ParseError> {
    parse_known_optima_with(reader, MachineIndexing::ZeroBased)
}

pub fn parse_known_optima_with<R: BufRead>(
    reader: R,
    indexing: MachineIndexing,
) -> Result<Instance, ParseError> {
    let mut tok = Tokenizer::new(reader);
    let (job_count, machine_count) = read_header(&mut tok)?;
    let mut jobs = Vec::with_capacity(job_count);
    for _ in 0..job_count {
        let mut operations = Vec::new();
        loop {
            match tok.next_event()? {
                LineEvent::Int(-1) => {
                    match tok.next_event()? {
                        LineEvent::Int(-1) => {}
                        _ => return Err(tok.fail(ParseErrorKind::BadSentinel)),
                    }
                    match tok.next_event()? {
                        LineEvent::Int(_) => {
                            return Err(tok.fail(ParseErrorKind::TrailingTokens))
                        }
                        LineEvent::EndOfLine | LineEvent::EndOfFile => {}
                    }
                    break;
                }
                LineEvent::Int(raw) => {
                    let machine = decode_machine(&tok, raw, machine_count, indexing)?;
                    let duration = tok.require_int()?;
                    if duration < 1 {
                        return Err(tok.fail(ParseErrorKind::NonPositiveDuration(duration)));
                    }
                    operations.push(Operation::new(machine, duration));
                }
                LineEvent::EndOfLine => return Err(tok.fail(ParseErrorKind::MissingSentinel)),
                LineEvent::EndOfFile => return Err(tok.fail(ParseErrorKind::UnexpectedEof)),
            }
        }
        if operations.is_empty() {
            return Err(tok.fail(ParseErrorKind::EmptyJob));
        }
        jobs.push(Job::new(operations));
    }
    tok.expect_end()?;
    Ok(Instance::from_raw_parts(
        machine_count,
        jobs,
        InstanceKind::FreeForm,
        None,
    ))
}

/// Parses the file and, when its name follows the
/// `<long|short>-js-<makespan>-...` convention, records the makespan from the
/// name as the instance's known optimum. The name is never required.
pub fn parse_known_optima_file(path: &Path) -> Result<Instance, ParseError> {
    let file = File::open(path).map_err(|e| open_error(&e))?;
    let instance = parse_known_optima(BufReader::with_capacity(1 << 16, file))?;
    let meta = path
        .file_name()
        .and_then(|n| n.to_str())
        .and_then(names::parse_known_optima_name);
    Ok(match meta {
        Some(meta) => instance.with_known_optimum(meta.makespan),
        None => instance,
    })
}

/// Writes the exact generator layout; any instance kind fits this format.
pub fn serialize_known_optima<W: Write>(
    instance: &Instance,
    writer: &mut W,
) -> std::io::Result<()> {
    write_instance(instance, writer, true)
}

pub fn write_known_optima_file(path: &Path, instance: &Instance) -> std::io::Result<()> {
    let mut writer = BufWriter::with_capacity(1 << 16, File::create(path)?);
    serialize_known_optima(instance, &mut writer)?;
    writer.flush()
}
