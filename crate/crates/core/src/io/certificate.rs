//! Sidecar format for solution certificates.
//!
//! A certificate lists, per job line, the start time of each operation in
//! job order, space-separated. It lives beside its instance file with the
//! `.sol` extension (see [`super::names::certificate_path`]). The pairing
//! with an instance supplies the shape, so reading checks the line and
//! value counts against it.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::common::open_error;
use super::tokenizer::{LineEvent, Tokenizer};
use super::{ParseError, ParseErrorKind};
use crate::model::{Instance, Schedule};

pub fn write_certificate<W: Write>(schedule: &Schedule, writer: &mut W) -> std::io::Result<()> {
    use std::fmt::Write as _;

    let mut line = String::new();
    for row in schedule.starts() {
        line.clear();
        for (i, start) in row.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{start}");
        }
        line.push('\n');
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn write_certificate_file(path: &Path, schedule: &Schedule) -> std::io::Result<()> {
    let mut writer = BufWriter::with_capacity(1 << 16, File::create(path)?);
    write_certificate(schedule, &mut writer)?;
    writer.flush()
}

/// Reads a certificate shaped by `instance`: one line per job, one start per
/// operation. Shape mismatches are reported with their line.
pub fn read_certificate<R: BufRead>(
    reader: R,
    instance: &Instance,
) -> Result<Schedule, ParseError> {
    let mut tok = Tokenizer::new(reader);
    let mut rows = Vec::with_capacity(instance.job_count());
    for job in instance.jobs() {
        let mut row = Vec::with_capacity(job.len());
        for _ in 0..job.len() {
            row.push(tok.require_int()?);
        }
        match tok.next_event()? {
            LineEvent::Int(_) => return Err(tok.fail(ParseErrorKind::TrailingTokens)),
            LineEvent::EndOfLine | LineEvent::EndOfFile => {}
        }
        rows.push(row);
    }
    tok.expect_end()?;
    Ok(Schedule::new(rows))
}

pub fn read_certificate_file(path: &Path, instance: &Instance) -> Result<Schedule, ParseError> {
    let file = File::open(path).map_err(|e| open_error(&e))?;
    read_certificate(BufReader::with_capacity(1 << 16, file), instance)
}
