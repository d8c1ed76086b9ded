//! Streaming integer tokenizer with line tracking.
//!
//! Reads directly from the underlying buffer without materializing lines, so
//! memory stays constant no matter how long a line grows; million-operation
//! job lines are the norm in the larger suites.

use std::io::BufRead;

use super::{ParseError, ParseErrorKind};

/// What [`Tokenizer::next_event`] found next on the current line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineEvent {
    Int(i64),
    /// The line ended; the newline has been consumed.
    EndOfLine,
    EndOfFile,
}

pub struct Tokenizer<R> {
    reader: R,
    /// 1-based line number of the next unread byte.
    line: u64,
    /// Line number of the most recently returned event; errors point here.
    event_line: u64,
    token: Vec<u8>,
}

impl<R: BufRead> Tokenizer<R> {
    pub fn new(reader: R) -> Tokenizer<R> {
        Tokenizer {
            reader,
            line: 1,
            event_line: 1,
            token: Vec::with_capacity(32),
        }
    }

    /// Line of the last event: the line an integer was read from, or the
    /// line that just ended.
    pub fn line(&self) -> u64 {
        self.event_line
    }

    /// An error anchored at the last event's line.
    pub fn fail(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.event_line,
            kind,
        }
    }

    fn peek(&mut self) -> Result<Option<u8>, ParseError> {
        match self.reader.fill_buf() {
            Ok(buf) => Ok(buf.first().copied()),
            Err(e) => Err(ParseError {
                line: self.line,
                kind: ParseErrorKind::Io(e.to_string()),
            }),
        }
    }

    fn bump(&mut self, byte: u8) {
        self.reader.consume(1);
        if byte == b'\n' {
            self.line += 1;
        }
    }

    /// Advances past spaces, tabs, and carriage returns to the next integer,
    /// line end, or file end.
    pub fn next_event(&mut self) -> Result<LineEvent, ParseError> {
        loop {
            match self.peek()? {
                None => {
                    self.event_line = self.line;
                    return Ok(LineEvent::EndOfFile);
                }
                Some(b'\n') => {
                    self.event_line = self.line;
                    self.bump(b'\n');
                    return Ok(LineEvent::EndOfLine);
                }
                Some(b @ (b' ' | b'\t' | b'\r')) => self.bump(b),
                Some(_) => break,
            }
        }
        self.event_line = self.line;
        self.token.clear();
        while let Some(b) = self.peek()? {
            if matches!(b, b' ' | b'\t' | b'\r' | b'\n') {
                break;
            }
            self.token.push(b);
            self.bump(b);
        }
        match std::str::from_utf8(&self.token).ok().and_then(|s| s.parse().ok()) {
            Some(value) => Ok(LineEvent::Int(value)),
            None => {
                let shown: String = String::from_utf8_lossy(&self.token)
                    .chars()
                    .take(40)
                    .collect();
                Err(self.fail(ParseErrorKind::NotAnInteger(shown)))
            }
        }
    }

    /// The next integer, which must appear before the line ends.
    pub fn require_int(&mut self) -> Result<i64, ParseError> {
        match self.next_event()? {
            LineEvent::Int(value) => Ok(value),
            LineEvent::EndOfLine => Err(self.fail(ParseErrorKind::UnexpectedEndOfLine)),
            LineEvent::EndOfFile => Err(self.fail(ParseErrorKind::UnexpectedEof)),
        }
    }

    /// Consumes trailing whitespace and errors if any further value exists.
    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        loop {
            match self.next_event()? {
                LineEvent::Int(_) => return Err(self.fail(ParseErrorKind::TrailingContent)),
                LineEvent::EndOfLine => continue,
                LineEvent::EndOfFile => return Ok(()),
            }
        }
    }
}
