//! Line-oriented N-Triples input.
//!
//! One statement per line: `<s> <p> <o> .` with IRIs in angle brackets,
//! blank nodes as `_:label`, and literals with optional `@lang` or
//! `^^<datatype>`. Blank lines and `#` comment lines are skipped; syntax
//! errors carry the 1-based physical line number.

use crate::term::{Iri, Literal, Term, Triple};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RdfError {
    #[error("syntax error at line {line}: {reason}")]
    Syntax { line: u64, reason: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A stream of triples in document order. Sources can be reopened so a
/// two-pass plan can read the origin again.
pub trait TripleSource {
    fn next_triple(&mut self) -> Result<Option<Triple>, RdfError>;
    fn reopen(&mut self) -> Result<(), RdfError>;
}

/// Streams triples from an N-Triples file, one buffered line at a time.
pub struct NtFileSource {
    path: PathBuf,
    reader: BufReader<File>,
    line: u64,
    buffer: String,
}

impl NtFileSource {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, RdfError> {
        let path = path.as_ref().to_path_buf();
        let reader = BufReader::new(File::open(&path)?);
        Ok(NtFileSource {
            path,
            reader,
            line: 0,
            buffer: String::new(),
        })
    }

    /// The current 1-based line number.
    pub fn position(&self) -> u64 {
        self.line
    }
}

impl TripleSource for NtFileSource {
    fn next_triple(&mut self) -> Result<Option<Triple>, RdfError> {
        loop {
            self.buffer.clear();
            let read = self.reader.read_line(&mut self.buffer)?;
            if read == 0 {
                return Ok(None);
            }
            self.line += 1;
            match parse_line(&self.buffer, self.line)? {
                Some(triple) => return Ok(Some(triple)),
                None => continue,
            }
        }
    }

    fn reopen(&mut self) -> Result<(), RdfError> {
        self.reader = BufReader::new(File::open(&self.path)?);
        self.line = 0;
        Ok(())
    }
}

/// An in-memory source, used for tests and for spooling non-seekable
/// input when a second pass is needed.
#[derive(Debug, Clone)]
pub struct MemorySource {
    triples: Vec<Triple>,
    pos: usize,
}

impl MemorySource {
    pub fn new(triples: Vec<Triple>) -> Self {
        MemorySource { triples, pos: 0 }
    }
}

impl TripleSource for MemorySource {
    fn next_triple(&mut self) -> Result<Option<Triple>, RdfError> {
        let triple = self.triples.get(self.pos).cloned();
        if triple.is_some() {
            self.pos += 1;
        }
        Ok(triple)
    }

    fn reopen(&mut self) -> Result<(), RdfError> {
        self.pos = 0;
        Ok(())
    }
}

/// Parses a whole N-Triples document held in memory.
pub fn parse_ntriples(text: &str) -> Result<Vec<Triple>, RdfError> {
    let mut triples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(triple) = parse_line(line, i as u64 + 1)? {
            triples.push(triple);
        }
    }
    Ok(triples)
}

/// Parses one physical line; `None` for blank and comment lines.
pub fn parse_line(line: &str, line_number: u64) -> Result<Option<Triple>, RdfError> {
    let mut scanner = LineScanner {
        chars: line.chars().collect(),
        pos: 0,
        line: line_number,
    };
    scanner.skip_ws();
    if scanner.at_end() || scanner.peek() == Some('#') {
        return Ok(None);
    }

    let subject = match scanner.parse_term()? {
        Term::Literal(_) => return Err(scanner.error("subject must be an IRI or blank node")),
        term => term,
    };
    scanner.skip_ws();
    let predicate = match scanner.parse_term()? {
        Term::Iri(iri) => iri,
        _ => return Err(scanner.error("predicate must be an IRI")),
    };
    scanner.skip_ws();
    if scanner.at_end() || scanner.peek() == Some('.') {
        return Err(scanner.error("missing object term"));
    }
    let object = scanner.parse_term()?;
    scanner.skip_ws();
    if scanner.peek() != Some('.') {
        return Err(scanner.error("expected '.' after object"));
    }
    scanner.bump();
    scanner.skip_ws();
    if !scanner.at_end() && scanner.peek() != Some('#') {
        return Err(scanner.error("unexpected content after '.'"));
    }
    Ok(Some(Triple::new(subject, predicate, object)))
}

struct LineScanner {
    chars: Vec<char>,
    pos: usize,
    line: u64,
}

impl LineScanner {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            self.bump();
        }
    }

    fn error(&self, reason: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line: self.line,
            reason: reason.into(),
        }
    }

    fn parse_term(&mut self) -> Result<Term, RdfError> {
        match self.peek() {
            Some('<') => {
                self.bump();
                let mut iri = String::new();
                loop {
                    match self.bump() {
                        Some('>') => return Ok(Term::Iri(Iri::new(iri))),
                        Some(c) if c == ' ' || c == '\t' => {
                            return Err(self.error("whitespace inside IRI"))
                        }
                        Some(c) => iri.push(c),
                        None => return Err(self.error("unterminated IRI")),
                    }
                }
            }
            Some('_') => {
                self.bump();
                if self.bump() != Some(':') {
                    return Err(self.error("expected ':' after '_' in blank node"));
                }
                let mut label = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
                {
                    label.push(self.bump().unwrap());
                }
                // A trailing dot belongs to the statement, not the label.
                while label.ends_with('.') {
                    label.pop();
                    self.pos -= 1;
                }
                if label.is_empty() {
                    return Err(self.error("empty blank node label"));
                }
                Ok(Term::Blank(label))
            }
            Some('"') => {
                self.bump();
                let lexical = self.parse_string_body()?;
                match self.peek() {
                    Some('@') => {
                        self.bump();
                        let mut tag = String::new();
                        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-')
                        {
                            tag.push(self.bump().unwrap());
                        }
                        if tag.is_empty() {
                            return Err(self.error("empty language tag"));
                        }
                        Ok(Term::Literal(Literal::with_lang(lexical, tag)))
                    }
                    Some('^') => {
                        self.bump();
                        if self.bump() != Some('^') {
                            return Err(self.error("expected '^^' before datatype"));
                        }
                        match self.parse_term()? {
                            Term::Iri(datatype) => {
                                Ok(Term::Literal(Literal::typed(lexical, datatype)))
                            }
                            _ => Err(self.error("datatype must be an IRI")),
                        }
                    }
                    _ => Ok(Term::Literal(Literal::plain(lexical))),
                }
            }
            Some(other) => Err(self.error(format!("unexpected character '{other}'"))),
            None => Err(self.error("unexpected end of line")),
        }
    }

    fn parse_string_body(&mut self) -> Result<String, RdfError> {
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('t') => out.push('\t'),
                    Some('b') => out.push('\u{8}'),
                    Some('n') => out.push('\n'),
                    Some('r') => out.push('\r'),
                    Some('f') => out.push('\u{c}'),
                    Some('"') => out.push('"'),
                    Some('\'') => out.push('\''),
                    Some('\\') => out.push('\\'),
                    Some('u') => out.push(self.parse_unicode_escape(4)?),
                    Some('U') => out.push(self.parse_unicode_escape(8)?),
                    Some(other) => return Err(self.error(format!("unknown escape '\\{other}'"))),
                    None => return Err(self.error("unterminated string")),
                },
                Some(c) => out.push(c),
                None => return Err(self.error("unterminated string")),
            }
        }
    }

    fn parse_unicode_escape(&mut self, digits: usize) -> Result<char, RdfError> {
        let mut value = 0u32;
        for _ in 0..digits {
            let c = self
                .bump()
                .ok_or_else(|| self.error("unterminated unicode escape"))?;
            let digit = c
                .to_digit(16)
                .ok_or_else(|| self.error("invalid hex digit in unicode escape"))?;
            value = value * 16 + digit;
        }
        char::from_u32(value).ok_or_else(|| self.error("invalid unicode code point"))
    }
}
