//! In-memory RDF graphs with Turtle output and a Turtle reader.
//!
//! The writer keeps blank node labels explicit so a written graph reparses
//! to the same statement multiset, label for label. The reader additionally
//! accepts anonymous nodes `[ .. ]` and collections `( .. )`, assigning
//! fresh `genid..` labels that never collide with labels in the document.

use crate::ntriples::RdfError;
use crate::rational::Rational;
use crate::term::{Iri, Literal, Term, Triple};
use crate::vocab;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Prefix declarations plus an ordered triple list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    prefixes: Vec<(String, String)>,
    triples: Vec<Triple>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a prefix; a repeated prefix name replaces the old base.
    pub fn add_prefix(&mut self, prefix: impl Into<String>, base: impl Into<String>) {
        let prefix = prefix.into();
        let base = base.into();
        if let Some(entry) = self.prefixes.iter_mut().find(|(p, _)| *p == prefix) {
            entry.1 = base;
        } else {
            self.prefixes.push((prefix, base));
        }
    }

    pub fn prefixes(&self) -> &[(String, String)] {
        &self.prefixes
    }

    pub fn insert(&mut self, triple: Triple) {
        self.triples.push(triple);
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Objects of `(subject, predicate, ?o)` in statement order.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &str) -> Vec<&'a Term> {
        self.triples
            .iter()
            .filter(|t| &t.subject == subject && t.predicate.as_str() == predicate)
            .map(|t| &t.object)
            .collect()
    }

    /// Subjects asserted to have `rdf:type <class>`, in statement order.
    pub fn subjects_of_type<'a>(&'a self, class: &str) -> Vec<&'a Term> {
        self.triples
            .iter()
            .filter(|t| {
                t.predicate.as_str() == vocab::RDF_TYPE
                    && t.object.as_iri().is_some_and(|iri| iri.as_str() == class)
            })
            .map(|t| &t.subject)
            .collect()
    }

    pub fn has_type(&self, node: &Term, class: &str) -> bool {
        self.objects(node, vocab::RDF_TYPE)
            .iter()
            .any(|o| o.as_iri().is_some_and(|iri| iri.as_str() == class))
    }

    /// Serializes as Turtle, one property line per statement, grouped by
    /// subject in first-appearance order.
    pub fn to_turtle(&self) -> String {
        let mut out = String::new();
        for (prefix, base) in &self.prefixes {
            let _ = writeln!(out, "@prefix {prefix}: <{base}> .");
        }
        if !self.prefixes.is_empty() && !self.triples.is_empty() {
            out.push('\n');
        }

        let mut order: Vec<&Term> = Vec::new();
        let mut by_subject: HashMap<&Term, Vec<&Triple>> = HashMap::new();
        for triple in &self.triples {
            let entry = by_subject.entry(&triple.subject).or_default();
            if entry.is_empty() {
                order.push(&triple.subject);
            }
            entry.push(triple);
        }
        for subject in order {
            let rows = &by_subject[subject];
            let subject_text = self.render_term(subject);
            for (i, triple) in rows.iter().enumerate() {
                let verb = if triple.predicate.as_str() == vocab::RDF_TYPE {
                    "a".to_owned()
                } else {
                    self.render_iri(&triple.predicate)
                };
                let lead = if i == 0 {
                    subject_text.clone()
                } else {
                    " ".repeat(subject_text.chars().count())
                };
                let tail = if i + 1 == rows.len() { " ." } else { " ;" };
                let _ = writeln!(
                    out,
                    "{lead} {verb} {}{tail}",
                    self.render_term(&triple.object)
                );
            }
            out.push('\n');
        }
        if out.ends_with("\n\n") {
            out.pop();
        }
        out
    }

    fn render_iri(&self, iri: &Iri) -> String {
        let text = iri.as_str();
        for (prefix, base) in &self.prefixes {
            if let Some(local) = text.strip_prefix(base.as_str()) {
                if is_safe_local(local) {
                    return format!("{prefix}:{local}");
                }
            }
        }
        format!("<{text}>")
    }

    fn render_term(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.render_iri(iri),
            Term::Blank(label) => format!("_:{label}"),
            Term::Literal(lit) => self.render_literal(lit),
        }
    }

    fn render_literal(&self, lit: &Literal) -> String {
        if let Some(datatype) = &lit.datatype {
            if datatype.as_str() == vocab::XSD_INTEGER && is_integer_lexical(&lit.lexical) {
                return lit.lexical.clone();
            }
            if datatype.as_str() == vocab::XSD_DECIMAL && is_decimal_lexical(&lit.lexical) {
                return lit.lexical.clone();
            }
        }
        let mut out = quote_turtle(&lit.lexical);
        if let Some(lang) = &lit.lang {
            let _ = write!(out, "@{lang}");
        } else if let Some(datatype) = &lit.datatype {
            let _ = write!(out, "^^{}", self.render_iri(datatype));
        }
        out
    }

    /// Parses a Turtle document.
    pub fn from_turtle(text: &str) -> Result<Graph, RdfError> {
        TtlParser::new(text)?.parse()
    }
}

pub(crate) fn quote_turtle(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}

fn is_safe_local(local: &str) -> bool {
    local
        .bytes()
        .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

fn is_integer_lexical(text: &str) -> bool {
    let body = text.strip_prefix('-').unwrap_or(text);
    !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(text: &str) -> bool {
    let body = text.strip_prefix('-').unwrap_or(text);
    match body.split_once('.') {
        Some((i, f)) => {
            !i.is_empty()
                && !f.is_empty()
                && i.bytes().all(|b| b.is_ascii_digit())
                && f.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

// ---------------------------------------------------------------------
// Turtle reader

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    PName(String, String),
    Blank(String),
    Str(String),
    Lang(String),
    DtSep,
    Number(String),
    PrefixDecl,
    KeywordA,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semicolon,
    Comma,
    Dot,
}

struct TtlParser {
    tokens: Vec<(Tok, u64)>,
    pos: usize,
    prefixes: Vec<(String, String)>,
    prefix_map: HashMap<String, String>,
    triples: Vec<Triple>,
    anon_counter: usize,
}

// Interim prefix for generated labels; '\u{1}' cannot appear in parsed
// labels, so renaming at the end cannot capture document labels.
const ANON_MARK: char = '\u{1}';

impl TtlParser {
    fn new(text: &str) -> Result<Self, RdfError> {
        Ok(TtlParser {
            tokens: scan_turtle(text)?,
            pos: 0,
            prefixes: Vec::new(),
            prefix_map: HashMap::new(),
            triples: Vec::new(),
            anon_counter: 0,
        })
    }

    fn parse(mut self) -> Result<Graph, RdfError> {
        while self.pos < self.tokens.len() {
            if matches!(self.peek(), Some(Tok::PrefixDecl)) {
                self.parse_prefix()?;
            } else {
                self.parse_statement()?;
            }
        }
        let triples = self.rename_anon_labels();
        Ok(Graph {
            prefixes: self.prefixes,
            triples,
        })
    }

    fn line(&self) -> u64 {
        self.tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map(|(_, l)| *l)
            .unwrap_or(1)
    }

    fn error(&self, reason: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line: self.line(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), RdfError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn parse_prefix(&mut self) -> Result<(), RdfError> {
        self.pos += 1;
        let (prefix, local) = match self.next() {
            Some(Tok::PName(p, l)) => (p, l),
            _ => return Err(self.error("expected prefix name after @prefix")),
        };
        if !local.is_empty() {
            return Err(self.error("prefix declaration must end with ':'"));
        }
        let base = match self.next() {
            Some(Tok::Iri(iri)) => iri,
            _ => return Err(self.error("expected IRI in @prefix")),
        };
        self.expect(Tok::Dot, "'.' after @prefix")?;
        self.prefix_map.insert(prefix.clone(), base.clone());
        if let Some(entry) = self.prefixes.iter_mut().find(|(p, _)| *p == prefix) {
            entry.1 = base;
        } else {
            self.prefixes.push((prefix, base));
        }
        Ok(())
    }

    fn parse_statement(&mut self) -> Result<(), RdfError> {
        let from_brackets = matches!(self.peek(), Some(Tok::LBracket));
        let subject = self.parse_node()?;
        if matches!(&subject, Term::Literal(_)) {
            return Err(self.error("literal cannot be a subject"));
        }
        if from_brackets && self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
            return Ok(());
        }
        self.parse_predicate_object_list(&subject, false)?;
        self.expect(Tok::Dot, "'.' at end of statement")
    }

    fn parse_predicate_object_list(
        &mut self,
        subject: &Term,
        in_brackets: bool,
    ) -> Result<(), RdfError> {
        loop {
            let predicate = match self.next() {
                Some(Tok::KeywordA) => Iri::new(vocab::RDF_TYPE),
                Some(Tok::Iri(iri)) => Iri::new(iri),
                Some(Tok::PName(p, l)) => Iri::new(self.resolve(&p, &l)?),
                _ => return Err(self.error("expected a predicate")),
            };
            loop {
                let object = self.parse_node()?;
                self.triples
                    .push(Triple::new(subject.clone(), predicate.clone(), object));
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            if self.peek() == Some(&Tok::Semicolon) {
                self.pos += 1;
                // allow a trailing semicolon
                let done = match self.peek() {
                    Some(Tok::Dot) => true,
                    Some(Tok::RBracket) if in_brackets => true,
                    None => true,
                    _ => false,
                };
                if done {
                    return Ok(());
                }
            } else {
                return Ok(());
            }
        }
    }

    fn parse_node(&mut self) -> Result<Term, RdfError> {
        match self.next() {
            Some(Tok::Iri(iri)) => Ok(Term::Iri(Iri::new(iri))),
            Some(Tok::PName(p, l)) => Ok(Term::Iri(Iri::new(self.resolve(&p, &l)?))),
            Some(Tok::Blank(label)) => Ok(Term::Blank(label)),
            Some(Tok::LBracket) => {
                let node = self.fresh_anon();
                if self.peek() == Some(&Tok::RBracket) {
                    self.pos += 1;
                    return Ok(node);
                }
                self.parse_predicate_object_list(&node, true)?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(node)
            }
            Some(Tok::LParen) => {
                let mut items = Vec::new();
                while self.peek() != Some(&Tok::RParen) {
                    if self.peek().is_none() {
                        return Err(self.error("unterminated collection"));
                    }
                    items.push(self.parse_node()?);
                }
                self.pos += 1;
                Ok(self.build_list(items))
            }
            Some(Tok::Str(lexical)) => match self.peek() {
                Some(Tok::Lang(_)) => {
                    let Some(Tok::Lang(tag)) = self.next() else {
                        unreachable!()
                    };
                    Ok(Term::Literal(Literal::with_lang(lexical, tag)))
                }
                Some(Tok::DtSep) => {
                    self.pos += 1;
                    let datatype = match self.next() {
                        Some(Tok::Iri(iri)) => Iri::new(iri),
                        Some(Tok::PName(p, l)) => Iri::new(self.resolve(&p, &l)?),
                        _ => return Err(self.error("expected datatype IRI after '^^'")),
                    };
                    Ok(Term::Literal(Literal::typed(lexical, datatype)))
                }
                _ => Ok(Term::Literal(Literal::plain(lexical))),
            },
            Some(Tok::Number(text)) => {
                let datatype = if text.contains('.') {
                    vocab::XSD_DECIMAL
                } else {
                    vocab::XSD_INTEGER
                };
                if Rational::parse_decimal(&text).is_none() {
                    return Err(self.error(format!("malformed number '{text}'")));
                }
                Ok(Term::Literal(Literal::typed(text, Iri::new(datatype))))
            }
            _ => Err(self.error("expected an RDF term")),
        }
    }

    fn build_list(&mut self, items: Vec<Term>) -> Term {
        if items.is_empty() {
            return Term::iri(vocab::RDF_NIL);
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh_anon()).collect();
        for (i, item) in items.into_iter().enumerate() {
            self.triples.push(Triple::new(
                nodes[i].clone(),
                Iri::new(vocab::RDF_FIRST),
                item,
            ));
            let rest = nodes
                .get(i + 1)
                .cloned()
                .unwrap_or_else(|| Term::iri(vocab::RDF_NIL));
            self.triples.push(Triple::new(
                nodes[i].clone(),
                Iri::new(vocab::RDF_REST),
                rest,
            ));
        }
        nodes.into_iter().next().unwrap()
    }

    fn fresh_anon(&mut self) -> Term {
        let label = format!("{ANON_MARK}{}", self.anon_counter);
        self.anon_counter += 1;
        Term::Blank(label)
    }

    fn resolve(&self, prefix: &str, local: &str) -> Result<String, RdfError> {
        match self.prefix_map.get(prefix) {
            Some(base) => Ok(format!("{base}{local}")),
            None => Err(self.error(format!("undeclared prefix '{prefix}:'"))),
        }
    }

    /// Replaces interim anonymous labels with `genid<n>` labels that do
    /// not collide with labels appearing in the document.
    fn rename_anon_labels(&mut self) -> Vec<Triple> {
        let mut used: Vec<String> = Vec::new();
        for t in &self.triples {
            for term in [&t.subject, &t.object] {
                if let Term::Blank(label) = term {
                    if !label.starts_with(ANON_MARK) {
                        used.push(label.clone());
                    }
                }
            }
        }
        let mut mapping: HashMap<String, String> = HashMap::new();
        let mut next = 0usize;
        let mut rename = |label: &str, mapping: &mut HashMap<String, String>| -> String {
            if let Some(new) = mapping.get(label) {
                return new.clone();
            }
            let fresh = loop {
                let candidate = format!("genid{next}");
                next += 1;
                if !used.contains(&candidate) {
                    break candidate;
                }
            };
            mapping.insert(label.to_owned(), fresh.clone());
            fresh
        };
        self.triples
            .drain(..)
            .map(|mut t| {
                if let Term::Blank(label) = &t.subject {
                    if label.starts_with(ANON_MARK) {
                        t.subject = Term::Blank(rename(label, &mut mapping));
                    }
                }
                if let Term::Blank(label) = &t.object {
                    if label.starts_with(ANON_MARK) {
                        t.object = Term::Blank(rename(label, &mut mapping));
                    }
                }
                t
            })
            .collect()
    }
}

fn scan_turtle(text: &str) -> Result<Vec<(Tok, u64)>, RdfError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let mut line = 1u64;
    let mut tokens: Vec<(Tok, u64)> = Vec::new();

    let err = |line: u64, reason: String| RdfError::Syntax { line, reason };

    while pos < chars.len() {
        let c = chars[pos];
        match c {
            '\n' => {
                line += 1;
                pos += 1;
            }
            c if c.is_whitespace() => pos += 1,
            '#' => {
                while pos < chars.len() && chars[pos] != '\n' {
                    pos += 1;
                }
            }
            '<' => {
                pos += 1;
                let mut iri = String::new();
                loop {
                    match chars.get(pos) {
                        Some('>') => {
                            pos += 1;
                            break;
                        }
                        Some('\n') | None => return Err(err(line, "unterminated IRI".into())),
                        Some(&c) => {
                            iri.push(c);
                            pos += 1;
                        }
                    }
                }
                tokens.push((Tok::Iri(iri), line));
            }
            '"' => {
                pos += 1;
                let mut out = String::new();
                loop {
                    match chars.get(pos) {
                        Some('"') => {
                            pos += 1;
                            break;
                        }
                        Some('\\') => {
                            pos += 1;
                            match chars.get(pos) {
                                Some('t') => out.push('\t'),
                                Some('n') => out.push('\n'),
                                Some('r') => out.push('\r'),
                                Some('b') => out.push('\u{8}'),
                                Some('f') => out.push('\u{c}'),
                                Some('"') => out.push('"'),
                                Some('\'') => out.push('\''),
                                Some('\\') => out.push('\\'),
                                Some(&u @ ('u' | 'U')) => {
                                    let width = if u == 'u' { 4 } else { 8 };
                                    let mut value = 0u32;
                                    for _ in 0..width {
                                        pos += 1;
                                        let digit = chars
                                            .get(pos)
                                            .and_then(|c| c.to_digit(16))
                                            .ok_or_else(|| {
                                                err(line, "bad unicode escape".into())
                                            })?;
                                        value = value * 16 + digit;
                                    }
                                    out.push(
                                        char::from_u32(value).ok_or_else(|| {
                                            err(line, "invalid code point".into())
                                        })?,
                                    );
                                }
                                Some(&other) => {
                                    return Err(err(line, format!("unknown escape '\\{other}'")))
                                }
                                None => return Err(err(line, "unterminated string".into())),
                            }
                            pos += 1;
                        }
                        Some('\n') | None => return Err(err(line, "unterminated string".into())),
                        Some(&c) => {
                            out.push(c);
                            pos += 1;
                        }
                    }
                }
                tokens.push((Tok::Str(out), line));
            }
            '@' => {
                pos += 1;
                let mut word = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '-'))
                {
                    word.push(chars[pos]);
                    pos += 1;
                }
                if matches!(tokens.last(), Some((Tok::Str(_), _))) {
                    if word.is_empty() {
                        return Err(err(line, "empty language tag".into()));
                    }
                    tokens.push((Tok::Lang(word), line));
                } else if word == "prefix" {
                    tokens.push((Tok::PrefixDecl, line));
                } else {
                    return Err(err(line, format!("unknown directive '@{word}'")));
                }
            }
            '_' => {
                pos += 1;
                if chars.get(pos) != Some(&':') {
                    return Err(err(line, "expected ':' after '_'".into()));
                }
                pos += 1;
                let mut label = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
                {
                    label.push(chars[pos]);
                    pos += 1;
                }
                while label.ends_with('.') {
                    label.pop();
                    pos -= 1;
                }
                if label.is_empty() {
                    return Err(err(line, "empty blank node label".into()));
                }
                tokens.push((Tok::Blank(label), line));
            }
            '^' => {
                if chars.get(pos + 1) == Some(&'^') {
                    pos += 2;
                    tokens.push((Tok::DtSep, line));
                } else {
                    return Err(err(line, "expected '^^'".into()));
                }
            }
            '[' => {
                pos += 1;
                tokens.push((Tok::LBracket, line));
            }
            ']' => {
                pos += 1;
                tokens.push((Tok::RBracket, line));
            }
            '(' => {
                pos += 1;
                tokens.push((Tok::LParen, line));
            }
            ')' => {
                pos += 1;
                tokens.push((Tok::RParen, line));
            }
            ';' => {
                pos += 1;
                tokens.push((Tok::Semicolon, line));
            }
            ',' => {
                pos += 1;
                tokens.push((Tok::Comma, line));
            }
            '.' => {
                pos += 1;
                tokens.push((Tok::Dot, line));
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' => {
                let mut number = String::from(c);
                pos += 1;
                while matches!(chars.get(pos), Some(c) if c.is_ascii_digit()) {
                    number.push(chars[pos]);
                    pos += 1;
                }
                if chars.get(pos) == Some(&'.')
                    && matches!(chars.get(pos + 1), Some(c) if c.is_ascii_digit())
                {
                    number.push('.');
                    pos += 1;
                    while matches!(chars.get(pos), Some(c) if c.is_ascii_digit()) {
                        number.push(chars[pos]);
                        pos += 1;
                    }
                }
                tokens.push((Tok::Number(number), line));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-'))
                {
                    word.push(chars[pos]);
                    pos += 1;
                }
                if chars.get(pos) == Some(&':') {
                    pos += 1;
                    let mut local = String::new();
                    while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
                    {
                        local.push(chars[pos]);
                        pos += 1;
                    }
                    while local.ends_with('.') {
                        local.pop();
                        pos -= 1;
                    }
                    tokens.push((Tok::PName(word, local), line));
                } else if word == "a" {
                    tokens.push((Tok::KeywordA, line));
                } else {
                    return Err(err(line, format!("unexpected word '{word}'")));
                }
            }
            ':' => {
                // default (empty) prefix
                pos += 1;
                let mut local = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
                {
                    local.push(chars[pos]);
                    pos += 1;
                }
                while local.ends_with('.') {
                    local.pop();
                    pos -= 1;
                }
                tokens.push((Tok::PName(String::new(), local), line));
            }
            other => return Err(err(line, format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}
