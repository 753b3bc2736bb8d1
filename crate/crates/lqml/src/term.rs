//! RDF terms and triples.

use crate::rational::Rational;
use crate::vocab;
use std::fmt;

/// An IRI stored without angle brackets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Self {
        Iri(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the IRI has a scheme, e.g. `http:`.
    pub fn is_absolute(&self) -> bool {
        let bytes = self.0.as_bytes();
        let Some(colon) = self.0.find(':') else {
            return false;
        };
        if colon == 0 || !bytes[0].is_ascii_alphabetic() {
            return false;
        }
        bytes[1..colon]
            .iter()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'+' | b'-' | b'.'))
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A literal: lexical form plus an optional language tag or datatype.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lexical: String,
    pub lang: Option<String>,
    pub datatype: Option<Iri>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: None,
        }
    }

    pub fn with_lang(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: Some(lang.into()),
            datatype: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: Some(datatype),
        }
    }

    pub fn decimal(value: Rational) -> Self {
        if value.is_integer() {
            Literal::typed(value.to_plain_string(), Iri::new(vocab::XSD_INTEGER))
        } else {
            Literal::typed(value.to_plain_string(), Iri::new(vocab::XSD_DECIMAL))
        }
    }

    /// Numeric interpretation of the lexical form, when it has one.
    pub fn numeric_value(&self) -> Option<Rational> {
        Rational::parse_decimal(self.lexical.trim())
    }
}

/// One position of a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriplePosition {
    Subject,
    Predicate,
    Object,
}

impl TriplePosition {
    /// The variable spelling used in blueprint source: `?s`, `?p`, `?o`.
    pub fn variable(&self) -> &'static str {
        match self {
            TriplePosition::Subject => "?s",
            TriplePosition::Predicate => "?p",
            TriplePosition::Object => "?o",
        }
    }

    pub fn from_variable(var: &str) -> Option<Self> {
        match var {
            "?s" => Some(TriplePosition::Subject),
            "?p" => Some(TriplePosition::Predicate),
            "?o" => Some(TriplePosition::Object),
            _ => None,
        }
    }
}

/// The positions a `typeof` condition may inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodePosition {
    Subject,
    Object,
}

impl NodePosition {
    pub fn variable(&self) -> &'static str {
        match self {
            NodePosition::Subject => "?s",
            NodePosition::Object => "?o",
        }
    }

    pub fn as_triple_position(&self) -> TriplePosition {
        match self {
            NodePosition::Subject => TriplePosition::Subject,
            NodePosition::Object => TriplePosition::Object,
        }
    }
}

/// An RDF term: IRI, blank node label, or literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Self {
        Term::Iri(Iri::new(value))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }
}

/// One subject/predicate/object statement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Self {
        Triple {
            subject,
            predicate,
            object,
        }
    }

    pub fn term_at(&self, position: TriplePosition) -> Term {
        match position {
            TriplePosition::Subject => self.subject.clone(),
            TriplePosition::Predicate => Term::Iri(self.predicate.clone()),
            TriplePosition::Object => self.object.clone(),
        }
    }

    pub fn is_type_assertion(&self) -> bool {
        self.predicate.as_str() == vocab::RDF_TYPE
    }
}
