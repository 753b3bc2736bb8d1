//! A reference evaluator for the SPARQL subset the translator emits.
//!
//! Parses query text from scratch (so it also acts as a grammar check)
//! and evaluates it bottom-up: basic graph patterns join solution
//! mappings, FILTER keeps compatible solutions, UNION merges branch
//! results. Filter equality follows the same term comparison rules the
//! condition language uses: IRIs by exact string, plain text by lexical
//! form, numbers numerically; an unbound variable never passes.

use lqml::rational::Rational;
use lqml::term::{Literal, Term, Triple};
use lqml::vocab;
use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sparql eval error: {}", self.0)
    }
}

impl std::error::Error for EvalError {}

/// A solution mapping from variable names (without '?') to terms.
pub type Solution = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq)]
enum PatternTerm {
    Var(String),
    Iri(String),
    Text(String),
    Number(Rational),
}

#[derive(Debug, Clone)]
enum Element {
    Pattern(PatternTerm, PatternTerm, PatternTerm),
    Filter(String, PatternTerm),
    Union(Vec<Group>),
}

#[derive(Debug, Clone, Default)]
struct Group {
    elements: Vec<Element>,
}

#[derive(Debug, Clone)]
pub struct Query {
    variables: Vec<String>,
    group: Group,
}

/// Parses `SELECT ?vars WHERE { .. }` and evaluates it over the dataset,
/// returning the selected triples as a set (each solution must bind
/// s, p, o).
pub fn select_triples(query_text: &str, dataset: &[Triple]) -> Result<HashSet<Triple>, EvalError> {
    let query = parse_query(query_text)?;
    for required in ["s", "p", "o"] {
        if !query.variables.iter().any(|v| v == required) {
            return Err(EvalError(format!("query does not select ?{required}")));
        }
    }
    let solutions = eval_group(&query.group, dataset);
    let mut out = HashSet::new();
    for solution in solutions {
        let s = solution
            .get("s")
            .ok_or_else(|| EvalError("solution misses ?s".into()))?;
        let p = solution
            .get("p")
            .ok_or_else(|| EvalError("solution misses ?p".into()))?;
        let o = solution
            .get("o")
            .ok_or_else(|| EvalError("solution misses ?o".into()))?;
        let predicate = match p {
            Term::Iri(iri) => iri.clone(),
            _ => return Err(EvalError("?p bound to a non-IRI".into())),
        };
        out.insert(Triple::new(s.clone(), predicate, o.clone()));
    }
    Ok(out)
}

pub fn parse_query(text: &str) -> Result<Query, EvalError> {
    let tokens = scan(text)?;
    let mut parser = QueryParser { tokens, pos: 0 };
    let query = parser.parse_query()?;
    if parser.pos != parser.tokens.len() {
        return Err(EvalError("trailing tokens after query".into()));
    }
    Ok(query)
}

// --------------------------------------------------------------------
// evaluation

fn eval_group(group: &Group, dataset: &[Triple]) -> Vec<Solution> {
    let mut solutions: Vec<Solution> = vec![Solution::new()];
    for element in &group.elements {
        solutions = match element {
            Element::Pattern(s, p, o) => {
                let mut next = Vec::new();
                for solution in &solutions {
                    for triple in dataset {
                        if let Some(extended) = match_pattern(solution, (s, p, o), triple) {
                            next.push(extended);
                        }
                    }
                }
                next
            }
            Element::Filter(variable, value) => solutions
                .into_iter()
                .filter(|solution| {
                    solution
                        .get(variable)
                        .map(|term| term_equals(term, value))
                        .unwrap_or(false)
                })
                .collect(),
            Element::Union(branches) => {
                let mut branch_solutions = Vec::new();
                for branch in branches {
                    branch_solutions.extend(eval_group(branch, dataset));
                }
                let mut next = Vec::new();
                for solution in &solutions {
                    for branch_solution in &branch_solutions {
                        if let Some(joined) = join(solution, branch_solution) {
                            next.push(joined);
                        }
                    }
                }
                next
            }
        };
    }
    solutions
}

fn match_pattern(
    solution: &Solution,
    pattern: (&PatternTerm, &PatternTerm, &PatternTerm),
    triple: &Triple,
) -> Option<Solution> {
    let mut extended = solution.clone();
    bind(&mut extended, pattern.0, &triple.subject)?;
    bind(
        &mut extended,
        pattern.1,
        &Term::Iri(triple.predicate.clone()),
    )?;
    bind(&mut extended, pattern.2, &triple.object)?;
    Some(extended)
}

fn bind(solution: &mut Solution, pattern: &PatternTerm, term: &Term) -> Option<()> {
    match pattern {
        PatternTerm::Var(name) => match solution.get(name) {
            Some(bound) if bound == term => Some(()),
            Some(_) => None,
            None => {
                solution.insert(name.clone(), term.clone());
                Some(())
            }
        },
        other => {
            if term_equals(term, other) {
                Some(())
            } else {
                None
            }
        }
    }
}

fn join(a: &Solution, b: &Solution) -> Option<Solution> {
    let mut out = a.clone();
    for (key, value) in b {
        match out.get(key) {
            Some(existing) if existing == value => {}
            Some(_) => return None,
            None => {
                out.insert(key.clone(), value.clone());
            }
        }
    }
    Some(out)
}

/// Term-vs-constant comparison mirroring condition semantics: blank nodes
/// equal nothing, text compares by lexical form, numbers numerically.
fn term_equals(term: &Term, constant: &PatternTerm) -> bool {
    match constant {
        PatternTerm::Var(_) => false,
        PatternTerm::Iri(iri) => term.as_iri().is_some_and(|t| t.as_str() == iri),
        PatternTerm::Text(text) => term
            .as_literal()
            .is_some_and(|literal| literal.lexical == *text),
        PatternTerm::Number(number) => term
            .as_literal()
            .and_then(Literal::numeric_value)
            .is_some_and(|value| value == *number),
    }
}

// --------------------------------------------------------------------
// query text parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Select,
    Where,
    Union,
    Filter,
    A,
    Var(String),
    Iri(String),
    Str(String),
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Eq,
    Dot,
}

fn scan(text: &str) -> Result<Vec<Tok>, EvalError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut tokens = Vec::new();
    while pos < chars.len() {
        let c = chars[pos];
        match c {
            c if c.is_whitespace() => pos += 1,
            '{' => {
                tokens.push(Tok::LBrace);
                pos += 1;
            }
            '}' => {
                tokens.push(Tok::RBrace);
                pos += 1;
            }
            '(' => {
                tokens.push(Tok::LParen);
                pos += 1;
            }
            ')' => {
                tokens.push(Tok::RParen);
                pos += 1;
            }
            '=' => {
                tokens.push(Tok::Eq);
                pos += 1;
            }
            '.' => {
                tokens.push(Tok::Dot);
                pos += 1;
            }
            '?' => {
                pos += 1;
                let mut name = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_'))
                {
                    name.push(chars[pos]);
                    pos += 1;
                }
                if name.is_empty() {
                    return Err(EvalError("empty variable name".into()));
                }
                tokens.push(Tok::Var(name));
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
                        Some(&c) => {
                            iri.push(c);
                            pos += 1;
                        }
                        None => return Err(EvalError("unterminated IRI".into())),
                    }
                }
                tokens.push(Tok::Iri(iri));
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
                                Some('"') => out.push('"'),
                                Some('\\') => out.push('\\'),
                                Some('n') => out.push('\n'),
                                Some('r') => out.push('\r'),
                                Some('t') => out.push('\t'),
                                Some(&c) => {
                                    return Err(EvalError(format!("unknown escape '\\{c}'")))
                                }
                                None => return Err(EvalError("unterminated string".into())),
                            }
                            pos += 1;
                        }
                        Some(&c) => {
                            out.push(c);
                            pos += 1;
                        }
                        None => return Err(EvalError("unterminated string".into())),
                    }
                }
                tokens.push(Tok::Str(out));
            }
            c if c.is_ascii_digit() => {
                let mut number = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_digit() || matches!(c, '.')) {
                    number.push(chars[pos]);
                    pos += 1;
                }
                tokens.push(Tok::Number(number));
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while matches!(chars.get(pos), Some(c) if c.is_ascii_alphanumeric()) {
                    word.push(chars[pos]);
                    pos += 1;
                }
                match word.as_str() {
                    "SELECT" => tokens.push(Tok::Select),
                    "WHERE" => tokens.push(Tok::Where),
                    "UNION" => tokens.push(Tok::Union),
                    "FILTER" => tokens.push(Tok::Filter),
                    "a" => tokens.push(Tok::A),
                    other => return Err(EvalError(format!("unexpected word '{other}'"))),
                }
            }
            other => return Err(EvalError(format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

struct QueryParser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl QueryParser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), EvalError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(EvalError(format!("expected {what}")))
        }
    }

    fn parse_query(&mut self) -> Result<Query, EvalError> {
        self.expect(Tok::Select, "SELECT")?;
        let mut variables = Vec::new();
        while let Some(Tok::Var(_)) = self.peek() {
            let Some(Tok::Var(name)) = self.next() else {
                unreachable!()
            };
            variables.push(name);
        }
        if variables.is_empty() {
            return Err(EvalError("SELECT needs at least one variable".into()));
        }
        self.expect(Tok::Where, "WHERE")?;
        let group = self.parse_group()?;
        Ok(Query { variables, group })
    }

    fn parse_group(&mut self) -> Result<Group, EvalError> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut group = Group::default();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    return Ok(group);
                }
                Some(Tok::Filter) => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after FILTER")?;
                    let variable = match self.next() {
                        Some(Tok::Var(name)) => name,
                        _ => return Err(EvalError("FILTER expects a variable".into())),
                    };
                    self.expect(Tok::Eq, "'='")?;
                    let value = self.parse_constant()?;
                    self.expect(Tok::RParen, "')'")?;
                    group.elements.push(Element::Filter(variable, value));
                }
                Some(Tok::LBrace) => {
                    let mut branches = vec![self.parse_group()?];
                    while self.peek() == Some(&Tok::Union) {
                        self.pos += 1;
                        branches.push(self.parse_group()?);
                    }
                    if branches.len() < 2 {
                        return Err(EvalError("group sequence without UNION".into()));
                    }
                    group.elements.push(Element::Union(branches));
                }
                Some(_) => {
                    let s = self.parse_pattern_term()?;
                    let p = match self.peek() {
                        Some(Tok::A) => {
                            self.pos += 1;
                            PatternTerm::Iri(vocab::RDF_TYPE.to_owned())
                        }
                        _ => self.parse_pattern_term()?,
                    };
                    let o = self.parse_pattern_term()?;
                    if self.peek() == Some(&Tok::Dot) {
                        self.pos += 1;
                    }
                    group.elements.push(Element::Pattern(s, p, o));
                }
                None => return Err(EvalError("unterminated group".into())),
            }
        }
    }

    fn parse_pattern_term(&mut self) -> Result<PatternTerm, EvalError> {
        match self.next() {
            Some(Tok::Var(name)) => Ok(PatternTerm::Var(name)),
            Some(Tok::Iri(iri)) => Ok(PatternTerm::Iri(iri)),
            Some(Tok::Str(text)) => Ok(PatternTerm::Text(text)),
            Some(Tok::Number(number)) => Rational::parse_decimal(&number)
                .map(PatternTerm::Number)
                .ok_or_else(|| EvalError(format!("bad number '{number}'"))),
            other => Err(EvalError(format!("expected a term, found {other:?}"))),
        }
    }

    fn parse_constant(&mut self) -> Result<PatternTerm, EvalError> {
        let term = self.parse_pattern_term()?;
        if matches!(term, PatternTerm::Var(_)) {
            return Err(EvalError("FILTER value must be a constant".into()));
        }
        Ok(term)
    }
}
