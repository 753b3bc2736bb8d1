//! Recursive descent parser for blueprint definitions.
//!
//! A file holds one or more `def` blocks, each terminated by `.`. The six
//! clauses inside a block are fixed in the order metric, label,
//! description, match, action, finally; anything else is a parse error at
//! the offending token. Condition chains joined by the same operator
//! associate left; mixing `&` and `|` at one bracket depth without
//! parentheses is rejected so precedence is always written out.

use crate::ast::{Clause, ClauseKeyword, RawBlueprint, SourceSpan, Span};
use crate::lexer::{tokenize, LexError, Token, TokenKind};
use crate::model::{
    Action, ActionKind, Condition, ConditionExpr, FinallyExpr, LiteralValue, LogicalOp,
    RatioOperand,
};
use crate::rational::Rational;
use crate::term::{Iri, NodePosition, TriplePosition};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub expected: String,
    pub found: String,
}

/// Either phase of turning text into syntax trees can fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn position(&self) -> (u32, u32) {
        match self {
            SyntaxError::Lex(e) => (e.line, e.column),
            SyntaxError::Parse(e) => (e.line, e.column),
        }
    }
}

/// Tokenizes and parses a whole source file.
pub fn parse_source(source: &str) -> Result<Vec<RawBlueprint>, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parse(&tokens)?)
}

/// Parses a token stream into one syntax tree per `def` block. Blueprint
/// names must be unique within the stream.
pub fn parse(tokens: &[Token]) -> Result<Vec<RawBlueprint>, ParseError> {
    let mut parser = Parser::new(tokens);
    let mut blueprints: Vec<RawBlueprint> = Vec::new();
    while !parser.at_end() {
        let blueprint = parser.parse_definition()?;
        if blueprints.iter().any(|b| b.name == blueprint.name) {
            return Err(ParseError {
                line: blueprint.span.start.line,
                column: blueprint.span.start.column,
                expected: "a unique blueprint name".into(),
                found: format!("'{}' (already defined in this file)", blueprint.name),
            });
        }
        blueprints.push(blueprint);
    }
    if blueprints.is_empty() {
        return Err(parser.err_at_end("a 'def' block"));
    }
    Ok(blueprints)
}

/// Parses the body of a `match{..}` clause on its own.
pub fn parse_condition_expr(tokens: &[Token]) -> Result<ConditionExpr, ParseError> {
    let mut parser = Parser::new(tokens);
    let expr = parser.parse_expr()?;
    if !parser.at_end() {
        return Err(parser.err("end of condition"));
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let token = self.tokens.get(self.pos)?;
        self.pos += 1;
        Some(token)
    }

    fn err(&self, expected: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(token) => ParseError {
                line: token.line,
                column: token.column,
                expected: expected.into(),
                found: format!("'{}'", token.lexeme),
            },
            None => self.err_at_end(expected),
        }
    }

    fn err_at_end(&self, expected: impl Into<String>) -> ParseError {
        let (line, column) = self
            .tokens
            .last()
            .map(|t| (t.line, t.column + t.lexeme.chars().count() as u32))
            .unwrap_or((1, 1));
        ParseError {
            line,
            column,
            expected: expected.into(),
            found: "end of input".into(),
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<&'a Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == keyword => {
                Ok(self.advance().unwrap())
            }
            _ => Err(self.err(format!("'{keyword}'"))),
        }
    }

    fn expect_punct(&mut self, punct: char) -> Result<&'a Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Punctuation && t.lexeme == punct.to_string() => {
                Ok(self.advance().unwrap())
            }
            _ => Err(self.err(format!("'{punct}'"))),
        }
    }

    fn at_punct(&self, punct: char) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Punctuation && t.lexeme == punct.to_string())
    }

    fn expect_identifier(&mut self) -> Result<&'a Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier && !t.lexeme.starts_with('?') => {
                Ok(self.advance().unwrap())
            }
            _ => Err(self.err("an identifier")),
        }
    }

    fn expect_iri(&mut self) -> Result<Iri, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::IriRef => {
                let token = self.advance().unwrap();
                Ok(Iri::new(token.iri_value()))
            }
            _ => Err(self.err("an IRI reference")),
        }
    }

    fn expect_string(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::QuotedString => {
                Ok(self.advance().unwrap().string_value())
            }
            _ => Err(self.err("a quoted string")),
        }
    }

    fn expect_number(&mut self) -> Result<Rational, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Number => {
                let token = self.advance().unwrap();
                Rational::parse_decimal(&token.lexeme).ok_or(ParseError {
                    line: token.line,
                    column: token.column,
                    expected: "a number with at most 18 digits".into(),
                    found: format!("'{}'", token.lexeme),
                })
            }
            _ => Err(self.err("a number")),
        }
    }

    fn expect_variable(&mut self) -> Result<TriplePosition, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier && t.lexeme.starts_with('?') => {
                let token = self.advance().unwrap();
                Ok(TriplePosition::from_variable(&token.lexeme).unwrap())
            }
            _ => Err(self.err("'?s', '?p' or '?o'")),
        }
    }

    fn expect_boolean_operator(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::BooleanOperator => {
                self.advance();
                Ok(())
            }
            _ => Err(self.err("'=='")),
        }
    }

    fn parse_definition(&mut self) -> Result<RawBlueprint, ParseError> {
        let def = self.expect_keyword("def")?;
        let start = Span {
            line: def.line,
            column: def.column,
        };
        self.expect_punct('{')?;
        let name = self.expect_identifier()?.lexeme.clone();
        self.expect_punct('}')?;
        self.expect_punct(':')?;

        let mut clauses = Vec::with_capacity(6);
        for keyword in ClauseKeyword::ALL {
            clauses.push(self.parse_clause(keyword)?);
        }
        let dot = self.expect_punct('.')?;
        let end = Span {
            line: dot.line,
            column: dot.column,
        };
        Ok(RawBlueprint {
            name,
            clauses,
            span: SourceSpan { start, end },
        })
    }

    fn parse_clause(&mut self, keyword: ClauseKeyword) -> Result<Clause, ParseError> {
        self.expect_keyword(keyword.as_str())?;
        self.expect_punct('{')?;
        let clause = match keyword {
            ClauseKeyword::Metric => Clause::Metric(self.expect_iri()?),
            ClauseKeyword::Label => Clause::Label(self.expect_string()?),
            ClauseKeyword::Description => Clause::Description(self.expect_string()?),
            ClauseKeyword::Match => Clause::Match(self.parse_expr()?),
            ClauseKeyword::Action => Clause::Action(self.parse_action_list()?),
            ClauseKeyword::Finally => Clause::Finally(self.parse_finally()?),
        };
        self.expect_punct('}')?;
        if keyword != ClauseKeyword::Finally {
            self.expect_punct(';')?;
        }
        Ok(clause)
    }

    /// One or more operands joined by a single operator; the chain folds
    /// left. A different operator at the same depth is an error.
    fn parse_expr(&mut self) -> Result<ConditionExpr, ParseError> {
        let mut expr = self.parse_operand()?;
        let mut chain_op: Option<(LogicalOp, String)> = None;
        while let Some(token) = self.peek() {
            if token.kind != TokenKind::LogicalOperator {
                break;
            }
            let op = if token.lexeme.starts_with('&') {
                LogicalOp::And
            } else {
                LogicalOp::Or
            };
            match &chain_op {
                Some((chained, spelling)) if *chained != op => {
                    return Err(ParseError {
                        line: token.line,
                        column: token.column,
                        expected: format!(
                            "'{spelling}' (mixing '&' and '|' at one bracket depth requires parentheses)"
                        ),
                        found: format!("'{}'", token.lexeme),
                    });
                }
                _ => chain_op = Some((op, token.lexeme.clone())),
            }
            self.advance();
            let rhs = self.parse_operand()?;
            expr = ConditionExpr::Node {
                op,
                left: Box::new(expr),
                right: Box::new(rhs),
            };
        }
        Ok(expr)
    }

    /// A parenthesized unit: a nested expression or a single condition.
    fn parse_operand(&mut self) -> Result<ConditionExpr, ParseError> {
        self.expect_punct('(')?;
        let expr = if self.at_punct('(') {
            let inner = self.parse_expr()?;
            self.expect_punct(')')?;
            inner
        } else {
            let condition = self.parse_condition()?;
            self.expect_punct(')')?;
            ConditionExpr::Leaf(condition)
        };
        Ok(expr)
    }

    fn parse_condition(&mut self) -> Result<Condition, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "typeof" => {
                self.advance();
                self.expect_punct('(')?;
                let var = self.peek().cloned();
                let position = match self.expect_variable()? {
                    TriplePosition::Subject => NodePosition::Subject,
                    TriplePosition::Object => NodePosition::Object,
                    TriplePosition::Predicate => {
                        let var = var.unwrap();
                        return Err(ParseError {
                            line: var.line,
                            column: var.column,
                            expected: "'?s' or '?o' (typeof applies to subject or object)".into(),
                            found: "'?p'".into(),
                        });
                    }
                };
                self.expect_punct(')')?;
                self.expect_boolean_operator()?;
                let class = self.expect_iri()?;
                Ok(Condition::TypeOf { position, class })
            }
            Some(t) if t.kind == TokenKind::Identifier && t.lexeme.starts_with('?') => {
                let position = self.expect_variable()?;
                self.expect_boolean_operator()?;
                match position {
                    TriplePosition::Subject => Ok(Condition::SubjectEquals(self.expect_iri()?)),
                    TriplePosition::Predicate => Ok(Condition::PredicateEquals(self.expect_iri()?)),
                    TriplePosition::Object => match self.peek() {
                        Some(t) if t.kind == TokenKind::IriRef => {
                            Ok(Condition::ObjectEqualsIri(self.expect_iri()?))
                        }
                        Some(t) if t.kind == TokenKind::QuotedString => {
                            Ok(Condition::ObjectEqualsLiteral(LiteralValue::Text(
                                self.expect_string()?,
                            )))
                        }
                        Some(t) if t.kind == TokenKind::Number => {
                            Ok(Condition::ObjectEqualsLiteral(LiteralValue::Number(
                                self.expect_number()?,
                            )))
                        }
                        _ => Err(self.err("an IRI, string or number")),
                    },
                }
            }
            Some(t) if t.kind == TokenKind::Identifier => {
                let name = self.expect_identifier()?.lexeme.clone();
                self.expect_punct('(')?;
                let mut args = Vec::new();
                while !self.at_punct(')') {
                    args.push(self.expect_variable()?);
                    if self.at_punct(',') {
                        self.advance();
                    }
                }
                self.expect_punct(')')?;
                Ok(Condition::FunctionCall { name, args })
            }
            _ => Err(self.err("a condition: 'typeof', '?s', '?p', '?o' or a function name")),
        }
    }

    fn parse_action_list(&mut self) -> Result<Vec<Action>, ParseError> {
        let mut actions = vec![self.parse_action()?];
        loop {
            if self.at_punct(',') {
                self.advance();
            }
            if self.at_punct('}') {
                break;
            }
            actions.push(self.parse_action()?);
        }
        Ok(actions)
    }

    fn parse_action(&mut self) -> Result<Action, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "count" => {
                self.advance();
                Ok(Action::Count)
            }
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "unique" => {
                self.advance();
                self.expect_punct('(')?;
                let position = self.expect_variable()?;
                self.expect_punct(')')?;
                Ok(Action::Unique(position))
            }
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "map" => {
                self.advance();
                self.expect_punct('(')?;
                let key = self.expect_variable()?;
                if self.at_punct(',') {
                    self.advance();
                }
                let value = self.expect_variable()?;
                self.expect_punct(')')?;
                Ok(Action::Map { key, value })
            }
            _ => Err(self.err("'count', 'unique' or 'map'")),
        }
    }

    /// Exactly one result expression.
    fn parse_finally(&mut self) -> Result<FinallyExpr, ParseError> {
        let expr = match self.peek() {
            Some(t) if t.kind == TokenKind::Number => FinallyExpr::Number(self.expect_number()?),
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "actionresult" => {
                FinallyExpr::ActionResult(self.parse_actionresult()?)
            }
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "ratio" => {
                self.advance();
                self.expect_punct('(')?;
                let numerator = self.parse_ratio_operand()?;
                self.expect_punct(',')?;
                let denominator = self.parse_ratio_operand()?;
                self.expect_punct(')')?;
                FinallyExpr::Ratio(numerator, denominator)
            }
            _ => return Err(self.err("a number, 'actionresult' or 'ratio'")),
        };
        if !self.at_punct('}') {
            return Err(self.err("'}' (finally takes exactly one result expression)"));
        }
        Ok(expr)
    }

    fn parse_actionresult(&mut self) -> Result<ActionKind, ParseError> {
        self.expect_keyword("actionresult")?;
        self.expect_punct('(')?;
        let kind = match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword => match t.lexeme.as_str() {
                "map" => ActionKind::Map,
                "count" => ActionKind::Count,
                "unique" => ActionKind::Unique,
                _ => return Err(self.err("'map', 'count' or 'unique'")),
            },
            _ => return Err(self.err("'map', 'count' or 'unique'")),
        };
        self.advance();
        self.expect_punct(')')?;
        Ok(kind)
    }

    fn parse_ratio_operand(&mut self) -> Result<RatioOperand, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Number => {
                Ok(RatioOperand::Number(self.expect_number()?))
            }
            Some(t) if t.kind == TokenKind::Keyword && t.lexeme == "actionresult" => {
                Ok(RatioOperand::ActionResult(self.parse_actionresult()?))
            }
            _ => Err(self.err("a number or 'actionresult'")),
        }
    }
}
