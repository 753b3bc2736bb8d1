//! Tokenizer for blueprint source text.
//!
//! Produces a flat token stream with line/column positions. Comments run
//! from `#` to the end of the line and are stripped before parsing.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Identifier,
    IriRef,
    QuotedString,
    Number,
    Punctuation,
    LogicalOperator,
    BooleanOperator,
    Comment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
}

impl Token {
    /// The IRI inside an iri-ref token, without the angle brackets.
    pub fn iri_value(&self) -> &str {
        self.lexeme.trim_start_matches('<').trim_end_matches('>')
    }

    /// The unescaped text inside a quoted-string token.
    pub fn string_value(&self) -> String {
        let inner = &self.lexeme[1..self.lexeme.len() - 1];
        let mut out = String::with_capacity(inner.len());
        let mut chars = inner.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                match chars.next() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some(other) => {
                        out.push('\\');
                        out.push(other);
                    }
                    None => out.push('\\'),
                }
            } else {
                out.push(c);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lex error at {line}:{column}: {message}")]
pub struct LexError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

const KEYWORDS: &[&str] = &[
    "def",
    "metric",
    "label",
    "description",
    "match",
    "action",
    "finally",
    "typeof",
    "count",
    "unique",
    "map",
    "actionresult",
    "ratio",
];

/// Tokenizes source text, discarding comments.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = scan(source)?;
    tokens.retain(|t| t.kind != TokenKind::Comment);
    Ok(tokens)
}

fn scan(source: &str) -> Result<Vec<Token>, LexError> {
    let mut scanner = Scanner {
        chars: source.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    while let Some(token) = scanner.next_token()? {
        tokens.push(token);
    }
    Ok(tokens)
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: u32, column: u32, message: impl Into<String>) -> LexError {
        LexError {
            line,
            column,
            message: message.into(),
        }
    }

    fn next_token(&mut self) -> Result<Option<Token>, LexError> {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.peek() else {
            return Ok(None);
        };

        let token = |kind, lexeme: String| Token {
            kind,
            lexeme,
            line,
            column,
        };

        match c {
            '#' => {
                let mut text = String::new();
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    text.push(self.bump().unwrap());
                }
                Ok(Some(token(TokenKind::Comment, text)))
            }
            '<' => {
                let mut text = String::from(self.bump().unwrap());
                loop {
                    match self.peek() {
                        Some('>') => {
                            text.push(self.bump().unwrap());
                            return Ok(Some(token(TokenKind::IriRef, text)));
                        }
                        Some('\n') | None => {
                            return Err(self.error(line, column, "unterminated IRI reference"))
                        }
                        Some('<') => {
                            return Err(self.error(line, column, "'<' inside IRI reference"))
                        }
                        Some(_) => text.push(self.bump().unwrap()),
                    }
                }
            }
            '"' => {
                let mut text = String::from(self.bump().unwrap());
                loop {
                    match self.peek() {
                        Some('"') => {
                            text.push(self.bump().unwrap());
                            return Ok(Some(token(TokenKind::QuotedString, text)));
                        }
                        Some('\\') => {
                            text.push(self.bump().unwrap());
                            match self.peek() {
                                Some('\n') | None => {
                                    return Err(self.error(line, column, "unterminated string"))
                                }
                                Some(_) => text.push(self.bump().unwrap()),
                            }
                        }
                        Some('\n') | None => {
                            return Err(self.error(line, column, "unterminated string"))
                        }
                        Some(_) => text.push(self.bump().unwrap()),
                    }
                }
            }
            '?' => {
                let var = match self.peek_at(1) {
                    Some(v @ ('s' | 'p' | 'o')) => v,
                    _ => {
                        return Err(self.error(
                            line,
                            column,
                            "expected '?s', '?p' or '?o' after '?'",
                        ))
                    }
                };
                if matches!(self.peek_at(2), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    return Err(self.error(line, column, "expected '?s', '?p' or '?o' after '?'"));
                }
                self.bump();
                self.bump();
                Ok(Some(token(TokenKind::Identifier, format!("?{var}"))))
            }
            '&' | '|' => {
                self.bump();
                let lexeme = if self.peek() == Some(c) {
                    self.bump();
                    format!("{c}{c}")
                } else {
                    c.to_string()
                };
                Ok(Some(token(TokenKind::LogicalOperator, lexeme)))
            }
            '=' => {
                self.bump();
                if self.peek() == Some('=') {
                    self.bump();
                    Ok(Some(token(TokenKind::BooleanOperator, "==".into())))
                } else {
                    Err(self.error(line, column, "expected '==' "))
                }
            }
            '{' | '}' | '(' | ')' | ':' | ';' | ',' | '.' => {
                self.bump();
                Ok(Some(token(TokenKind::Punctuation, c.to_string())))
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    text.push(self.bump().unwrap());
                }
                if self.peek() == Some('.')
                    && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit())
                {
                    text.push(self.bump().unwrap());
                    while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        text.push(self.bump().unwrap());
                    }
                }
                Ok(Some(token(TokenKind::Number, text)))
            }
            c if c.is_ascii_alphabetic() => {
                let mut text = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    text.push(self.bump().unwrap());
                }
                let kind = if KEYWORDS.contains(&text.as_str()) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                };
                Ok(Some(token(kind, text)))
            }
            other => Err(self.error(line, column, format!("illegal character '{other}'"))),
        }
    }
}
