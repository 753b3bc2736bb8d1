//! Raw blueprint syntax trees and their canonical text form.

use crate::model::{
    Action, Condition, ConditionExpr, FinallyExpr, LiteralValue, LogicalOp, RatioOperand,
};
use std::fmt;

/// A line/column position, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: u32,
    pub column: u32,
}

/// The extent of a definition in its source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub start: Span,
    pub end: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseKeyword {
    Metric,
    Label,
    Description,
    Match,
    Action,
    Finally,
}

impl ClauseKeyword {
    /// Canonical clause order.
    pub const ALL: [ClauseKeyword; 6] = [
        ClauseKeyword::Metric,
        ClauseKeyword::Label,
        ClauseKeyword::Description,
        ClauseKeyword::Match,
        ClauseKeyword::Action,
        ClauseKeyword::Finally,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClauseKeyword::Metric => "metric",
            ClauseKeyword::Label => "label",
            ClauseKeyword::Description => "description",
            ClauseKeyword::Match => "match",
            ClauseKeyword::Action => "action",
            ClauseKeyword::Finally => "finally",
        }
    }
}

impl fmt::Display for ClauseKeyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One clause of a definition, keyword implied by the variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    Metric(crate::term::Iri),
    Label(String),
    Description(String),
    Match(ConditionExpr),
    Action(Vec<Action>),
    Finally(FinallyExpr),
}

impl Clause {
    pub fn keyword(&self) -> ClauseKeyword {
        match self {
            Clause::Metric(_) => ClauseKeyword::Metric,
            Clause::Label(_) => ClauseKeyword::Label,
            Clause::Description(_) => ClauseKeyword::Description,
            Clause::Match(_) => ClauseKeyword::Match,
            Clause::Action(_) => ClauseKeyword::Action,
            Clause::Finally(_) => ClauseKeyword::Finally,
        }
    }
}

/// One parsed `def` block, clauses in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBlueprint {
    pub name: String,
    pub clauses: Vec<Clause>,
    pub span: SourceSpan,
}

impl RawBlueprint {
    /// Equality that ignores source positions.
    pub fn structurally_eq(&self, other: &RawBlueprint) -> bool {
        self.name == other.name && self.clauses == other.clauses
    }
}

/// Renders one definition in canonical form: two-space indented clauses,
/// `&`/`|` operators, parentheses only where the tree requires them.
pub fn pretty_print(blueprint: &RawBlueprint) -> String {
    let mut out = String::new();
    out.push_str(&format!("def{{{}}}:\n", blueprint.name));
    for clause in &blueprint.clauses {
        let body = match clause {
            Clause::Metric(iri) => format!("<{}>", iri.as_str()),
            Clause::Label(text) => quote(text),
            Clause::Description(text) => quote(text),
            Clause::Match(expr) => print_expr(expr),
            Clause::Action(actions) => actions
                .iter()
                .map(print_action)
                .collect::<Vec<_>>()
                .join(", "),
            Clause::Finally(expr) => print_finally(expr),
        };
        let terminator = match clause.keyword() {
            ClauseKeyword::Finally => ".",
            _ => ";",
        };
        out.push_str(&format!(
            "  {}{{{}}}{}\n",
            clause.keyword(),
            body,
            terminator
        ));
    }
    out
}

/// Renders a whole file of definitions.
pub fn pretty_print_all(blueprints: &[RawBlueprint]) -> String {
    blueprints
        .iter()
        .map(pretty_print)
        .collect::<Vec<_>>()
        .join("\n")
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}

fn print_expr(expr: &ConditionExpr) -> String {
    match expr {
        ConditionExpr::Leaf(c) => print_condition(c),
        ConditionExpr::Node { op, left, right } => {
            let op_text = match op {
                LogicalOp::And => "&",
                LogicalOp::Or => "|",
            };
            // Same-operator chains associate left, so a left child with the
            // same operator needs no brackets; everything else does.
            let left_text = match left.as_ref() {
                ConditionExpr::Node { op: lop, .. } if lop == op => print_expr(left),
                ConditionExpr::Node { .. } => format!("({})", print_expr(left)),
                ConditionExpr::Leaf(_) => print_expr(left),
            };
            let right_text = match right.as_ref() {
                ConditionExpr::Node { .. } => format!("({})", print_expr(right)),
                ConditionExpr::Leaf(_) => print_expr(right),
            };
            format!("{left_text} {op_text} {right_text}")
        }
    }
}

fn print_condition(condition: &Condition) -> String {
    match condition {
        Condition::TypeOf { position, class } => {
            format!("(typeof({}) == <{}>)", position.variable(), class.as_str())
        }
        Condition::SubjectEquals(iri) => format!("(?s == <{}>)", iri.as_str()),
        Condition::PredicateEquals(iri) => format!("(?p == <{}>)", iri.as_str()),
        Condition::ObjectEqualsIri(iri) => format!("(?o == <{}>)", iri.as_str()),
        Condition::ObjectEqualsLiteral(LiteralValue::Text(text)) => {
            format!("(?o == {})", quote(text))
        }
        Condition::ObjectEqualsLiteral(LiteralValue::Number(n)) => {
            format!("(?o == {})", n.to_plain_string())
        }
        Condition::FunctionCall { name, args } => {
            let args = args
                .iter()
                .map(|p| p.variable())
                .collect::<Vec<_>>()
                .join(", ");
            format!("({name}({args}))")
        }
    }
}

fn print_action(action: &Action) -> String {
    match action {
        Action::Count => "count".to_owned(),
        Action::Unique(pos) => format!("unique({})", pos.variable()),
        Action::Map { key, value } => format!("map({}, {})", key.variable(), value.variable()),
    }
}

fn print_finally(expr: &FinallyExpr) -> String {
    match expr {
        FinallyExpr::Number(n) => n.to_plain_string(),
        FinallyExpr::ActionResult(kind) => format!("actionresult({kind})"),
        FinallyExpr::Ratio(n, d) => {
            format!("ratio({}, {})", print_operand(n), print_operand(d))
        }
    }
}

fn print_operand(operand: &RatioOperand) -> String {
    match operand {
        RatioOperand::Number(n) => n.to_plain_string(),
        RatioOperand::ActionResult(kind) => format!("actionresult({kind})"),
    }
}
