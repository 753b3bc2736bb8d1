//! Translation of match patterns into SPARQL SELECT queries.
//!
//! Every query selects `?s ?p ?o` over the base pattern `?s ?p ?o`.
//! `typeof` conditions become extra triple patterns (`?s a <C>`), equality
//! conditions become FILTERs, `and` joins within a group, and `or` becomes
//! a UNION whose branches each restate the base pattern so they are
//! self-contained. Custom function conditions have no portable SPARQL
//! form and are rejected.

use crate::model::{Condition, ConditionExpr, LiteralValue, LogicalOp};
use crate::turtle::quote_turtle;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("condition calls custom function '{function}', which has no SPARQL translation")]
pub struct UntranslatableError {
    pub function: String,
}

/// A SELECT query: its projection and the brace-delimited WHERE block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparqlQuery {
    pub select_variables: Vec<String>,
    pub where_block: String,
}

impl fmt::Display for SparqlQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SELECT {}", self.select_variables.join(" "))?;
        write!(f, "WHERE {}", self.where_block)
    }
}

/// Translates a condition tree. Fails on function-call leaves.
pub fn to_sparql(expr: &ConditionExpr) -> Result<SparqlQuery, UntranslatableError> {
    let group = compile_group(expr)?;
    Ok(SparqlQuery {
        select_variables: vec!["?s".into(), "?p".into(), "?o".into()],
        where_block: group.render_block(),
    })
}

/// One graph group: triple patterns, filters, then union elements, every
/// group carrying the base pattern.
#[derive(Debug, Default)]
struct Group {
    patterns: Vec<String>,
    filters: Vec<String>,
    unions: Vec<Vec<Group>>,
}

impl Group {
    fn render_block(&self) -> String {
        let mut lines = Vec::new();
        for pattern in &self.patterns {
            lines.push(format!("  {pattern} ."));
        }
        lines.push("  ?s ?p ?o .".to_owned());
        for filter in &self.filters {
            lines.push(format!("  FILTER({filter})"));
        }
        for branches in &self.unions {
            let rendered: Vec<String> = branches.iter().map(|b| b.render_inline()).collect();
            lines.push(format!("  {}", rendered.join(" UNION ")));
        }
        format!("{{\n{}\n}}", lines.join("\n"))
    }

    fn render_inline(&self) -> String {
        let mut parts = Vec::new();
        for pattern in &self.patterns {
            parts.push(format!("{pattern} ."));
        }
        parts.push("?s ?p ?o .".to_owned());
        for filter in &self.filters {
            parts.push(format!("FILTER({filter})"));
        }
        for branches in &self.unions {
            let rendered: Vec<String> = branches.iter().map(|b| b.render_inline()).collect();
            parts.push(rendered.join(" UNION "));
        }
        format!("{{ {} }}", parts.join(" "))
    }
}

fn compile_group(expr: &ConditionExpr) -> Result<Group, UntranslatableError> {
    let mut group = Group::default();
    add_to_group(expr, &mut group)?;
    Ok(group)
}

fn add_to_group(expr: &ConditionExpr, group: &mut Group) -> Result<(), UntranslatableError> {
    match expr {
        ConditionExpr::Leaf(condition) => add_leaf(condition, group),
        ConditionExpr::Node {
            op: LogicalOp::And,
            left,
            right,
        } => {
            add_to_group(left, group)?;
            add_to_group(right, group)
        }
        ConditionExpr::Node {
            op: LogicalOp::Or, ..
        } => {
            let mut branches = Vec::new();
            collect_or_branches(expr, &mut branches);
            let compiled: Result<Vec<Group>, _> =
                branches.iter().map(|b| compile_group(b)).collect();
            group.unions.push(compiled?);
            Ok(())
        }
    }
}

/// Flattens an `or` chain so `a | b | c` renders as one UNION sequence.
fn collect_or_branches<'a>(expr: &'a ConditionExpr, out: &mut Vec<&'a ConditionExpr>) {
    match expr {
        ConditionExpr::Node {
            op: LogicalOp::Or,
            left,
            right,
        } => {
            collect_or_branches(left, out);
            collect_or_branches(right, out);
        }
        other => out.push(other),
    }
}

fn add_leaf(condition: &Condition, group: &mut Group) -> Result<(), UntranslatableError> {
    match condition {
        Condition::TypeOf { position, class } => {
            group
                .patterns
                .push(format!("{} a <{}>", position.variable(), class.as_str()));
            Ok(())
        }
        Condition::SubjectEquals(iri) => {
            group.filters.push(format!("?s = <{}>", iri.as_str()));
            Ok(())
        }
        Condition::PredicateEquals(iri) => {
            group.filters.push(format!("?p = <{}>", iri.as_str()));
            Ok(())
        }
        Condition::ObjectEqualsIri(iri) => {
            group.filters.push(format!("?o = <{}>", iri.as_str()));
            Ok(())
        }
        Condition::ObjectEqualsLiteral(LiteralValue::Text(text)) => {
            group.filters.push(format!("?o = {}", quote_turtle(text)));
            Ok(())
        }
        Condition::ObjectEqualsLiteral(LiteralValue::Number(number)) => {
            group
                .filters
                .push(format!("?o = {}", number.to_plain_string()));
            Ok(())
        }
        Condition::FunctionCall { name, .. } => Err(UntranslatableError {
            function: name.clone(),
        }),
    }
}
