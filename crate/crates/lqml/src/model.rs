//! Validated blueprint model and the extension-function registry.
//!
//! A `Blueprint` is the immutable, fully-checked form of a metric
//! definition: all six clauses present, the metric IRI absolute, every
//! custom function resolved, and every `actionresult` backed by a declared
//! action. Construction goes through [`validate`].

use crate::ast::{Clause, ClauseKeyword, RawBlueprint};
use crate::rational::Rational;
use crate::term::{Iri, NodePosition, Term, TriplePosition};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Boolean expression tree over per-triple conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionExpr {
    Leaf(Condition),
    Node {
        op: LogicalOp,
        left: Box<ConditionExpr>,
        right: Box<ConditionExpr>,
    },
}

impl ConditionExpr {
    pub fn and(left: ConditionExpr, right: ConditionExpr) -> Self {
        ConditionExpr::Node {
            op: LogicalOp::And,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn or(left: ConditionExpr, right: ConditionExpr) -> Self {
        ConditionExpr::Node {
            op: LogicalOp::Or,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn contains_typeof(&self) -> bool {
        match self {
            ConditionExpr::Leaf(c) => matches!(c, Condition::TypeOf { .. }),
            ConditionExpr::Node { left, right, .. } => {
                left.contains_typeof() || right.contains_typeof()
            }
        }
    }

    pub fn contains_function_call(&self) -> bool {
        match self {
            ConditionExpr::Leaf(c) => matches!(c, Condition::FunctionCall { .. }),
            ConditionExpr::Node { left, right, .. } => {
                left.contains_function_call() || right.contains_function_call()
            }
        }
    }

    /// Visits every leaf condition.
    pub fn for_each_leaf<'a>(&'a self, f: &mut impl FnMut(&'a Condition)) {
        match self {
            ConditionExpr::Leaf(c) => f(c),
            ConditionExpr::Node { left, right, .. } => {
                left.for_each_leaf(f);
                right.for_each_leaf(f);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalOp {
    And,
    Or,
}

/// A literal value on the right-hand side of `?o == x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiteralValue {
    Text(String),
    Number(Rational),
}

/// A per-triple predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    TypeOf {
        position: NodePosition,
        class: Iri,
    },
    SubjectEquals(Iri),
    PredicateEquals(Iri),
    ObjectEqualsIri(Iri),
    ObjectEqualsLiteral(LiteralValue),
    FunctionCall {
        name: String,
        args: Vec<TriplePosition>,
    },
}

/// An accumulator update triggered when a triple matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Count,
    Unique(TriplePosition),
    Map {
        key: TriplePosition,
        value: TriplePosition,
    },
}

impl Action {
    pub fn kind(&self) -> ActionKind {
        match self {
            Action::Count => ActionKind::Count,
            Action::Unique(_) => ActionKind::Unique,
            Action::Map { .. } => ActionKind::Map,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionKind {
    Map,
    Count,
    Unique,
}

impl ActionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ActionKind::Map => "map",
            ActionKind::Count => "count",
            ActionKind::Unique => "unique",
        }
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An operand of `ratio(x, y)`: a number or an `actionresult(..)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioOperand {
    Number(Rational),
    ActionResult(ActionKind),
}

/// The blueprint's result computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinallyExpr {
    Number(Rational),
    ActionResult(ActionKind),
    Ratio(RatioOperand, RatioOperand),
}

impl FinallyExpr {
    /// Action kinds referenced through `actionresult(..)`.
    pub fn referenced_actions(&self) -> Vec<ActionKind> {
        let operand = |op: &RatioOperand| match op {
            RatioOperand::ActionResult(kind) => Some(*kind),
            RatioOperand::Number(_) => None,
        };
        match self {
            FinallyExpr::Number(_) => vec![],
            FinallyExpr::ActionResult(kind) => vec![*kind],
            FinallyExpr::Ratio(n, d) => operand(n).into_iter().chain(operand(d)).collect(),
        }
    }
}

/// A validated, immutable metric definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blueprint {
    pub name: String,
    pub metric_uri: Iri,
    pub label: String,
    pub description: String,
    pub match_expr: ConditionExpr,
    pub actions: Vec<Action>,
    pub finally_expr: FinallyExpr,
}

impl Blueprint {
    /// True when every mandatory feature is present and consistent. Holds
    /// for every blueprint [`validate`] returns.
    pub fn feature_complete(&self) -> bool {
        !self.name.is_empty()
            && self.metric_uri.is_absolute()
            && !self.actions.is_empty()
            && self
                .finally_expr
                .referenced_actions()
                .iter()
                .all(|kind| self.actions.iter().any(|a| a.kind() == *kind))
    }
}

/// Signature of a custom match predicate: receives the terms selected by
/// the call's argument positions, in order.
pub type ExtensionFn = dyn Fn(&[Term]) -> bool + Send + Sync;

/// Named custom functions usable inside `match` patterns. Registered up
/// front and frozen before validation or evaluation.
#[derive(Clone, Default)]
pub struct ExtensionRegistry {
    entries: BTreeMap<String, Arc<ExtensionFn>>,
    permissive: bool,
}

impl ExtensionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// A registry that resolves every function name to a predicate that
    /// never matches. Lets tooling paths (export, SPARQL translation)
    /// accept blueprints whose functions live in some other host
    /// application; assessment paths should use a strict registry.
    pub fn permissive() -> Self {
        ExtensionRegistry {
            entries: BTreeMap::new(),
            permissive: true,
        }
    }

    pub fn register(
        &mut self,
        name: impl Into<String>,
        predicate: impl Fn(&[Term]) -> bool + Send + Sync + 'static,
    ) -> Result<(), DuplicateFunctionError> {
        let name = name.into();
        if self.entries.contains_key(&name) {
            return Err(DuplicateFunctionError { name });
        }
        self.entries.insert(name, Arc::new(predicate));
        Ok(())
    }

    pub fn resolves(&self, name: &str) -> bool {
        self.permissive || self.entries.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Option<Arc<ExtensionFn>> {
        match self.entries.get(name) {
            Some(f) => Some(f.clone()),
            None if self.permissive => Some(Arc::new(|_: &[Term]| false)),
            None => None,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Debug for ExtensionRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionRegistry")
            .field("functions", &self.entries.keys().collect::<Vec<_>>())
            .field("permissive", &self.permissive)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("function '{name}' is already registered")]
pub struct DuplicateFunctionError {
    pub name: String,
}

/// A single validation violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingClause(ClauseKeyword),
    DuplicateClause(ClauseKeyword),
    RelativeMetricIri(String),
    UnknownFunction(String),
    UnbackedActionResult(ActionKind),
    DuplicateAction(ActionKind),
    MapIdenticalPositions,
    NoActions,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingClause(kw) => write!(f, "missing '{kw}' clause"),
            Violation::DuplicateClause(kw) => write!(f, "duplicate '{kw}' clause"),
            Violation::RelativeMetricIri(iri) => {
                write!(f, "metric IRI <{iri}> is not absolute")
            }
            Violation::UnknownFunction(name) => {
                write!(
                    f,
                    "unknown function '{name}' (not in the extension registry)"
                )
            }
            Violation::UnbackedActionResult(kind) => write!(
                f,
                "finally references actionresult({kind}) but no {kind} action is declared"
            ),
            Violation::DuplicateAction(kind) => {
                write!(f, "duplicate '{kind}' action")
            }
            Violation::MapIdenticalPositions => {
                write!(f, "map requires two distinct positions")
            }
            Violation::NoActions => write!(f, "action clause declares no action"),
        }
    }
}

/// All violations found in one blueprint, reported together.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationError {
    pub blueprint: String,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "blueprint '{}' is invalid: ", self.blueprint)?;
        let mut first = true;
        for v in &self.violations {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Checks a raw syntax tree against the model invariants and produces the
/// validated blueprint. Collects every violation instead of stopping at
/// the first.
pub fn validate(
    ast: &RawBlueprint,
    registry: &ExtensionRegistry,
) -> Result<Blueprint, ValidationError> {
    let mut violations = Vec::new();

    let mut metric_uri = None;
    let mut label = None;
    let mut description = None;
    let mut match_expr = None;
    let mut actions = None;
    let mut finally_expr = None;

    for clause in &ast.clauses {
        let keyword = clause.keyword();
        let slot_taken = match clause {
            Clause::Metric(iri) => store(&mut metric_uri, iri.clone()),
            Clause::Label(text) => store(&mut label, text.clone()),
            Clause::Description(text) => store(&mut description, text.clone()),
            Clause::Match(expr) => store(&mut match_expr, expr.clone()),
            Clause::Action(list) => store(&mut actions, list.clone()),
            Clause::Finally(expr) => store(&mut finally_expr, expr.clone()),
        };
        if slot_taken {
            violations.push(Violation::DuplicateClause(keyword));
        }
    }
    for keyword in ClauseKeyword::ALL {
        let present = match keyword {
            ClauseKeyword::Metric => metric_uri.is_some(),
            ClauseKeyword::Label => label.is_some(),
            ClauseKeyword::Description => description.is_some(),
            ClauseKeyword::Match => match_expr.is_some(),
            ClauseKeyword::Action => actions.is_some(),
            ClauseKeyword::Finally => finally_expr.is_some(),
        };
        if !present {
            violations.push(Violation::MissingClause(keyword));
        }
    }

    if let Some(iri) = &metric_uri {
        if !iri.is_absolute() {
            violations.push(Violation::RelativeMetricIri(iri.as_str().to_owned()));
        }
    }
    if let Some(expr) = &match_expr {
        check_match_expr(expr, registry, &mut violations);
    }
    if let Some(actions) = &actions {
        check_actions(actions, &mut violations);
    }
    if let (Some(finally), Some(actions)) = (&finally_expr, &actions) {
        check_finally(finally, actions, &mut violations);
    }

    if !violations.is_empty() {
        return Err(ValidationError {
            blueprint: ast.name.clone(),
            violations,
        });
    }
    Ok(Blueprint {
        name: ast.name.clone(),
        metric_uri: metric_uri.unwrap(),
        label: label.unwrap(),
        description: description.unwrap(),
        match_expr: match_expr.unwrap(),
        actions: actions.unwrap(),
        finally_expr: finally_expr.unwrap(),
    })
}

/// Checks an already-assembled blueprint against the same semantic rules
/// [`validate`] applies. Useful when a blueprint is built programmatically
/// rather than parsed.
pub fn check_blueprint(blueprint: &Blueprint, registry: &ExtensionRegistry) -> Vec<Violation> {
    semantic_violations(
        &blueprint.metric_uri,
        &blueprint.match_expr,
        &blueprint.actions,
        &blueprint.finally_expr,
        registry,
    )
}

/// Semantic checks shared with the RDF import path, which assembles the
/// blueprint parts from a graph instead of a syntax tree.
pub(crate) fn semantic_violations(
    metric_uri: &Iri,
    match_expr: &ConditionExpr,
    actions: &[Action],
    finally_expr: &FinallyExpr,
    registry: &ExtensionRegistry,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    if !metric_uri.is_absolute() {
        violations.push(Violation::RelativeMetricIri(metric_uri.as_str().to_owned()));
    }
    check_match_expr(match_expr, registry, &mut violations);
    check_actions(actions, &mut violations);
    check_finally(finally_expr, actions, &mut violations);
    violations
}

fn store<T>(slot: &mut Option<T>, value: T) -> bool {
    if slot.is_some() {
        true
    } else {
        *slot = Some(value);
        false
    }
}

fn check_match_expr(
    expr: &ConditionExpr,
    registry: &ExtensionRegistry,
    violations: &mut Vec<Violation>,
) {
    expr.for_each_leaf(&mut |condition| {
        if let Condition::FunctionCall { name, .. } = condition {
            if !registry.resolves(name) {
                violations.push(Violation::UnknownFunction(name.clone()));
            }
        }
    });
}

fn check_actions(actions: &[Action], violations: &mut Vec<Violation>) {
    if actions.is_empty() {
        violations.push(Violation::NoActions);
    }
    let mut seen = Vec::new();
    for action in actions {
        let kind = action.kind();
        if seen.contains(&kind) {
            violations.push(Violation::DuplicateAction(kind));
        } else {
            seen.push(kind);
        }
        if let Action::Map { key, value } = action {
            if key == value {
                violations.push(Violation::MapIdenticalPositions);
            }
        }
    }
}

fn check_finally(finally: &FinallyExpr, actions: &[Action], violations: &mut Vec<Violation>) {
    for kind in finally.referenced_actions() {
        if !actions.iter().any(|a| a.kind() == kind) {
            violations.push(Violation::UnbackedActionResult(kind));
        }
    }
}
