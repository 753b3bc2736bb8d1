//! Blueprint exchange as RDF: export to and import from the blueprint
//! ontology.
//!
//! A blueprint node carries its name, label, and comment, links to its
//! metric through `lbo:relatedTo`, to an output-result node through
//! `lbo:hasResult`, and to a `drmo:Rule` through
//! `lbo:hasPatternMatchingRule`. The rule is composed of one condition
//! tree — and/or nesting made explicit through `lbo:ConditionGroup` nodes
//! with an operator and an ordered operand list — and triggers one node
//! per action. Parameter lists are `rdf:List`s throughout, so structure
//! survives the round trip losslessly. The full shape is documented in
//! `docs/lbo-shape.md`.

use crate::model::{
    semantic_violations, Action, ActionKind, Blueprint, Condition, ConditionExpr,
    ExtensionRegistry, FinallyExpr, LiteralValue, LogicalOp, RatioOperand, ValidationError,
};
use crate::rational::Rational;
use crate::term::{Iri, Literal, NodePosition, Term, Triple, TriplePosition};
use crate::turtle::Graph;
use crate::vocab;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

/// Shape problems found while reading a graph, all reported together.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct LboShapeError {
    pub problems: Vec<String>,
}

impl fmt::Display for LboShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "blueprint graph is malformed: {}",
            self.problems.join("; ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LboImportError {
    #[error(transparent)]
    Shape(#[from] LboShapeError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// Serializes one blueprint.
pub fn export_blueprint(blueprint: &Blueprint) -> Graph {
    export_blueprints(std::slice::from_ref(blueprint))
}

/// Serializes several blueprints into one graph.
pub fn export_blueprints(blueprints: &[Blueprint]) -> Graph {
    let mut graph = Graph::new();
    graph.add_prefix("lbo", vocab::LBO);
    graph.add_prefix("drmo", vocab::DRMO);
    graph.add_prefix("rdf", vocab::RDF);
    graph.add_prefix("rdfs", vocab::RDFS);
    let mut exporter = Exporter {
        graph: &mut graph,
        next_blank: 0,
    };
    for blueprint in blueprints {
        exporter.export(blueprint);
    }
    graph
}

struct Exporter<'g> {
    graph: &'g mut Graph,
    next_blank: usize,
}

impl Exporter<'_> {
    fn blank(&mut self) -> Term {
        let term = Term::Blank(format!("b{}", self.next_blank));
        self.next_blank += 1;
        term
    }

    fn emit(&mut self, subject: Term, predicate: &str, object: Term) {
        self.graph
            .insert(Triple::new(subject, Iri::new(predicate), object));
    }

    fn emit_type(&mut self, node: &Term, class: &str) {
        self.emit(node.clone(), vocab::RDF_TYPE, Term::iri(class));
    }

    fn text(value: &str) -> Term {
        Term::Literal(Literal::plain(value))
    }

    fn number(value: &Rational) -> Term {
        Term::Literal(Literal::decimal(*value))
    }

    fn export(&mut self, blueprint: &Blueprint) {
        let node = self.blank();
        self.emit_type(&node, vocab::LBO_BLUEPRINT);
        self.emit(node.clone(), vocab::LBO_NAME, Self::text(&blueprint.name));
        self.emit(
            node.clone(),
            vocab::RDFS_LABEL,
            Self::text(&blueprint.label),
        );
        self.emit(
            node.clone(),
            vocab::RDFS_COMMENT,
            Self::text(&blueprint.description),
        );
        self.emit(
            node.clone(),
            vocab::LBO_RELATED_TO,
            Term::Iri(blueprint.metric_uri.clone()),
        );
        let result = self.export_finally(&blueprint.finally_expr);
        self.emit(node.clone(), vocab::LBO_HAS_RESULT, result);

        let rule = self.blank();
        self.emit(node, vocab::LBO_HAS_PATTERN_MATCHING_RULE, rule.clone());
        self.emit_type(&rule, vocab::DRMO_RULE);
        let condition = self.export_expr(&blueprint.match_expr);
        self.emit(rule.clone(), vocab::DRMO_IS_COMPOSED_OF, condition);
        for action in &blueprint.actions {
            let action_node = self.export_action(action);
            self.emit(rule.clone(), vocab::DRMO_TRIGGERS, action_node);
        }
    }

    /// Builds an `rdf:List`; the empty list is `rdf:nil`.
    fn list(&mut self, items: Vec<Term>) -> Term {
        let mut head = Term::iri(vocab::RDF_NIL);
        for item in items.into_iter().rev() {
            let node = self.blank();
            self.emit(node.clone(), vocab::RDF_FIRST, item);
            self.emit(node.clone(), vocab::RDF_REST, head);
            head = node;
        }
        head
    }

    fn action_kind_iri(kind: ActionKind) -> Term {
        Term::iri(match kind {
            ActionKind::Map => vocab::LBO_MAP,
            ActionKind::Count => vocab::LBO_COUNT,
            ActionKind::Unique => vocab::LBO_UNIQUE,
        })
    }

    fn export_finally(&mut self, expr: &FinallyExpr) -> Term {
        match expr {
            FinallyExpr::Number(value) => {
                let node = self.blank();
                self.emit_type(&node, vocab::LBO_OUTPUT_RESULT);
                let params = self.list(vec![Self::number(value)]);
                self.emit(node.clone(), vocab::LBO_HAS_OUTPUT_PARAMETERS, params);
                node
            }
            FinallyExpr::ActionResult(kind) => self.export_action_result(*kind),
            FinallyExpr::Ratio(numerator, denominator) => {
                let node = self.blank();
                self.emit_type(&node, vocab::LBO_RATIO);
                let n = self.export_operand(numerator);
                let d = self.export_operand(denominator);
                let params = self.list(vec![n, d]);
                self.emit(node.clone(), vocab::LBO_HAS_OUTPUT_PARAMETERS, params);
                node
            }
        }
    }

    fn export_action_result(&mut self, kind: ActionKind) -> Term {
        let node = self.blank();
        self.emit_type(&node, vocab::LBO_ACTION_RESULTS);
        let params = self.list(vec![Self::action_kind_iri(kind)]);
        self.emit(node.clone(), vocab::LBO_HAS_OUTPUT_PARAMETERS, params);
        node
    }

    fn export_operand(&mut self, operand: &RatioOperand) -> Term {
        match operand {
            RatioOperand::Number(value) => Self::number(value),
            RatioOperand::ActionResult(kind) => self.export_action_result(*kind),
        }
    }

    fn export_expr(&mut self, expr: &ConditionExpr) -> Term {
        match expr {
            ConditionExpr::Leaf(condition) => self.export_condition(condition),
            ConditionExpr::Node { op, left, right } => {
                let node = self.blank();
                self.emit_type(&node, vocab::LBO_CONDITION_GROUP);
                let operator = match op {
                    LogicalOp::And => "and",
                    LogicalOp::Or => "or",
                };
                self.emit(node.clone(), vocab::LBO_OPERATOR, Self::text(operator));
                let l = self.export_expr(left);
                let r = self.export_expr(right);
                let operands = self.list(vec![l, r]);
                self.emit(node.clone(), vocab::LBO_HAS_OPERANDS, operands);
                node
            }
        }
    }

    fn export_condition(&mut self, condition: &Condition) -> Term {
        let node = self.blank();
        match condition {
            Condition::TypeOf { position, class } => {
                self.emit_type(&node, vocab::LBO_TYPE_OF);
                self.emit(
                    node.clone(),
                    vocab::LBO_ON_TERM,
                    Self::text(position.variable()),
                );
                self.emit(node.clone(), vocab::LBO_VALUE, Term::Iri(class.clone()));
            }
            Condition::SubjectEquals(iri) => {
                self.emit_type(&node, vocab::DRMO_CONDITION);
                self.emit(node.clone(), vocab::LBO_ON_TERM, Self::text("?s"));
                self.emit(node.clone(), vocab::LBO_VALUE, Term::Iri(iri.clone()));
            }
            Condition::PredicateEquals(iri) => {
                self.emit_type(&node, vocab::DRMO_CONDITION);
                self.emit(node.clone(), vocab::LBO_ON_TERM, Self::text("?p"));
                self.emit(node.clone(), vocab::LBO_VALUE, Term::Iri(iri.clone()));
            }
            Condition::ObjectEqualsIri(iri) => {
                self.emit_type(&node, vocab::DRMO_CONDITION);
                self.emit(node.clone(), vocab::LBO_ON_TERM, Self::text("?o"));
                self.emit(node.clone(), vocab::LBO_VALUE, Term::Iri(iri.clone()));
            }
            Condition::ObjectEqualsLiteral(value) => {
                self.emit_type(&node, vocab::DRMO_CONDITION);
                self.emit(node.clone(), vocab::LBO_ON_TERM, Self::text("?o"));
                let object = match value {
                    LiteralValue::Text(text) => Self::text(text),
                    LiteralValue::Number(number) => Self::number(number),
                };
                self.emit(node.clone(), vocab::LBO_VALUE, object);
            }
            Condition::FunctionCall { name, args } => {
                self.emit_type(&node, vocab::LBO_FUNCTION_CALL);
                self.emit(node.clone(), vocab::LBO_FUNCTION_NAME, Self::text(name));
                let params = args.iter().map(|p| Self::text(p.variable())).collect();
                let list = self.list(params);
                self.emit(node.clone(), vocab::LBO_HAS_PARAMETERS, list);
            }
        }
        node
    }

    fn export_action(&mut self, action: &Action) -> Term {
        let node = self.blank();
        match action {
            Action::Count => self.emit_type(&node, vocab::LBO_COUNT),
            Action::Unique(position) => {
                self.emit_type(&node, vocab::LBO_UNIQUE);
                let params = self.list(vec![Self::text(position.variable())]);
                self.emit(node.clone(), vocab::LBO_HAS_PARAMETERS, params);
            }
            Action::Map { key, value } => {
                self.emit_type(&node, vocab::LBO_MAP);
                let params = self.list(vec![
                    Self::text(key.variable()),
                    Self::text(value.variable()),
                ]);
                self.emit(node.clone(), vocab::LBO_HAS_PARAMETERS, params);
            }
        }
        node
    }
}

/// Reads every blueprint node in the graph, in statement order.
pub fn import_blueprints(
    graph: &Graph,
    registry: &ExtensionRegistry,
) -> Result<Vec<Blueprint>, LboImportError> {
    let mut nodes: Vec<Term> = Vec::new();
    for node in graph.subjects_of_type(vocab::LBO_BLUEPRINT) {
        if !nodes.contains(node) {
            nodes.push(node.clone());
        }
    }
    if nodes.is_empty() {
        return Err(LboShapeError {
            problems: vec!["no node typed lbo:Blueprint".to_owned()],
        }
        .into());
    }
    nodes
        .iter()
        .map(|node| import_node(graph, node, registry))
        .collect()
}

/// Reads a graph expected to hold exactly one blueprint.
pub fn import_blueprint(
    graph: &Graph,
    registry: &ExtensionRegistry,
) -> Result<Blueprint, LboImportError> {
    let mut blueprints = import_blueprints(graph, registry)?;
    if blueprints.len() != 1 {
        return Err(LboShapeError {
            problems: vec![format!(
                "expected exactly one lbo:Blueprint node, found {}",
                blueprints.len()
            )],
        }
        .into());
    }
    Ok(blueprints.remove(0))
}

fn import_node(
    graph: &Graph,
    node: &Term,
    registry: &ExtensionRegistry,
) -> Result<Blueprint, LboImportError> {
    let mut reader = Reader {
        graph,
        problems: Vec::new(),
    };

    let name = reader
        .one_literal(node, vocab::LBO_NAME, "lbo:name")
        .unwrap_or_default();
    let label = reader
        .one_literal(node, vocab::RDFS_LABEL, "rdfs:label")
        .unwrap_or_default();
    let description = reader
        .one_literal(node, vocab::RDFS_COMMENT, "rdfs:comment")
        .unwrap_or_default();
    let metric_uri = reader
        .one_iri(node, vocab::LBO_RELATED_TO, "lbo:relatedTo")
        .unwrap_or_else(|| Iri::new(""));
    let finally_expr = reader
        .one(node, vocab::LBO_HAS_RESULT, "lbo:hasResult")
        .and_then(|result| reader.read_result(&result));
    let rule_parts = reader
        .one(
            node,
            vocab::LBO_HAS_PATTERN_MATCHING_RULE,
            "lbo:hasPatternMatchingRule",
        )
        .and_then(|rule| reader.read_rule(&rule));

    if !reader.problems.is_empty() {
        return Err(LboShapeError {
            problems: reader.problems,
        }
        .into());
    }
    let finally_expr = finally_expr.expect("no problems recorded");
    let (match_expr, actions) = rule_parts.expect("no problems recorded");

    let violations =
        semantic_violations(&metric_uri, &match_expr, &actions, &finally_expr, registry);
    if !violations.is_empty() {
        return Err(ValidationError {
            blueprint: name,
            violations,
        }
        .into());
    }
    Ok(Blueprint {
        name,
        metric_uri,
        label,
        description,
        match_expr,
        actions,
        finally_expr,
    })
}

struct Reader<'g> {
    graph: &'g Graph,
    problems: Vec<String>,
}

impl Reader<'_> {
    fn problem(&mut self, text: impl Into<String>) {
        self.problems.push(text.into());
    }

    fn describe(term: &Term) -> String {
        match term {
            Term::Iri(iri) => format!("<{}>", iri.as_str()),
            Term::Blank(label) => format!("_:{label}"),
            Term::Literal(lit) => format!("\"{}\"", lit.lexical),
        }
    }

    /// Exactly one object for (node, predicate); otherwise records a
    /// missing or cardinality problem.
    fn one(&mut self, node: &Term, predicate: &str, display: &str) -> Option<Term> {
        let objects = self.graph.objects(node, predicate);
        match objects.len() {
            1 => Some(objects[0].clone()),
            0 => {
                self.problem(format!("{}: missing {display}", Self::describe(node)));
                None
            }
            n => {
                self.problem(format!(
                    "{}: expected exactly one {display}, found {n}",
                    Self::describe(node)
                ));
                None
            }
        }
    }

    fn one_literal(&mut self, node: &Term, predicate: &str, display: &str) -> Option<String> {
        match self.one(node, predicate, display)? {
            Term::Literal(lit) => Some(lit.lexical),
            other => {
                self.problem(format!(
                    "{}: {display} must be a literal, found {}",
                    Self::describe(node),
                    Self::describe(&other)
                ));
                None
            }
        }
    }

    fn one_iri(&mut self, node: &Term, predicate: &str, display: &str) -> Option<Iri> {
        match self.one(node, predicate, display)? {
            Term::Iri(iri) => Some(iri),
            other => {
                self.problem(format!(
                    "{}: {display} must be an IRI, found {}",
                    Self::describe(node),
                    Self::describe(&other)
                ));
                None
            }
        }
    }

    fn read_list(&mut self, head: &Term) -> Option<Vec<Term>> {
        let mut items = Vec::new();
        let mut current = head.clone();
        let mut visited: HashSet<Term> = HashSet::new();
        loop {
            if current == Term::iri(vocab::RDF_NIL) {
                return Some(items);
            }
            if !visited.insert(current.clone()) {
                self.problem(format!("cyclic rdf:List at {}", Self::describe(&current)));
                return None;
            }
            let first = self.one(&current, vocab::RDF_FIRST, "rdf:first")?;
            let rest = self.one(&current, vocab::RDF_REST, "rdf:rest")?;
            items.push(first);
            current = rest;
        }
    }

    fn node_class(&mut self, node: &Term, among: &[&str]) -> Option<String> {
        let types = self.graph.objects(node, vocab::RDF_TYPE);
        let mut found = None;
        for t in types {
            if let Term::Iri(iri) = t {
                if among.contains(&iri.as_str()) {
                    if found.is_some() {
                        self.problem(format!(
                            "{}: more than one recognized rdf:type",
                            Self::describe(node)
                        ));
                        return None;
                    }
                    found = Some(iri.as_str().to_owned());
                }
            }
        }
        if found.is_none() {
            self.problem(format!(
                "{}: no recognized rdf:type (expected one of {})",
                Self::describe(node),
                among.join(", ")
            ));
        }
        found
    }

    fn action_kind_from_iri(&mut self, term: &Term) -> Option<ActionKind> {
        match term.as_iri().map(Iri::as_str) {
            Some(vocab::LBO_MAP) => Some(ActionKind::Map),
            Some(vocab::LBO_COUNT) => Some(ActionKind::Count),
            Some(vocab::LBO_UNIQUE) => Some(ActionKind::Unique),
            _ => {
                self.problem(format!(
                    "{}: not an action kind (lbo:Map, lbo:Count, lbo:Unique)",
                    Self::describe(term)
                ));
                None
            }
        }
    }

    fn numeric_literal(&mut self, term: &Term) -> Option<Rational> {
        match term {
            Term::Literal(lit) => match lit.numeric_value() {
                Some(value) => Some(value),
                None => {
                    self.problem(format!(
                        "{}: expected a numeric literal",
                        Self::describe(term)
                    ));
                    None
                }
            },
            other => {
                self.problem(format!(
                    "{}: expected a numeric literal",
                    Self::describe(other)
                ));
                None
            }
        }
    }

    fn variable_literal(&mut self, term: &Term) -> Option<TriplePosition> {
        let text = match term {
            Term::Literal(lit) => lit.lexical.clone(),
            other => {
                self.problem(format!(
                    "{}: expected a variable literal \"?s\", \"?p\" or \"?o\"",
                    Self::describe(other)
                ));
                return None;
            }
        };
        match TriplePosition::from_variable(&text) {
            Some(position) => Some(position),
            None => {
                self.problem(format!("\"{text}\": not one of \"?s\", \"?p\", \"?o\""));
                None
            }
        }
    }

    fn read_result(&mut self, node: &Term) -> Option<FinallyExpr> {
        let class = self.node_class(
            node,
            &[
                vocab::LBO_RATIO,
                vocab::LBO_ACTION_RESULTS,
                vocab::LBO_OUTPUT_RESULT,
            ],
        )?;
        let params_head = self.one(
            node,
            vocab::LBO_HAS_OUTPUT_PARAMETERS,
            "lbo:hasOutputParameters",
        )?;
        let params = self.read_list(&params_head)?;
        match class.as_str() {
            vocab::LBO_RATIO => {
                if params.len() != 2 {
                    self.problem(format!(
                        "{}: lbo:Ratio takes exactly two output parameters, found {}",
                        Self::describe(node),
                        params.len()
                    ));
                    return None;
                }
                let numerator = self.read_operand(&params[0])?;
                let denominator = self.read_operand(&params[1])?;
                Some(FinallyExpr::Ratio(numerator, denominator))
            }
            vocab::LBO_ACTION_RESULTS => {
                if params.len() != 1 {
                    self.problem(format!(
                        "{}: lbo:ActionResults takes exactly one output parameter",
                        Self::describe(node)
                    ));
                    return None;
                }
                Some(FinallyExpr::ActionResult(
                    self.action_kind_from_iri(&params[0])?,
                ))
            }
            _ => {
                if params.len() != 1 {
                    self.problem(format!(
                        "{}: lbo:OutputResult takes exactly one output parameter",
                        Self::describe(node)
                    ));
                    return None;
                }
                Some(FinallyExpr::Number(self.numeric_literal(&params[0])?))
            }
        }
    }

    fn read_operand(&mut self, term: &Term) -> Option<RatioOperand> {
        match term {
            Term::Literal(_) => Some(RatioOperand::Number(self.numeric_literal(term)?)),
            node => {
                let class = self.node_class(node, &[vocab::LBO_ACTION_RESULTS])?;
                debug_assert_eq!(class, vocab::LBO_ACTION_RESULTS);
                let head = self.one(
                    node,
                    vocab::LBO_HAS_OUTPUT_PARAMETERS,
                    "lbo:hasOutputParameters",
                )?;
                let params = self.read_list(&head)?;
                if params.len() != 1 {
                    self.problem(format!(
                        "{}: lbo:ActionResults takes exactly one output parameter",
                        Self::describe(node)
                    ));
                    return None;
                }
                Some(RatioOperand::ActionResult(
                    self.action_kind_from_iri(&params[0])?,
                ))
            }
        }
    }

    fn read_rule(&mut self, rule: &Term) -> Option<(ConditionExpr, Vec<Action>)> {
        if !self.graph.has_type(rule, vocab::DRMO_RULE) {
            self.problem(format!("{}: not typed drmo:Rule", Self::describe(rule)));
        }
        let condition_node = self.one(rule, vocab::DRMO_IS_COMPOSED_OF, "drmo:isComposedOf")?;
        let expr = self.read_expr(&condition_node)?;
        let trigger_nodes: Vec<Term> = self
            .graph
            .objects(rule, vocab::DRMO_TRIGGERS)
            .into_iter()
            .cloned()
            .collect();
        if trigger_nodes.is_empty() {
            self.problem(format!(
                "{}: missing drmo:triggers (at least one action)",
                Self::describe(rule)
            ));
            return None;
        }
        let mut actions = Vec::new();
        for node in &trigger_nodes {
            actions.push(self.read_action(node)?);
        }
        Some((expr, actions))
    }

    fn read_expr(&mut self, node: &Term) -> Option<ConditionExpr> {
        let class = self.node_class(
            node,
            &[
                vocab::LBO_CONDITION_GROUP,
                vocab::LBO_TYPE_OF,
                vocab::LBO_FUNCTION_CALL,
                vocab::DRMO_CONDITION,
            ],
        )?;
        if class == vocab::LBO_CONDITION_GROUP {
            let operator = self.one_literal(node, vocab::LBO_OPERATOR, "lbo:operator")?;
            let op = match operator.as_str() {
                "and" => LogicalOp::And,
                "or" => LogicalOp::Or,
                other => {
                    self.problem(format!(
                        "{}: lbo:operator must be \"and\" or \"or\", found \"{other}\"",
                        Self::describe(node)
                    ));
                    return None;
                }
            };
            let head = self.one(node, vocab::LBO_HAS_OPERANDS, "lbo:hasOperands")?;
            let operands = self.read_list(&head)?;
            if operands.len() != 2 {
                self.problem(format!(
                    "{}: a condition group takes exactly two operands, found {}",
                    Self::describe(node),
                    operands.len()
                ));
                return None;
            }
            let left = self.read_expr(&operands[0])?;
            let right = self.read_expr(&operands[1])?;
            return Some(ConditionExpr::Node {
                op,
                left: Box::new(left),
                right: Box::new(right),
            });
        }
        Some(ConditionExpr::Leaf(self.read_condition(node, &class)?))
    }

    fn read_condition(&mut self, node: &Term, class: &str) -> Option<Condition> {
        match class {
            vocab::LBO_TYPE_OF => {
                let variable = self.one_literal(node, vocab::LBO_ON_TERM, "lbo:onTerm")?;
                let position = match variable.as_str() {
                    "?s" => NodePosition::Subject,
                    "?o" => NodePosition::Object,
                    other => {
                        self.problem(format!(
                            "{}: typeof applies to \"?s\" or \"?o\", found \"{other}\"",
                            Self::describe(node)
                        ));
                        return None;
                    }
                };
                let class_iri = self.one_iri(node, vocab::LBO_VALUE, "lbo:value")?;
                Some(Condition::TypeOf {
                    position,
                    class: class_iri,
                })
            }
            vocab::LBO_FUNCTION_CALL => {
                let name = self.one_literal(node, vocab::LBO_FUNCTION_NAME, "lbo:functionName")?;
                let args = match self.graph.objects(node, vocab::LBO_HAS_PARAMETERS).first() {
                    Some(head) => {
                        let head = (*head).clone();
                        let items = self.read_list(&head)?;
                        let mut args = Vec::new();
                        for item in &items {
                            args.push(self.variable_literal(item)?);
                        }
                        args
                    }
                    None => Vec::new(),
                };
                Some(Condition::FunctionCall { name, args })
            }
            _ => {
                let variable = self.one_literal(node, vocab::LBO_ON_TERM, "lbo:onTerm")?;
                let value = self.one(node, vocab::LBO_VALUE, "lbo:value")?;
                match variable.as_str() {
                    "?s" | "?p" => {
                        let iri = match value {
                            Term::Iri(iri) => iri,
                            other => {
                                self.problem(format!(
                                    "{}: lbo:value must be an IRI for {variable}, found {}",
                                    Self::describe(node),
                                    Self::describe(&other)
                                ));
                                return None;
                            }
                        };
                        Some(if variable == "?s" {
                            Condition::SubjectEquals(iri)
                        } else {
                            Condition::PredicateEquals(iri)
                        })
                    }
                    "?o" => match value {
                        Term::Iri(iri) => Some(Condition::ObjectEqualsIri(iri)),
                        Term::Literal(lit) => {
                            let is_numeric = lit.datatype.as_ref().is_some_and(|dt| {
                                matches!(dt.as_str(), vocab::XSD_INTEGER | vocab::XSD_DECIMAL)
                            });
                            if is_numeric {
                                match lit.numeric_value() {
                                    Some(number) => Some(Condition::ObjectEqualsLiteral(
                                        LiteralValue::Number(number),
                                    )),
                                    None => {
                                        self.problem(format!(
                                            "\"{}\": numeric datatype with non-numeric form",
                                            lit.lexical
                                        ));
                                        None
                                    }
                                }
                            } else {
                                Some(Condition::ObjectEqualsLiteral(LiteralValue::Text(
                                    lit.lexical,
                                )))
                            }
                        }
                        other => {
                            self.problem(format!(
                                "{}: lbo:value cannot be a blank node",
                                Self::describe(&other)
                            ));
                            None
                        }
                    },
                    other => {
                        self.problem(format!(
                            "{}: lbo:onTerm must be \"?s\", \"?p\" or \"?o\", found \"{other}\"",
                            Self::describe(node)
                        ));
                        None
                    }
                }
            }
        }
    }

    fn read_action(&mut self, node: &Term) -> Option<Action> {
        let class =
            self.node_class(node, &[vocab::LBO_COUNT, vocab::LBO_UNIQUE, vocab::LBO_MAP])?;
        match class.as_str() {
            vocab::LBO_COUNT => Some(Action::Count),
            vocab::LBO_UNIQUE => {
                let head = self.one(node, vocab::LBO_HAS_PARAMETERS, "lbo:hasParameters")?;
                let params = self.read_list(&head)?;
                if params.len() != 1 {
                    self.problem(format!(
                        "{}: lbo:Unique takes exactly one parameter",
                        Self::describe(node)
                    ));
                    return None;
                }
                Some(Action::Unique(self.variable_literal(&params[0])?))
            }
            _ => {
                let head = self.one(node, vocab::LBO_HAS_PARAMETERS, "lbo:hasParameters")?;
                let params = self.read_list(&head)?;
                if params.len() != 2 {
                    self.problem(format!(
                        "{}: lbo:Map takes exactly two parameters",
                        Self::describe(node)
                    ));
                    return None;
                }
                Some(Action::Map {
                    key: self.variable_literal(&params[0])?,
                    value: self.variable_literal(&params[1])?,
                })
            }
        }
    }
}
