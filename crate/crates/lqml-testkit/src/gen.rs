//! Deterministic random datasets and blueprints covering the implemented
//! condition/action space.

use crate::rng::Rng;
use lqml::ast::{Clause, RawBlueprint, SourceSpan};
use lqml::model::{
    Action, ActionKind, Blueprint, Condition, ConditionExpr, ExtensionRegistry, FinallyExpr,
    LiteralValue, LogicalOp, RatioOperand,
};
use lqml::rational::Rational;
use lqml::term::{Iri, Literal, NodePosition, Term, Triple, TriplePosition};
use lqml::vocab;

const SUBJECTS: &[&str] = &[
    "http://data.example.org/s0",
    "http://data.example.org/s1",
    "http://data.example.org/s2",
    "http://data.example.org/s3",
    "http://data.example.org/s4",
    "http://data.example.org/s5",
];
const CLASSES: &[&str] = &[
    "http://data.example.org/C0",
    "http://data.example.org/C1",
    "http://www.example.org/dp#Class",
];
const PREDICATES: &[&str] = &[
    vocab::RDF_TYPE,
    "http://www.w3.org/2000/01/rdf-schema#subClassOf",
    vocab::RDFS_LABEL,
    vocab::RDFS_COMMENT,
    "http://data.example.org/p0",
    "http://data.example.org/p1",
];
const TEXTS: &[&str] = &["alpha", "beta", "gamma"];
const NUMBERS: &[&str] = &["1", "2.5", "5.0"];
const BLANKS: &[&str] = &["n0", "n1"];

/// The functions random blueprints may call: both pure predicates over
/// the selected terms.
pub fn standard_registry() -> ExtensionRegistry {
    let mut registry = ExtensionRegistry::new();
    registry
        .register("isResolvable", |terms: &[Term]| {
            !terms.is_empty() && terms.iter().all(|t| matches!(t, Term::Iri(_)))
        })
        .unwrap();
    registry
        .register("hasLangTag", |terms: &[Term]| {
            terms
                .first()
                .and_then(|t| t.as_literal())
                .is_some_and(|l| l.lang.is_some())
        })
        .unwrap();
    registry
}

pub fn random_term_position(rng: &mut Rng) -> TriplePosition {
    *rng.pick(&[
        TriplePosition::Subject,
        TriplePosition::Predicate,
        TriplePosition::Object,
    ])
}

pub fn random_dataset(rng: &mut Rng, size: usize) -> Vec<Triple> {
    (0..size)
        .map(|_| {
            let subject = if rng.chance(1, 8) {
                Term::Blank((*rng.pick(BLANKS)).to_owned())
            } else {
                Term::iri(*rng.pick(SUBJECTS))
            };
            let predicate = Iri::new(*rng.pick(PREDICATES));
            let object = match rng.below(6) {
                0 => Term::iri(*rng.pick(CLASSES)),
                1 => Term::iri(*rng.pick(SUBJECTS)),
                2 => Term::Blank((*rng.pick(BLANKS)).to_owned()),
                3 => Term::Literal(Literal::plain(*rng.pick(TEXTS))),
                4 => Term::Literal(Literal::with_lang(*rng.pick(TEXTS), "en")),
                _ => Term::Literal(Literal::plain(*rng.pick(NUMBERS))),
            };
            Triple::new(subject, predicate, object)
        })
        .collect()
}

fn random_condition(rng: &mut Rng, allow_functions: bool) -> Condition {
    let upper = if allow_functions { 7 } else { 6 };
    match rng.below(upper) {
        0 => Condition::TypeOf {
            position: *rng.pick(&[NodePosition::Subject, NodePosition::Object]),
            class: Iri::new(*rng.pick(CLASSES)),
        },
        1 => Condition::SubjectEquals(Iri::new(*rng.pick(SUBJECTS))),
        2 => Condition::PredicateEquals(Iri::new(*rng.pick(PREDICATES))),
        3 => Condition::ObjectEqualsIri(Iri::new(*rng.pick(CLASSES))),
        4 => Condition::ObjectEqualsLiteral(LiteralValue::Text((*rng.pick(TEXTS)).to_owned())),
        5 => Condition::ObjectEqualsLiteral(LiteralValue::Number(
            Rational::parse_decimal(rng.pick(NUMBERS)).unwrap(),
        )),
        _ => {
            let name = *rng.pick(&["isResolvable", "hasLangTag"]);
            let arg_count = 1 + rng.below(3);
            let args = (0..arg_count).map(|_| random_term_position(rng)).collect();
            Condition::FunctionCall {
                name: name.to_owned(),
                args,
            }
        }
    }
}

pub fn random_expr(rng: &mut Rng, depth: usize, allow_functions: bool) -> ConditionExpr {
    if depth == 0 || rng.chance(2, 5) {
        return ConditionExpr::Leaf(random_condition(rng, allow_functions));
    }
    let op = if rng.chance(1, 2) {
        LogicalOp::And
    } else {
        LogicalOp::Or
    };
    ConditionExpr::Node {
        op,
        left: Box::new(random_expr(rng, depth - 1, allow_functions)),
        right: Box::new(random_expr(rng, depth - 1, allow_functions)),
    }
}

fn random_actions(rng: &mut Rng) -> Vec<Action> {
    let mut actions = Vec::new();
    if rng.chance(2, 3) {
        actions.push(Action::Count);
    }
    if rng.chance(1, 2) {
        actions.push(Action::Unique(random_term_position(rng)));
    }
    if rng.chance(1, 3) {
        let key = random_term_position(rng);
        let value = loop {
            let candidate = random_term_position(rng);
            if candidate != key {
                break candidate;
            }
        };
        actions.push(Action::Map { key, value });
    }
    if actions.is_empty() {
        actions.push(Action::Count);
    }
    actions
}

fn random_finally(rng: &mut Rng, actions: &[Action]) -> FinallyExpr {
    let kinds: Vec<ActionKind> = actions.iter().map(Action::kind).collect();
    let operand = |rng: &mut Rng| -> RatioOperand {
        if rng.chance(1, 4) {
            RatioOperand::Number(Rational::parse_decimal(rng.pick(NUMBERS)).unwrap())
        } else {
            RatioOperand::ActionResult(*rng.pick(&kinds))
        }
    };
    match rng.below(4) {
        0 => FinallyExpr::Number(Rational::parse_decimal(rng.pick(NUMBERS)).unwrap()),
        1 => FinallyExpr::ActionResult(*rng.pick(&kinds)),
        _ => FinallyExpr::Ratio(operand(rng), operand(rng)),
    }
}

/// A structurally valid blueprint drawn from the implemented space.
/// Function-call conditions appear only when `allow_functions` is set;
/// they resolve against [`standard_registry`].
pub fn random_blueprint(rng: &mut Rng, index: usize, allow_functions: bool) -> Blueprint {
    let actions = random_actions(rng);
    let finally_expr = random_finally(rng, &actions);
    Blueprint {
        name: format!("Generated{index}"),
        metric_uri: Iri::new(format!("http://metrics.example.org/m{index}")),
        label: format!("Generated metric {index}"),
        description: format!("Randomly generated blueprint number {index}"),
        match_expr: random_expr(rng, 2, allow_functions),
        actions,
        finally_expr,
    }
}

/// A raw syntax tree for parser round-trip properties, with awkward
/// characters in the text clauses.
pub fn random_raw_blueprint(rng: &mut Rng, index: usize) -> RawBlueprint {
    let blueprint = random_blueprint(rng, index, true);
    let decorations = ["", " with \"quotes\"", " with back\\slash", " plain"];
    RawBlueprint {
        name: blueprint.name.clone(),
        clauses: vec![
            Clause::Metric(blueprint.metric_uri.clone()),
            Clause::Label(format!("{}{}", blueprint.label, rng.pick(&decorations))),
            Clause::Description(format!(
                "{}{}",
                blueprint.description,
                rng.pick(&decorations)
            )),
            Clause::Match(blueprint.match_expr.clone()),
            Clause::Action(blueprint.actions.clone()),
            Clause::Finally(blueprint.finally_expr.clone()),
        ],
        span: SourceSpan::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lqml::model::check_blueprint;

    #[test]
    fn random_blueprints_are_valid() {
        let registry = standard_registry();
        let mut rng = Rng::new(11);
        for i in 0..50 {
            let bp = random_blueprint(&mut rng, i, true);
            assert!(bp.feature_complete());
            assert!(check_blueprint(&bp, &registry).is_empty());
        }
    }
}
