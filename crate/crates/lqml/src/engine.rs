//! Streaming evaluation of blueprints over a triple source.
//!
//! Evaluation runs in one pass unless some blueprint uses `typeof`; in
//! that case a first pass collects the `rdf:type` assertions into a
//! [`TypeIndex`] and the source is reopened for the matching pass. Memory
//! stays bounded by the accumulators (type index, uniqueness sets, map),
//! never by the dataset size.

use crate::model::{
    Action, ActionKind, Blueprint, Condition, ConditionExpr, ExtensionRegistry, FinallyExpr,
    LiteralValue, LogicalOp, RatioOperand,
};
use crate::ntriples::{RdfError, TripleSource};
use crate::rational::Rational;
use crate::term::{Iri, Term, Triple};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

/// How many passes over the source an assessment needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassPlan {
    SinglePass,
    TwoPass,
}

/// A single pass suffices exactly when no blueprint contains a `typeof`
/// condition.
pub fn plan_passes(blueprints: &[Blueprint]) -> PassPlan {
    if blueprints.iter().any(|b| b.match_expr.contains_typeof()) {
        PassPlan::TwoPass
    } else {
        PassPlan::SinglePass
    }
}

/// The classes asserted for each subject term via `rdf:type`.
#[derive(Debug, Clone, Default)]
pub struct TypeIndex {
    types_of: HashMap<Term, HashSet<Iri>>,
}

impl TypeIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the triple when it is an `rdf:type` assertion with an IRI
    /// class; ignores everything else.
    pub fn observe(&mut self, triple: &Triple) {
        if triple.is_type_assertion() {
            if let Term::Iri(class) = &triple.object {
                self.types_of
                    .entry(triple.subject.clone())
                    .or_default()
                    .insert(class.clone());
            }
        }
    }

    pub fn has_type(&self, term: &Term, class: &Iri) -> bool {
        self.types_of
            .get(term)
            .is_some_and(|classes| classes.contains(class))
    }

    pub fn len(&self) -> usize {
        self.types_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types_of.is_empty()
    }
}

/// Evaluates a condition tree against one triple.
///
/// IRI equality is exact string comparison; blank nodes never equal an
/// IRI. Literal text compares by lexical form with language tags and
/// datatypes ignored, except that numeric condition values compare
/// numerically.
pub fn eval_condition(
    expr: &ConditionExpr,
    triple: &Triple,
    index: &TypeIndex,
    registry: &ExtensionRegistry,
) -> bool {
    match expr {
        ConditionExpr::Leaf(condition) => eval_leaf(condition, triple, index, registry),
        ConditionExpr::Node { op, left, right } => match op {
            LogicalOp::And => {
                eval_condition(left, triple, index, registry)
                    && eval_condition(right, triple, index, registry)
            }
            LogicalOp::Or => {
                eval_condition(left, triple, index, registry)
                    || eval_condition(right, triple, index, registry)
            }
        },
    }
}

fn eval_leaf(
    condition: &Condition,
    triple: &Triple,
    index: &TypeIndex,
    registry: &ExtensionRegistry,
) -> bool {
    match condition {
        Condition::TypeOf { position, class } => {
            let term = triple.term_at(position.as_triple_position());
            index.has_type(&term, class)
        }
        Condition::SubjectEquals(iri) => triple.subject.as_iri() == Some(iri),
        Condition::PredicateEquals(iri) => &triple.predicate == iri,
        Condition::ObjectEqualsIri(iri) => triple.object.as_iri() == Some(iri),
        Condition::ObjectEqualsLiteral(value) => match triple.object.as_literal() {
            Some(literal) => match value {
                LiteralValue::Text(text) => literal.lexical == *text,
                LiteralValue::Number(number) => literal.numeric_value() == Some(*number),
            },
            None => false,
        },
        Condition::FunctionCall { name, args } => match registry.get(name) {
            Some(predicate) => {
                let terms: Vec<Term> = args.iter().map(|pos| triple.term_at(*pos)).collect();
                predicate(&terms)
            }
            None => false,
        },
    }
}

/// Per-blueprint mutable accumulator.
#[derive(Debug, Clone, Default)]
pub struct ActionState {
    counter: u64,
    unique_seen: HashSet<Term>,
    map_accumulator: HashMap<Term, Vec<Term>>,
}

impl ActionState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Applies every action to a triple that already matched.
    pub fn apply(&mut self, actions: &[Action], triple: &Triple) {
        for action in actions {
            match action {
                Action::Count => self.counter += 1,
                Action::Unique(position) => {
                    self.unique_seen.insert(triple.term_at(*position));
                }
                Action::Map { key, value } => {
                    self.map_accumulator
                        .entry(triple.term_at(*key))
                        .or_default()
                        .push(triple.term_at(*value));
                }
            }
        }
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn unique_count(&self) -> u64 {
        self.unique_seen.len() as u64
    }

    /// The scalar value of a map result: the number of distinct keys.
    pub fn map_key_count(&self) -> u64 {
        self.map_accumulator.len() as u64
    }

    pub fn map_values(&self, key: &Term) -> Option<&[Term]> {
        self.map_accumulator.get(key).map(|v| v.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("division by zero in finally expression")]
    DivisionByZero,
}

/// Computes the blueprint's final value from its accumulator.
pub fn finalize(state: &ActionState, expr: &FinallyExpr) -> Result<Rational, MetricError> {
    let action_value = |kind: ActionKind| -> Rational {
        Rational::integer(match kind {
            ActionKind::Count => state.counter() as i128,
            ActionKind::Unique => state.unique_count() as i128,
            ActionKind::Map => state.map_key_count() as i128,
        })
    };
    let operand_value = |op: &RatioOperand| -> Rational {
        match op {
            RatioOperand::Number(n) => *n,
            RatioOperand::ActionResult(kind) => action_value(*kind),
        }
    };
    match expr {
        FinallyExpr::Number(n) => Ok(*n),
        FinallyExpr::ActionResult(kind) => Ok(action_value(*kind)),
        FinallyExpr::Ratio(numerator, denominator) => operand_value(numerator)
            .checked_div(operand_value(denominator))
            .ok_or(MetricError::DivisionByZero),
    }
}

/// A metric value with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationRecord {
    pub metric_uri: Iri,
    pub value: Rational,
    pub dataset_id: String,
    pub computed_at: String,
}

/// Per-blueprint outcome of one assessment run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    pub blueprint_name: String,
    pub metric_uri: Iri,
    pub outcome: Result<ObservationRecord, MetricError>,
}

/// Runs every blueprint over the source, reading it once per planned
/// pass. Source errors abort the whole run; metric errors (division by
/// zero) are reported per blueprint and leave the others untouched.
pub fn assess<S: TripleSource + ?Sized>(
    blueprints: &[Blueprint],
    source: &mut S,
    registry: &ExtensionRegistry,
    dataset_id: &str,
    computed_at: &str,
) -> Result<Vec<Assessment>, RdfError> {
    let mut index = TypeIndex::new();
    if plan_passes(blueprints) == PassPlan::TwoPass {
        while let Some(triple) = source.next_triple()? {
            index.observe(&triple);
        }
        source.reopen()?;
    }

    let mut states: Vec<ActionState> = blueprints.iter().map(|_| ActionState::new()).collect();
    while let Some(triple) = source.next_triple()? {
        for (blueprint, state) in blueprints.iter().zip(states.iter_mut()) {
            if eval_condition(&blueprint.match_expr, &triple, &index, registry) {
                state.apply(&blueprint.actions, &triple);
            }
        }
    }

    Ok(blueprints
        .iter()
        .zip(states.iter())
        .map(|(blueprint, state)| Assessment {
            blueprint_name: blueprint.name.clone(),
            metric_uri: blueprint.metric_uri.clone(),
            outcome: finalize(state, &blueprint.finally_expr).map(|value| ObservationRecord {
                metric_uri: blueprint.metric_uri.clone(),
                value,
                dataset_id: dataset_id.to_owned(),
                computed_at: computed_at.to_owned(),
            }),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;
    use crate::ntriples::MemorySource;
    use crate::parser::parse_source;
    use crate::term::{Literal, TriplePosition};
    use crate::vocab;

    fn blueprint(source: &str) -> Blueprint {
        let ast = parse_source(source).unwrap().remove(0);
        validate(&ast, &ExtensionRegistry::new()).unwrap()
    }

    fn subclass_counter() -> Blueprint {
        blueprint(
            r#"
def{SubClassCounter}:
  metric{<http://www.example.org/ebiqm#SubClassCountingMetric>};
  label{"SubClassCountingMetric"};
  description{"Counts resources defined as sub-classes"};
  match{(?p == <http://www.w3.org/2000/01/rdf-schema#subClassOf>)};
  action{count, unique(?s)};
  finally{ratio(actionresult(count), actionresult(unique))}.
"#,
        )
    }

    fn human_readable_label() -> Blueprint {
        blueprint(
            r#"
def{HumanReadableLabel}:
  metric{<http://www.example.org/dpqm#SubClassCountingMetric>};
  label{"Human Readable Labelling Metric"};
  description{"Ratio of human readable labels of defined resources"};
  match{(typeof(?s) == <http://www.example.org/dp#Class>) && ((?p == <http://www.w3.org/2000/01/rdf-schema#label>) || (?p == <http://www.w3.org/2000/01/rdf-schema#comment>))};
  action{count, unique(?s)};
  finally{ratio(actionresult(count), actionresult(unique))}.
"#,
        )
    }

    fn iri_triple(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(Term::iri(s), Iri::new(p), Term::iri(o))
    }

    fn lit_triple(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(Term::iri(s), Iri::new(p), Term::Literal(Literal::plain(o)))
    }

    fn five_triple_fixture() -> Vec<Triple> {
        let subclass_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
        vec![
            iri_triple("http://ex.org/a", subclass_of, "http://ex.org/b"),
            iri_triple("http://ex.org/a", subclass_of, "http://ex.org/c"),
            iri_triple("http://ex.org/d", subclass_of, "http://ex.org/b"),
            lit_triple("http://ex.org/a", vocab::RDFS_LABEL, "A"),
            iri_triple("http://ex.org/d", vocab::RDF_TYPE, "http://ex.org/C"),
        ]
    }

    #[test]
    fn pass_planning() {
        assert_eq!(plan_passes(&[subclass_counter()]), PassPlan::SinglePass);
        assert_eq!(plan_passes(&[human_readable_label()]), PassPlan::TwoPass);
        assert_eq!(
            plan_passes(&[subclass_counter(), human_readable_label()]),
            PassPlan::TwoPass
        );
    }

    #[test]
    fn leaf_and_node_evaluation() {
        let registry = ExtensionRegistry::new();
        let empty = TypeIndex::new();
        let subclass_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";

        let expr = ConditionExpr::Leaf(Condition::PredicateEquals(Iri::new(subclass_of)));
        let t = iri_triple("http://ex.org/a", subclass_of, "http://ex.org/b");
        assert!(eval_condition(&expr, &t, &empty, &registry));

        // typeof over an empty index matches nothing
        let typeof_expr = ConditionExpr::Leaf(Condition::TypeOf {
            position: crate::term::NodePosition::Subject,
            class: Iri::new("http://ex.org/C"),
        });
        assert!(!eval_condition(&typeof_expr, &t, &empty, &registry));

        // the human-readable-label expression, traced both ways
        let expr = human_readable_label().match_expr;
        let mut index = TypeIndex::new();
        index.observe(&iri_triple(
            "http://ex.org/x",
            vocab::RDF_TYPE,
            "http://www.example.org/dp#Class",
        ));
        let comment_triple = lit_triple("http://ex.org/x", vocab::RDFS_COMMENT, "hi");
        assert!(eval_condition(&expr, &comment_triple, &index, &registry));
        let unindexed = lit_triple("http://ex.org/y", vocab::RDFS_LABEL, "hi");
        assert!(!eval_condition(&expr, &unindexed, &index, &registry));
    }

    #[test]
    fn blank_nodes_never_equal_iris() {
        let registry = ExtensionRegistry::new();
        let index = TypeIndex::new();
        let expr = ConditionExpr::Leaf(Condition::ObjectEqualsIri(Iri::new("http://ex.org/b")));
        let t = Triple::new(
            Term::iri("http://ex.org/a"),
            Iri::new("http://ex.org/p"),
            Term::Blank("b".into()),
        );
        assert!(!eval_condition(&expr, &t, &index, &registry));
    }

    #[test]
    fn numeric_object_literals_compare_numerically() {
        let registry = ExtensionRegistry::new();
        let index = TypeIndex::new();
        let expr = ConditionExpr::Leaf(Condition::ObjectEqualsLiteral(LiteralValue::Number(
            Rational::integer(5),
        )));
        assert!(eval_condition(
            &expr,
            &lit_triple("http://s", "http://p", "5.0"),
            &index,
            &registry
        ));
        assert!(!eval_condition(
            &expr,
            &lit_triple("http://s", "http://p", "5x"),
            &index,
            &registry
        ));
    }

    #[test]
    fn action_accumulation() {
        let actions = [Action::Count, Action::Unique(TriplePosition::Subject)];
        let mut state = ActionState::new();
        for t in [
            iri_triple("http://a", "http://p", "http://o1"),
            iri_triple("http://a", "http://p", "http://o2"),
            iri_triple("http://b", "http://p", "http://o3"),
        ] {
            state.apply(&actions, &t);
        }
        assert_eq!(state.counter(), 3);
        assert_eq!(state.unique_count(), 2);

        let empty = ActionState::new();
        assert_eq!(empty.counter(), 0);

        let mut map_state = ActionState::new();
        let map_actions = [Action::Map {
            key: TriplePosition::Subject,
            value: TriplePosition::Object,
        }];
        map_state.apply(
            &map_actions,
            &iri_triple("http://a", "http://p", "http://x"),
        );
        map_state.apply(
            &map_actions,
            &iri_triple("http://a", "http://p", "http://y"),
        );
        assert_eq!(map_state.map_key_count(), 1);
        assert_eq!(
            map_state.map_values(&Term::iri("http://a")).unwrap().len(),
            2
        );
    }

    #[test]
    fn finalize_values() {
        let mut state = ActionState::new();
        let actions = [Action::Count, Action::Unique(TriplePosition::Subject)];
        for t in [
            iri_triple("http://a", "http://p", "http://o1"),
            iri_triple("http://a", "http://p", "http://o2"),
            iri_triple("http://b", "http://p", "http://o3"),
        ] {
            state.apply(&actions, &t);
        }
        let ratio = FinallyExpr::Ratio(
            RatioOperand::ActionResult(ActionKind::Count),
            RatioOperand::ActionResult(ActionKind::Unique),
        );
        assert_eq!(finalize(&state, &ratio), Ok(Rational::new(3, 2).unwrap()));

        let empty = ActionState::new();
        assert_eq!(
            finalize(&empty, &FinallyExpr::ActionResult(ActionKind::Count)),
            Ok(Rational::zero())
        );
        assert_eq!(finalize(&empty, &ratio), Err(MetricError::DivisionByZero));
    }

    #[test]
    fn subclass_counter_over_five_triples_yields_three_halves() {
        let mut source = MemorySource::new(five_triple_fixture());
        let results = assess(
            &[subclass_counter()],
            &mut source,
            &ExtensionRegistry::new(),
            "fixture",
            "2024-01-01T00:00:00Z",
        )
        .unwrap();
        let record = results[0].outcome.as_ref().unwrap();
        assert_eq!(record.value, Rational::new(3, 2).unwrap());
        assert_eq!(record.value.to_decimal_string(), "1.5");
    }

    #[test]
    fn human_readable_label_over_four_triples_yields_two() {
        let triples = vec![
            iri_triple(
                "http://ex.org/x",
                vocab::RDF_TYPE,
                "http://www.example.org/dp#Class",
            ),
            lit_triple("http://ex.org/x", vocab::RDFS_LABEL, "X"),
            lit_triple("http://ex.org/x", vocab::RDFS_COMMENT, "about X"),
            iri_triple(
                "http://ex.org/y",
                vocab::RDF_TYPE,
                "http://www.example.org/dp#Class",
            ),
        ];
        let mut source = MemorySource::new(triples);
        let results = assess(
            &[human_readable_label()],
            &mut source,
            &ExtensionRegistry::new(),
            "fixture",
            "2024-01-01T00:00:00Z",
        )
        .unwrap();
        let record = results[0].outcome.as_ref().unwrap();
        assert_eq!(record.value, Rational::integer(2));
        assert_eq!(record.value.to_decimal_string(), "2.0");
    }

    #[test]
    fn empty_stream_gives_zero_or_division_error() {
        let mut source = MemorySource::new(vec![]);
        let count_only = blueprint(
            r#"
def{CountOnly}:
  metric{<http://ex.org/m>};
  label{"count"};
  description{"count"};
  match{(?p == <http://ex.org/p>)};
  action{count};
  finally{actionresult(count)}.
"#,
        );
        let results = assess(
            &[count_only, subclass_counter()],
            &mut source,
            &ExtensionRegistry::new(),
            "empty",
            "2024-01-01T00:00:00Z",
        )
        .unwrap();
        assert_eq!(results[0].outcome.as_ref().unwrap().value, Rational::zero());
        assert_eq!(results[1].outcome, Err(MetricError::DivisionByZero));
    }

    #[test]
    fn fresh_subject_increments_count_and_unique() {
        let actions = [Action::Count, Action::Unique(TriplePosition::Subject)];
        let mut state = ActionState::new();
        state.apply(&actions, &iri_triple("http://a", "http://p", "http://o"));
        let (c0, u0) = (state.counter(), state.unique_count());
        state.apply(
            &actions,
            &iri_triple("http://fresh", "http://p", "http://o"),
        );
        assert_eq!(state.counter(), c0 + 1);
        assert_eq!(state.unique_count(), u0 + 1);
    }
}
