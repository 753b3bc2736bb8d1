//! Blueprint RDF round trips, Turtle stability, and conformance of
//! exported graphs to the shape described in docs/lbo-shape.md.

use lqml::lbo::{export_blueprint, export_blueprints, import_blueprint, import_blueprints};
use lqml::model::ExtensionRegistry;
use lqml::term::Term;
use lqml::turtle::Graph;
use lqml::vocab;
use lqml_testkit::corpus;
use lqml_testkit::gen::{random_blueprint, standard_registry};
use lqml_testkit::rng::Rng;
use lqml_testkit::{relabel_blanks, sorted};

#[test]
fn corpus_round_trip_is_identity() {
    let registry = ExtensionRegistry::new();
    for blueprint in corpus::corpus_blueprints() {
        let graph = export_blueprint(&blueprint);
        let back = import_blueprint(&graph, &registry).unwrap();
        assert_eq!(back, blueprint);
    }
}

#[test]
fn random_round_trip_is_identity() {
    let registry = standard_registry();
    let mut rng = Rng::new(0xB10E);
    for i in 0..60 {
        let blueprint = random_blueprint(&mut rng, i, true);
        let graph = export_blueprint(&blueprint);
        let back = import_blueprint(&graph, &registry).unwrap();
        assert_eq!(back, blueprint, "case {i}");
    }
}

#[test]
fn exported_turtle_reparses_to_the_same_statement_multiset() {
    let mut rng = Rng::new(0x7712);
    let mut blueprints = corpus::corpus_blueprints();
    for i in 0..20 {
        blueprints.push(random_blueprint(&mut rng, i, true));
    }
    let graph = export_blueprints(&blueprints);
    let text = graph.to_turtle();
    let reparsed = Graph::from_turtle(&text).unwrap();
    assert_eq!(sorted(graph.triples()), sorted(reparsed.triples()));
}

#[test]
fn multi_blueprint_graph_imports_in_order() {
    let registry = standard_registry();
    let mut rng = Rng::new(0xC0DE);
    let blueprints: Vec<_> = (0..5)
        .map(|i| random_blueprint(&mut rng, i, false))
        .collect();
    let graph = export_blueprints(&blueprints);
    let text = graph.to_turtle();
    let reparsed = Graph::from_turtle(&text).unwrap();
    let back = import_blueprints(&reparsed, &registry).unwrap();
    assert_eq!(back, blueprints);
}

#[test]
fn observation_document_reparses_to_the_same_graph_modulo_labels() {
    use lqml::engine::ObservationRecord;
    use lqml::observations::{observations_graph, observations_turtle};
    use lqml::rational::Rational;
    use lqml::term::Iri;

    let records = vec![
        ObservationRecord {
            metric_uri: Iri::new("http://www.example.org/ebiqm#SubClassCountingMetric"),
            value: Rational::new(3, 2).unwrap(),
            dataset_id: "fixture5.nt".into(),
            computed_at: "2024-01-01T00:00:00Z".into(),
        },
        ObservationRecord {
            metric_uri: Iri::new("http://www.example.org/dpqm#SubClassCountingMetric"),
            value: Rational::integer(2),
            dataset_id: "fixture4.nt".into(),
            computed_at: "2024-01-01T00:00:00Z".into(),
        },
    ];
    let text = observations_turtle(&records);
    let parsed = Graph::from_turtle(&text).unwrap();
    let graph = observations_graph(&records);
    assert_eq!(
        sorted(&relabel_blanks(parsed.triples())),
        sorted(&relabel_blanks(graph.triples()))
    );
}

// ---------------------------------------------------------------------
// Shape conformance, mirroring docs/lbo-shape.md.

fn exactly_one<'g>(graph: &'g Graph, node: &Term, predicate: &str) -> &'g Term {
    let objects = graph.objects(node, predicate);
    assert_eq!(
        objects.len(),
        1,
        "node {node:?} must have exactly one <{predicate}>"
    );
    objects[0]
}

fn assert_literal(term: &Term) {
    assert!(
        matches!(term, Term::Literal(_)),
        "{term:?} must be a literal"
    );
}

fn assert_variable_literal(term: &Term) {
    match term {
        Term::Literal(lit) => assert!(
            matches!(lit.lexical.as_str(), "?s" | "?p" | "?o"),
            "{term:?} must be a variable literal"
        ),
        other => panic!("{other:?} must be a variable literal"),
    }
}

fn read_list(graph: &Graph, head: &Term) -> Vec<Term> {
    let mut items = Vec::new();
    let mut current = head.clone();
    let mut steps = 0;
    while current != Term::iri(vocab::RDF_NIL) {
        steps += 1;
        assert!(steps < 100, "list does not terminate");
        items.push(exactly_one(graph, &current, vocab::RDF_FIRST).clone());
        current = exactly_one(graph, &current, vocab::RDF_REST).clone();
    }
    items
}

fn check_condition_shape(graph: &Graph, node: &Term) {
    if graph.has_type(node, vocab::LBO_CONDITION_GROUP) {
        let operator = exactly_one(graph, node, vocab::LBO_OPERATOR);
        match operator {
            Term::Literal(lit) => assert!(matches!(lit.lexical.as_str(), "and" | "or")),
            other => panic!("operator must be a literal, found {other:?}"),
        }
        let operands = read_list(graph, exactly_one(graph, node, vocab::LBO_HAS_OPERANDS));
        assert_eq!(operands.len(), 2, "group has exactly two operands");
        for operand in &operands {
            check_condition_shape(graph, operand);
        }
    } else if graph.has_type(node, vocab::LBO_TYPE_OF) {
        let on_term = exactly_one(graph, node, vocab::LBO_ON_TERM);
        match on_term {
            Term::Literal(lit) => assert!(matches!(lit.lexical.as_str(), "?s" | "?o")),
            other => panic!("lbo:onTerm must be a literal, found {other:?}"),
        }
        let value = exactly_one(graph, node, vocab::LBO_VALUE);
        assert!(matches!(value, Term::Iri(_)), "typeof value must be an IRI");
    } else if graph.has_type(node, vocab::LBO_FUNCTION_CALL) {
        assert_literal(exactly_one(graph, node, vocab::LBO_FUNCTION_NAME));
        let params = read_list(graph, exactly_one(graph, node, vocab::LBO_HAS_PARAMETERS));
        for param in &params {
            assert_variable_literal(param);
        }
    } else if graph.has_type(node, vocab::DRMO_CONDITION) {
        assert_variable_literal(exactly_one(graph, node, vocab::LBO_ON_TERM));
        let value = exactly_one(graph, node, vocab::LBO_VALUE);
        assert!(
            !matches!(value, Term::Blank(_)),
            "condition value must be an IRI or literal"
        );
    } else {
        panic!("condition node {node:?} has no recognized type");
    }
}

fn check_result_shape(graph: &Graph, node: &Term) {
    let params = read_list(
        graph,
        exactly_one(graph, node, vocab::LBO_HAS_OUTPUT_PARAMETERS),
    );
    if graph.has_type(node, vocab::LBO_RATIO) {
        assert_eq!(params.len(), 2, "ratio takes two output parameters");
        for param in &params {
            match param {
                Term::Literal(lit) => {
                    assert!(
                        lit.numeric_value().is_some(),
                        "ratio literal must be numeric"
                    )
                }
                other => check_result_shape(graph, other),
            }
        }
    } else if graph.has_type(node, vocab::LBO_ACTION_RESULTS) {
        assert_eq!(params.len(), 1);
        let kind = params[0].as_iri().expect("action kind is an IRI");
        assert!(matches!(
            kind.as_str(),
            vocab::LBO_MAP | vocab::LBO_COUNT | vocab::LBO_UNIQUE
        ));
    } else if graph.has_type(node, vocab::LBO_OUTPUT_RESULT) {
        assert_eq!(params.len(), 1);
        match &params[0] {
            Term::Literal(lit) => assert!(lit.numeric_value().is_some()),
            other => panic!("plain output result parameter must be numeric, got {other:?}"),
        }
    } else {
        panic!("result node {node:?} has no recognized type");
    }
}

fn check_action_shape(graph: &Graph, node: &Term) {
    if graph.has_type(node, vocab::LBO_COUNT) {
        return;
    }
    let params = read_list(graph, exactly_one(graph, node, vocab::LBO_HAS_PARAMETERS));
    if graph.has_type(node, vocab::LBO_UNIQUE) {
        assert_eq!(params.len(), 1);
    } else if graph.has_type(node, vocab::LBO_MAP) {
        assert_eq!(params.len(), 2);
    } else {
        panic!("action node {node:?} has no recognized type");
    }
    for param in &params {
        assert_variable_literal(param);
    }
}

fn check_blueprint_shape(graph: &Graph, node: &Term) {
    assert_literal(exactly_one(graph, node, vocab::LBO_NAME));
    assert_literal(exactly_one(graph, node, vocab::RDFS_LABEL));
    assert_literal(exactly_one(graph, node, vocab::RDFS_COMMENT));
    let metric = exactly_one(graph, node, vocab::LBO_RELATED_TO);
    assert!(
        matches!(metric, Term::Iri(_)),
        "lbo:relatedTo must be an IRI"
    );
    check_result_shape(graph, exactly_one(graph, node, vocab::LBO_HAS_RESULT));

    let rule = exactly_one(graph, node, vocab::LBO_HAS_PATTERN_MATCHING_RULE);
    assert!(graph.has_type(rule, vocab::DRMO_RULE));
    check_condition_shape(graph, exactly_one(graph, rule, vocab::DRMO_IS_COMPOSED_OF));
    let triggers = graph.objects(rule, vocab::DRMO_TRIGGERS);
    assert!(
        !triggers.is_empty(),
        "rule must trigger at least one action"
    );
    for action in triggers {
        check_action_shape(graph, action);
    }
}

#[test]
fn exported_graphs_conform_to_the_documented_shape() {
    let mut blueprints = corpus::corpus_blueprints();
    let mut rng = Rng::new(0x5A);
    for i in 0..30 {
        blueprints.push(random_blueprint(&mut rng, i, true));
    }
    for blueprint in &blueprints {
        let graph = export_blueprint(blueprint);
        let nodes = graph.subjects_of_type(vocab::LBO_BLUEPRINT);
        assert_eq!(nodes.len(), 1);
        check_blueprint_shape(&graph, &nodes[0].clone());
    }
}
