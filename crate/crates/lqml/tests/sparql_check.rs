//! Translation soundness: the reference evaluator run on the emitted
//! query text selects exactly the triples the condition matches.

use lqml::engine::{eval_condition, TypeIndex};
use lqml::model::{ConditionExpr, ExtensionRegistry};
use lqml::ntriples::parse_ntriples;
use lqml::sparql::to_sparql;
use lqml::term::Triple;
use lqml_testkit::corpus;
use lqml_testkit::gen::{random_dataset, random_expr};
use lqml_testkit::rng::Rng;
use lqml_testkit::sparql_eval::select_triples;
use std::collections::HashSet;
use std::fs;
use std::path::Path;

fn matched_by_condition(expr: &ConditionExpr, dataset: &[Triple]) -> HashSet<Triple> {
    let registry = ExtensionRegistry::new();
    let mut index = TypeIndex::new();
    for triple in dataset {
        index.observe(triple);
    }
    dataset
        .iter()
        .filter(|t| eval_condition(expr, t, &index, &registry))
        .cloned()
        .collect()
}

fn assert_sound(expr: &ConditionExpr, dataset: &[Triple], context: &str) {
    let query = to_sparql(expr).unwrap_or_else(|e| panic!("{context}: {e}"));
    let selected =
        select_triples(&query.to_string(), dataset).unwrap_or_else(|e| panic!("{context}: {e}"));
    let matched = matched_by_condition(expr, dataset);
    assert_eq!(
        selected, matched,
        "{context}: solutions diverge from matches"
    );
}

fn ten_triple_fixture() -> Vec<Triple> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/datasets/ten_triples.nt");
    parse_ntriples(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn corpus_blueprints_translate_soundly_on_fixtures() {
    let datasets = [
        corpus::five_triples(),
        corpus::four_triples(),
        ten_triple_fixture(),
    ];
    for blueprint in corpus::corpus_blueprints() {
        for (i, dataset) in datasets.iter().enumerate() {
            assert_sound(
                &blueprint.match_expr,
                dataset,
                &format!("{} over dataset {i}", blueprint.name),
            );
        }
    }
}

#[test]
fn typeof_anchor_pattern_is_verbatim() {
    use lqml::lexer::tokenize;
    use lqml::parser::parse_condition_expr;
    let expr =
        parse_condition_expr(&tokenize("(typeof(?s) == <http://ex.org/U>)").unwrap()).unwrap();
    let query = to_sparql(&expr).unwrap();
    assert!(query.where_block.contains("?s a <http://ex.org/U>"));
}

#[test]
fn random_function_free_conditions_translate_soundly() {
    let mut rng = Rng::new(0x5AC1);
    for case in 0..150 {
        let expr = random_expr(&mut rng, 3, false);
        let size = rng.below(50) + 1;
        let dataset = random_dataset(&mut rng, size);
        assert_sound(&expr, &dataset, &format!("random case {case}"));
    }
}

#[test]
fn emitted_queries_parse_as_sparql() {
    use lqml_testkit::sparql_eval::parse_query;
    let mut rng = Rng::new(0x9A7);
    for case in 0..100 {
        let expr = random_expr(&mut rng, 3, false);
        let query = to_sparql(&expr).unwrap();
        parse_query(&query.to_string())
            .unwrap_or_else(|e| panic!("case {case}: emitted query failed to parse: {e}"));
    }
}
