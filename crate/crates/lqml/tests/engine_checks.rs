//! Engine behavior against the brute-force oracle and across stream
//! permutations.

use lqml::engine::{assess, plan_passes, MetricError, PassPlan};
use lqml::ntriples::MemorySource;
use lqml::rational::Rational;
use lqml_testkit::corpus;
use lqml_testkit::gen::{random_blueprint, random_dataset, standard_registry};
use lqml_testkit::oracle::assess_bruteforce;
use lqml_testkit::rng::Rng;

const TS: &str = "2024-01-01T00:00:00Z";

#[test]
fn corpus_values_match_the_derived_fixtures() {
    let registry = standard_registry();
    let mut source = MemorySource::new(corpus::five_triples());
    let results = assess(
        &[corpus::subclass_counter()],
        &mut source,
        &registry,
        "fixture5.nt",
        TS,
    )
    .unwrap();
    assert_eq!(
        results[0].outcome.as_ref().unwrap().value,
        Rational::new(3, 2).unwrap()
    );

    let mut source = MemorySource::new(corpus::four_triples());
    let results = assess(
        &[corpus::human_readable_label()],
        &mut source,
        &registry,
        "fixture4.nt",
        TS,
    )
    .unwrap();
    assert_eq!(
        results[0].outcome.as_ref().unwrap().value,
        Rational::integer(2)
    );
}

#[test]
fn engine_matches_oracle_on_random_pairs() {
    let registry = standard_registry();
    let mut rng = Rng::new(0xA55E55);
    for case in 0..120 {
        let blueprint = random_blueprint(&mut rng, case, true);
        let size = rng.below(50) + 1;
        let triples = random_dataset(&mut rng, size);
        let mut source = MemorySource::new(triples.clone());
        let engine = assess(
            std::slice::from_ref(&blueprint),
            &mut source,
            &registry,
            "random",
            TS,
        )
        .unwrap();
        let oracle = assess_bruteforce(std::slice::from_ref(&blueprint), &triples, &registry);
        let engine_value = engine[0].outcome.as_ref().map(|r| r.value).map_err(|e| *e);
        assert_eq!(
            engine_value, oracle[0].value,
            "case {case}: engine and oracle disagree on {blueprint:?}"
        );
    }
}

#[test]
fn results_are_invariant_under_stream_permutations() {
    let registry = standard_registry();
    let blueprints = corpus::corpus_blueprints();
    let mut rng = Rng::new(0x0D15EA5E);
    let baseline_triples = random_dataset(&mut rng, 30);

    let mut baseline_source = MemorySource::new(baseline_triples.clone());
    let baseline = assess(&blueprints, &mut baseline_source, &registry, "perm", TS).unwrap();

    for _ in 0..25 {
        let mut shuffled = baseline_triples.clone();
        rng.shuffle(&mut shuffled);
        let mut source = MemorySource::new(shuffled);
        let permuted = assess(&blueprints, &mut source, &registry, "perm", TS).unwrap();
        assert_eq!(baseline, permuted);
    }
}

#[test]
fn map_value_lists_match_a_group_by_as_multisets() {
    use lqml::engine::{eval_condition, ActionState, TypeIndex};
    use lqml::model::{Action, ExtensionRegistry};
    use lqml::term::TriplePosition;
    use lqml_testkit::oracle::group_by;

    let registry = ExtensionRegistry::new();
    let mut rng = Rng::new(0x6B);
    let triples = random_dataset(&mut rng, 40);
    let expr = corpus::subclass_counter().match_expr;
    let index = TypeIndex::new();

    let actions = [Action::Map {
        key: TriplePosition::Subject,
        value: TriplePosition::Object,
    }];
    let mut state = ActionState::new();
    let matched: Vec<&lqml::Triple> = triples
        .iter()
        .filter(|t| eval_condition(&expr, t, &index, &registry))
        .collect();
    for t in &matched {
        state.apply(&actions, t);
    }
    let expected = group_by(&matched, TriplePosition::Subject, TriplePosition::Object);
    assert_eq!(state.map_key_count() as usize, expected.len());
    for (key, values) in &expected {
        let mut engine_values = state.map_values(key).unwrap().to_vec();
        let mut oracle_values = values.clone();
        engine_values.sort();
        oracle_values.sort();
        assert_eq!(engine_values, oracle_values);
    }
}

#[test]
fn single_pass_exactly_when_no_typeof_anywhere() {
    let mut rng = Rng::new(99);
    for case in 0..200 {
        let blueprints = vec![
            random_blueprint(&mut rng, case * 2, true),
            random_blueprint(&mut rng, case * 2 + 1, true),
        ];
        let any_typeof = blueprints.iter().any(|b| b.match_expr.contains_typeof());
        let plan = plan_passes(&blueprints);
        assert_eq!(
            plan,
            if any_typeof {
                PassPlan::TwoPass
            } else {
                PassPlan::SinglePass
            }
        );
    }
}

#[test]
fn failing_metric_leaves_the_others_untouched() {
    let registry = standard_registry();
    // empty dataset: the ratio blueprint divides by zero, the count-only
    // blueprint still reports 0
    let count_only = {
        use lqml::model::{validate, ExtensionRegistry};
        use lqml::parser::parse_source;
        let ast = parse_source(
            r#"
def{CountOnly}:
  metric{<http://ex.org/count-only>};
  label{"count"};
  description{"count"};
  match{(?p == <http://ex.org/p>)};
  action{count};
  finally{actionresult(count)}.
"#,
        )
        .unwrap()
        .remove(0);
        validate(&ast, &ExtensionRegistry::new()).unwrap()
    };
    let mut source = MemorySource::new(vec![]);
    let results = assess(
        &[corpus::subclass_counter(), count_only],
        &mut source,
        &registry,
        "empty",
        TS,
    )
    .unwrap();
    assert_eq!(results[0].outcome, Err(MetricError::DivisionByZero));
    assert_eq!(results[1].outcome.as_ref().unwrap().value, Rational::zero());
}
