//! Acceptance suite. One test per criterion; each prints a PASS line with
//! its measurements (visible with `--nocapture`).
//!
//!   cargo test -p lqml-cli --test acceptance -- --nocapture

use lqml::ast::pretty_print;
use lqml::engine::{assess, eval_condition, TypeIndex};
use lqml::lbo::{export_blueprint, export_blueprints, import_blueprint};
use lqml::model::{validate, ExtensionRegistry};
use lqml::ntriples::MemorySource;
use lqml::parser::{parse_source, SyntaxError};
use lqml::rational::Rational;
use lqml::sparql::to_sparql;
use lqml::term::Triple;
use lqml::turtle::Graph;
use lqml_testkit::corpus;
use lqml_testkit::gen::{random_blueprint, random_dataset, standard_registry};
use lqml_testkit::oracle::assess_bruteforce;
use lqml_testkit::rng::Rng;
use lqml_testkit::sorted;
use lqml_testkit::sparql_eval::select_triples;
use std::collections::HashSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

const TS: &str = "2024-01-01T00:00:00Z";

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../lqml/tests/fixtures")
        .join(name)
}

// -------------------------------------------------------------------
// 1. Grammar corpus: both reference blueprints parse, validate, and
//    round-trip; every negative fixture fails with its designated error
//    class. Runtime under one second.

#[test]
fn criterion_1_grammar_corpus() {
    let start = Instant::now();
    let registry = ExtensionRegistry::new();

    for name in ["subclass_counter.lqm", "human_readable_label.lqm"] {
        let source = fs::read_to_string(fixture(name)).unwrap();
        let parsed = parse_source(&source).unwrap_or_else(|e| panic!("{name}: {e}"));
        let blueprint = validate(&parsed[0], &registry).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(blueprint.feature_complete());
        let reparsed = parse_source(&pretty_print(&parsed[0])).unwrap();
        assert!(
            parsed[0].structurally_eq(&reparsed[0]),
            "{name}: round trip"
        );
    }

    #[derive(PartialEq, Debug, Clone, Copy)]
    enum Class {
        Lex,
        Parse,
        Validation,
    }
    let negatives: &[(&str, Class)] = &[
        ("01_swapped_clauses.lqm", Class::Parse),
        ("02_missing_description.lqm", Class::Parse),
        ("03_duplicate_label.lqm", Class::Parse),
        ("04_mixed_operators.lqm", Class::Parse),
        ("05_unknown_function.lqm", Class::Validation),
        ("06_unbacked_actionresult.lqm", Class::Validation),
        ("07_duplicate_action.lqm", Class::Validation),
        ("08_map_same_positions.lqm", Class::Validation),
        ("09_relative_metric_iri.lqm", Class::Validation),
        ("10_typeof_predicate.lqm", Class::Parse),
        ("11_unterminated_iri.lqm", Class::Lex),
        ("12_unterminated_string.lqm", Class::Lex),
        ("13_missing_terminator.lqm", Class::Parse),
        ("14_subject_equals_string.lqm", Class::Parse),
        ("15_duplicate_names.lqm", Class::Parse),
        ("16_two_finally_expressions.lqm", Class::Parse),
    ];
    assert!(negatives.len() >= 10);
    for (name, expected) in negatives {
        let source = fs::read_to_string(fixture(&format!("negatives/{name}"))).unwrap();
        let actual = match parse_source(&source) {
            Err(SyntaxError::Lex(_)) => Class::Lex,
            Err(SyntaxError::Parse(_)) => Class::Parse,
            Ok(asts) => {
                assert!(
                    asts.iter().any(|ast| validate(ast, &registry).is_err()),
                    "{name}: accepted"
                );
                Class::Validation
            }
        };
        assert_eq!(actual, *expected, "{name}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "corpus took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: grammar corpus ({} negatives, {:?})",
        negatives.len(),
        elapsed
    );
}

// -------------------------------------------------------------------
// 2. End-to-end evaluation: exact rational results on the two derived
//    fixtures.

#[test]
fn criterion_2_end_to_end_values() {
    let registry = ExtensionRegistry::new();

    let mut source = MemorySource::new(corpus::five_triples());
    let results = assess(
        &[corpus::subclass_counter()],
        &mut source,
        &registry,
        "fixture5.nt",
        TS,
    )
    .unwrap();
    let value = results[0].outcome.as_ref().unwrap().value;
    assert_eq!(value, Rational::new(3, 2).unwrap());
    assert_eq!(value.to_decimal_string(), "1.5");

    let mut source = MemorySource::new(corpus::four_triples());
    let results = assess(
        &[corpus::human_readable_label()],
        &mut source,
        &registry,
        "fixture4.nt",
        TS,
    )
    .unwrap();
    let value = results[0].outcome.as_ref().unwrap().value;
    assert_eq!(value, Rational::integer(2));
    assert_eq!(value.to_decimal_string(), "2.0");

    println!("ACCEPTANCE 2 PASS: end-to-end evaluation (1.5 and 2.0, exact)");
}

// -------------------------------------------------------------------
// 3. Stream-order invariance: 200 permutations of a 30-triple dataset,
//    both corpus blueprints, identical records. Under ten seconds.

#[test]
fn criterion_3_stream_order_invariance() {
    let start = Instant::now();
    let registry = ExtensionRegistry::new();
    let blueprints = corpus::corpus_blueprints();
    let mut rng = Rng::new(0x1A4B);
    let triples = random_dataset(&mut rng, 30);

    let mut source = MemorySource::new(triples.clone());
    let baseline = assess(&blueprints, &mut source, &registry, "perm", TS).unwrap();
    assert!(
        baseline.iter().any(|a| a.outcome.is_ok()),
        "seed produced no observable values; invariance would be vacuous"
    );

    let permutations = 200;
    for _ in 0..permutations {
        let mut shuffled = triples.clone();
        rng.shuffle(&mut shuffled);
        let mut source = MemorySource::new(shuffled);
        let permuted = assess(&blueprints, &mut source, &registry, "perm", TS).unwrap();
        assert_eq!(baseline, permuted);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 3 PASS: stream-order invariance ({permutations} permutations, {:?})",
        elapsed
    );
}

// -------------------------------------------------------------------
// 4. Oracle equivalence: 120 random (blueprint, dataset<=50) pairs;
//    engine output equals the brute-force oracle exactly.

#[test]
fn criterion_4_oracle_equivalence() {
    let registry = standard_registry();
    let mut rng = Rng::new(0x04AC1E);
    let cases = 120;
    for case in 0..cases {
        let blueprint = random_blueprint(&mut rng, case, true);
        let size = rng.below(50) + 1;
        let triples = random_dataset(&mut rng, size);
        let mut source = MemorySource::new(triples.clone());
        let engine = assess(
            std::slice::from_ref(&blueprint),
            &mut source,
            &registry,
            "rnd",
            TS,
        )
        .unwrap();
        let oracle = assess_bruteforce(std::slice::from_ref(&blueprint), &triples, &registry);
        let engine_value = engine[0].outcome.as_ref().map(|r| r.value).map_err(|e| *e);
        assert_eq!(engine_value, oracle[0].value, "case {case}");
    }
    println!("ACCEPTANCE 4 PASS: oracle equivalence ({cases} random pairs)");
}

// -------------------------------------------------------------------
// 5. RDF round trip: import(export(b)) == b for corpus and random
//    blueprints; the exported Turtle reparses to the same statement
//    multiset.

#[test]
fn criterion_5_rdf_round_trip() {
    let registry = standard_registry();
    let mut blueprints = corpus::corpus_blueprints();
    let mut rng = Rng::new(0x5B0);
    for i in 0..60 {
        blueprints.push(random_blueprint(&mut rng, i, true));
    }
    for blueprint in &blueprints {
        let graph = export_blueprint(blueprint);
        let back = import_blueprint(&graph, &registry).unwrap();
        assert_eq!(&back, blueprint);
    }
    let graph = export_blueprints(&blueprints);
    let reparsed = Graph::from_turtle(&graph.to_turtle()).unwrap();
    assert_eq!(sorted(graph.triples()), sorted(reparsed.triples()));
    println!(
        "ACCEPTANCE 5 PASS: RDF round trip ({} blueprints, multiset stable)",
        blueprints.len()
    );
}

// -------------------------------------------------------------------
// 6. SPARQL translation soundness: the reference evaluator on the
//    emitted query selects exactly the triples the condition matches;
//    the typeof anchor emits its pattern verbatim.

#[test]
fn criterion_6_sparql_soundness() {
    let registry = ExtensionRegistry::new();
    let ten = lqml::ntriples::parse_ntriples(
        &fs::read_to_string(fixture("datasets/ten_triples.nt")).unwrap(),
    )
    .unwrap();
    let datasets: Vec<Vec<Triple>> = vec![corpus::five_triples(), corpus::four_triples(), ten];

    for blueprint in corpus::corpus_blueprints() {
        assert!(!blueprint.match_expr.contains_function_call());
        let query = to_sparql(&blueprint.match_expr).unwrap();
        for dataset in &datasets {
            let selected = select_triples(&query.to_string(), dataset).unwrap();
            let mut index = TypeIndex::new();
            for triple in dataset {
                index.observe(triple);
            }
            let matched: HashSet<Triple> = dataset
                .iter()
                .filter(|t| eval_condition(&blueprint.match_expr, t, &index, &registry))
                .cloned()
                .collect();
            assert_eq!(selected, matched, "{}", blueprint.name);
        }
    }

    // Anchor: typeof(?s) == <U> emits the pattern "?s a <U>" verbatim.
    use lqml::lexer::tokenize;
    use lqml::parser::parse_condition_expr;
    let anchor =
        parse_condition_expr(&tokenize("(typeof(?s) == <http://ex.org/U>)").unwrap()).unwrap();
    let query = to_sparql(&anchor).unwrap();
    assert!(query.where_block.contains("?s a <http://ex.org/U>"));

    println!(
        "ACCEPTANCE 6 PASS: SPARQL translation soundness (2 blueprints x 3 datasets + anchor)"
    );
}

// -------------------------------------------------------------------
// 7. Streaming scale: both corpus blueprints over a generated
//    1,000,000-triple file, in a child process, under 60 s wall time
//    and under 100 MB peak RSS.

#[test]
fn criterion_7_streaming_scale() {
    let dir = tempfile::tempdir().unwrap();
    let dataset_path = dir.path().join("million.nt");
    let output_path = dir.path().join("observations.ttl");
    let triple_count = 1_000_000;
    write_large_dataset(&dataset_path, triple_count);

    let start = Instant::now();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_lqml"))
        .args([
            "assess",
            fixture("subclass_counter.lqm").to_str().unwrap(),
            fixture("human_readable_label.lqm").to_str().unwrap(),
            dataset_path.to_str().unwrap(),
            "--output",
            output_path.to_str().unwrap(),
        ])
        .env("LQML_FIXED_TIMESTAMP", TS)
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    let elapsed = start.elapsed();
    assert!(status.success(), "assess failed: {status:?}");

    let peak_rss_kb = child_peak_rss_kb();
    let peak_mb = peak_rss_kb as f64 / 1024.0;
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "assessment of {triple_count} triples took {elapsed:?}"
    );
    assert!(peak_mb < 100.0, "peak RSS was {peak_mb:.1} MB");

    let body = fs::read_to_string(&output_path).unwrap();
    assert!(body.contains("ebiqm#SubClassCountingMetric"));
    assert!(body.contains("dpqm#SubClassCountingMetric"));

    println!(
        "ACCEPTANCE 7 PASS: streaming scale ({triple_count} triples, {:.1} s, peak {:.1} MB)",
        elapsed.as_secs_f64(),
        peak_mb
    );
}

/// Peak resident set over all reaped children, in kilobytes.
fn child_peak_rss_kb() -> i64 {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    let rc = unsafe { libc::getrusage(libc::RUSAGE_CHILDREN, usage.as_mut_ptr()) };
    assert_eq!(rc, 0, "getrusage failed");
    unsafe { usage.assume_init() }.ru_maxrss
}

/// 1M statements over a 50k-subject pool: 10% typings, 30% subclass
/// links, 30% labels/comments, 30% other links. Accumulator sizes stay
/// bounded by the pools, not the statement count.
fn write_large_dataset(path: &Path, count: usize) {
    let mut rng = Rng::new(0xB16_DA7A);
    let file = fs::File::create(path).unwrap();
    let mut out = std::io::BufWriter::new(file);
    for i in 0..count {
        let subject = rng.below(50_000);
        let roll = rng.below(100);
        if roll < 10 {
            let class = if rng.chance(1, 2) {
                "http://www.example.org/dp#Class".to_owned()
            } else {
                format!("http://data.example.org/C{}", rng.below(20))
            };
            writeln!(
                out,
                "<http://data.example.org/s{subject}> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{class}> ."
            )
            .unwrap();
        } else if roll < 40 {
            writeln!(
                out,
                "<http://data.example.org/s{subject}> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://data.example.org/s{}> .",
                rng.below(50_000)
            )
            .unwrap();
        } else if roll < 60 {
            writeln!(
                out,
                "<http://data.example.org/s{subject}> <http://www.w3.org/2000/01/rdf-schema#label> \"label {i}\" ."
            )
            .unwrap();
        } else if roll < 70 {
            writeln!(
                out,
                "<http://data.example.org/s{subject}> <http://www.w3.org/2000/01/rdf-schema#comment> \"comment {i}\" ."
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "<http://data.example.org/s{subject}> <http://data.example.org/p{}> <http://data.example.org/o{}> .",
                rng.below(4),
                rng.below(1_000)
            )
            .unwrap();
        }
    }
    out.flush().unwrap();
}
