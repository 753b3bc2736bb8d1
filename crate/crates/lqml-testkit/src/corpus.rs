//! The two reference blueprints and their fixture datasets, shared by
//! integration and acceptance tests.

use lqml::model::{validate, Blueprint, ExtensionRegistry};
use lqml::ntriples::parse_ntriples;
use lqml::parser::parse_source;
use lqml::Triple;

pub const SUBCLASS_COUNTER: &str = r#"def{SubClassCounter}:
  metric{<http://www.example.org/ebiqm#SubClassCountingMetric>};
  label{"SubClassCountingMetric"};
  description{"Provides a measure for counting the number of resources that are defined as sub-classes"};
  match{(?p == <http://www.w3.org/2000/01/rdf-schema#subClassOf>)};
  action{count, unique(?s)};
  finally{ratio(actionresult(count), actionresult(unique))}.
"#;

pub const HUMAN_READABLE_LABEL: &str = r#"def{HumanReadableLabel}:
  metric{<http://www.example.org/dpqm#SubClassCountingMetric>};
  label{"Human Readable Labelling Metric"};
  description{"Provides a measure for identifying the ratio of human readable labels of defined resources in a dataset"};
  match{(typeof(?s) == <http://www.example.org/dp#Class>) && ((?p == <http://www.w3.org/2000/01/rdf-schema#label>) || (?p == <http://www.w3.org/2000/01/rdf-schema#comment>))};
  action{count, unique(?s)};
  finally{ratio(actionresult(count), actionresult(unique))}.
"#;

pub const FIVE_TRIPLES: &str = r#"<http://ex.org/a> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/b> .
<http://ex.org/a> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/c> .
<http://ex.org/d> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/b> .
<http://ex.org/a> <http://www.w3.org/2000/01/rdf-schema#label> "A" .
<http://ex.org/d> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/C> .
"#;

pub const FOUR_TRIPLES: &str = r#"<http://ex.org/x> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.example.org/dp#Class> .
<http://ex.org/x> <http://www.w3.org/2000/01/rdf-schema#label> "X" .
<http://ex.org/x> <http://www.w3.org/2000/01/rdf-schema#comment> "about X" .
<http://ex.org/y> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.example.org/dp#Class> .
"#;

pub fn subclass_counter() -> Blueprint {
    parse_blueprint(SUBCLASS_COUNTER)
}

pub fn human_readable_label() -> Blueprint {
    parse_blueprint(HUMAN_READABLE_LABEL)
}

pub fn corpus_blueprints() -> Vec<Blueprint> {
    vec![subclass_counter(), human_readable_label()]
}

pub fn five_triples() -> Vec<Triple> {
    parse_ntriples(FIVE_TRIPLES).expect("fixture parses")
}

pub fn four_triples() -> Vec<Triple> {
    parse_ntriples(FOUR_TRIPLES).expect("fixture parses")
}

fn parse_blueprint(source: &str) -> Blueprint {
    let ast = parse_source(source).expect("corpus parses").remove(0);
    validate(&ast, &ExtensionRegistry::new()).expect("corpus validates")
}
