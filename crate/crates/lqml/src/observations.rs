//! Quality-observation metadata as Turtle.
//!
//! Each record becomes one anonymous observation node hanging off its
//! metric IRI, carrying the decimal value, the dataset identifier, and an
//! ISO-8601 timestamp. The vocabulary is the `daq` subset documented in
//! the repository docs.

use crate::engine::ObservationRecord;
use crate::ntriples::RdfError;
use crate::term::{Iri, Literal, Term, Triple};
use crate::turtle::{quote_turtle, Graph};
use crate::vocab;
use std::io::Write;

/// Builds the observation graph with labeled nodes `obs0`, `obs1`, ...
pub fn observations_graph(records: &[ObservationRecord]) -> Graph {
    let mut graph = Graph::new();
    graph.add_prefix("daq", vocab::DAQ);
    graph.add_prefix("xsd", vocab::XSD);
    for (i, record) in records.iter().enumerate() {
        let node = Term::Blank(format!("obs{i}"));
        graph.insert(Triple::new(
            Term::Iri(record.metric_uri.clone()),
            Iri::new(vocab::DAQ_HAS_OBSERVATION),
            node.clone(),
        ));
        graph.insert(Triple::new(
            node.clone(),
            Iri::new(vocab::RDF_TYPE),
            Term::iri(vocab::DAQ_OBSERVATION),
        ));
        graph.insert(Triple::new(
            node.clone(),
            Iri::new(vocab::DAQ_VALUE),
            Term::Literal(Literal::typed(
                record.value.to_decimal_string(),
                Iri::new(vocab::XSD_DECIMAL),
            )),
        ));
        graph.insert(Triple::new(
            node.clone(),
            Iri::new(vocab::DAQ_COMPUTED_ON),
            Term::Literal(Literal::plain(record.dataset_id.clone())),
        ));
        graph.insert(Triple::new(
            node,
            Iri::new(vocab::DAQ_DATE_COMPUTED),
            Term::Literal(Literal::typed(
                record.computed_at.clone(),
                Iri::new(vocab::XSD_DATE_TIME),
            )),
        ));
    }
    graph
}

/// Renders the observation document with anonymous `[ .. ]` nodes.
pub fn observations_turtle(records: &[ObservationRecord]) -> String {
    let mut out = String::new();
    out.push_str(&format!("@prefix daq: <{}> .\n", vocab::DAQ));
    out.push_str(&format!("@prefix xsd: <{}> .\n", vocab::XSD));
    for record in records {
        out.push('\n');
        out.push_str(&format!(
            "<{}> daq:hasObservation [\n",
            record.metric_uri.as_str()
        ));
        out.push_str("    a daq:Observation ;\n");
        out.push_str(&format!(
            "    daq:value {} ;\n",
            record.value.to_decimal_string()
        ));
        out.push_str(&format!(
            "    daq:computedOn {} ;\n",
            quote_turtle(&record.dataset_id)
        ));
        out.push_str(&format!(
            "    daq:dateComputed {}^^xsd:dateTime\n",
            quote_turtle(&record.computed_at)
        ));
        out.push_str("] .\n");
    }
    out
}

/// Writes the observation Turtle to `out` and returns the graph it
/// serializes.
pub fn write_observations<W: Write>(
    records: &[ObservationRecord],
    out: &mut W,
) -> Result<Graph, RdfError> {
    out.write_all(observations_turtle(records).as_bytes())?;
    Ok(observations_graph(records))
}
