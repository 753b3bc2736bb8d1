//! Test-only support: a brute-force assessment oracle, deterministic
//! random generators, and a small SPARQL-subset evaluator.
//!
//! Everything here is deliberately independent of the streaming engine,
//! the pass planner, and the query renderer it is used to check.

pub mod corpus;
pub mod gen;
pub mod oracle;
pub mod rng;
pub mod sparql_eval;

use lqml::{Term, Triple};
use std::collections::HashMap;

/// Relabels blank nodes by order of first appearance, so two graphs that
/// differ only in blank labels compare equal as sorted triple lists.
pub fn relabel_blanks(triples: &[Triple]) -> Vec<Triple> {
    let mut mapping: HashMap<String, usize> = HashMap::new();
    let mut relabel = |term: &Term| -> Term {
        match term {
            Term::Blank(label) => {
                let next = mapping.len();
                let id = *mapping.entry(label.clone()).or_insert(next);
                Term::Blank(format!("c{id}"))
            }
            other => other.clone(),
        }
    };
    triples
        .iter()
        .map(|t| Triple::new(relabel(&t.subject), t.predicate.clone(), relabel(&t.object)))
        .collect()
}

/// Sorted copy, for multiset comparison.
pub fn sorted(triples: &[Triple]) -> Vec<Triple> {
    let mut out = triples.to_vec();
    out.sort();
    out
}
