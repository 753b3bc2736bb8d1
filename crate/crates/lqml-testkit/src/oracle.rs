//! Brute-force assessment oracle.
//!
//! Materializes the whole dataset, builds the type lookup by direct scan,
//! filters with `eval_condition`, and aggregates with plain set and
//! group-by arithmetic. No streaming, no pass planning, no `ActionState`:
//! an independent path for the engine to be checked against.

use lqml::engine::{eval_condition, MetricError, TypeIndex};
use lqml::model::{Action, ActionKind, Blueprint, ExtensionRegistry, FinallyExpr, RatioOperand};
use lqml::rational::Rational;
use lqml::term::{Term, Triple, TriplePosition};
use std::collections::{HashMap, HashSet};

/// The oracle's verdict for one blueprint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub blueprint_name: String,
    pub value: Result<Rational, MetricError>,
}

pub fn assess_bruteforce(
    blueprints: &[Blueprint],
    triples: &[Triple],
    registry: &ExtensionRegistry,
) -> Vec<OracleOutcome> {
    let mut index = TypeIndex::new();
    for triple in triples {
        index.observe(triple);
    }
    blueprints
        .iter()
        .map(|blueprint| {
            let matched: Vec<&Triple> = triples
                .iter()
                .filter(|t| eval_condition(&blueprint.match_expr, t, &index, registry))
                .collect();
            OracleOutcome {
                blueprint_name: blueprint.name.clone(),
                value: compute(blueprint, &matched),
            }
        })
        .collect()
}

fn compute(blueprint: &Blueprint, matched: &[&Triple]) -> Result<Rational, MetricError> {
    let count = matched.len() as i128;

    let unique_position = blueprint.actions.iter().find_map(|a| match a {
        Action::Unique(position) => Some(*position),
        _ => None,
    });
    let unique = unique_position.map(|position| distinct_terms(matched, position) as i128);

    let map_positions = blueprint.actions.iter().find_map(|a| match a {
        Action::Map { key, .. } => Some(*key),
        _ => None,
    });
    let map_keys = map_positions.map(|key| distinct_terms(matched, key) as i128);

    let action_value = |kind: ActionKind| -> Rational {
        Rational::integer(match kind {
            ActionKind::Count => count,
            ActionKind::Unique => unique.unwrap_or(0),
            ActionKind::Map => map_keys.unwrap_or(0),
        })
    };
    let operand = |op: &RatioOperand| -> Rational {
        match op {
            RatioOperand::Number(n) => *n,
            RatioOperand::ActionResult(kind) => action_value(*kind),
        }
    };
    match &blueprint.finally_expr {
        FinallyExpr::Number(n) => Ok(*n),
        FinallyExpr::ActionResult(kind) => Ok(action_value(*kind)),
        FinallyExpr::Ratio(n, d) => operand(n)
            .checked_div(operand(d))
            .ok_or(MetricError::DivisionByZero),
    }
}

fn distinct_terms(matched: &[&Triple], position: TriplePosition) -> usize {
    let seen: HashSet<Term> = matched.iter().map(|t| t.term_at(position)).collect();
    seen.len()
}

/// Group-by aggregation for map actions, used by tests that inspect the
/// accumulated value lists as multisets.
pub fn group_by(
    matched: &[&Triple],
    key: TriplePosition,
    value: TriplePosition,
) -> HashMap<Term, Vec<Term>> {
    let mut out: HashMap<Term, Vec<Term>> = HashMap::new();
    for t in matched {
        out.entry(t.term_at(key))
            .or_default()
            .push(t.term_at(value));
    }
    out
}
