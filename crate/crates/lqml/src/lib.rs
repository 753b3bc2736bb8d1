//! Toolchain for the Luzzu Quality Metric Language (LQML).
//!
//! LQML is a small declarative language for linked-data quality metrics.
//! A metric definition — a *blueprint* — names a metric IRI, describes it,
//! matches triples with a pattern, accumulates through `count`, `unique`,
//! and `map` actions, and computes a final value such as a ratio of two
//! action results.
//!
//! This crate covers the whole pipeline:
//!
//! - [`lexer`] and [`parser`] turn `.lqm` source into syntax trees;
//! - [`model`] validates trees into immutable [`model::Blueprint`]s,
//!   resolving custom functions against an [`model::ExtensionRegistry`];
//! - [`engine`] evaluates blueprints over a stream of triples in one or
//!   two passes, with memory bounded by the accumulators;
//! - [`ntriples`] streams datasets in, [`turtle`] writes graphs out;
//! - [`observations`] serializes metric values as quality metadata;
//! - [`lbo`] exports and re-imports blueprints as RDF so they can be
//!   shared, and [`sparql`] translates match patterns to SPARQL queries.

pub mod ast;
pub mod clock;
pub mod engine;
pub mod lbo;
pub mod lexer;
pub mod model;
pub mod ntriples;
pub mod observations;
pub mod parser;
pub mod rational;
pub mod sparql;
pub mod term;
pub mod turtle;
pub mod vocab;

pub use ast::RawBlueprint;
pub use engine::{assess, Assessment, ObservationRecord};
pub use model::{validate, Blueprint, ExtensionRegistry};
pub use parser::{parse_source, SyntaxError};
pub use rational::Rational;
pub use term::{Iri, Literal, Term, Triple};
