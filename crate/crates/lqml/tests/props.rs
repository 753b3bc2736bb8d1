//! Property tests over generated inputs.

use lqml::ast::pretty_print;
use lqml::lexer::tokenize;
use lqml::model::{check_blueprint, validate};
use lqml::parser::parse_source;
use lqml::rational::Rational;
use lqml_testkit::gen::{random_raw_blueprint, standard_registry};
use lqml_testkit::rng::Rng;
use proptest::prelude::*;

proptest! {
    /// The lexer never panics and every token's position lies inside the
    /// source.
    #[test]
    fn tokenize_total_and_positions_in_bounds(source in ".{0,200}") {
        let line_count = source.lines().count().max(1) as u32;
        match tokenize(&source) {
            Ok(tokens) => {
                for token in tokens {
                    prop_assert!(!token.lexeme.is_empty());
                    prop_assert!(token.line >= 1 && token.line <= line_count);
                    prop_assert!(token.column >= 1);
                }
            }
            Err(err) => {
                prop_assert!(err.line >= 1 && err.line <= line_count);
                prop_assert!(err.column >= 1);
            }
        }
    }

    /// Decimal text parses to a rational that renders back to an equal
    /// value.
    #[test]
    fn rational_decimal_round_trip(int_part in 0u64..1_000_000, frac in 0u32..1000) {
        let text = format!("{int_part}.{frac:03}");
        let parsed = Rational::parse_decimal(&text).unwrap();
        let rendered = parsed.to_plain_string();
        let reparsed = Rational::parse_decimal(&rendered).unwrap();
        prop_assert_eq!(parsed, reparsed);
    }

    /// Pretty-printing a generated tree and reparsing yields a
    /// structurally identical tree, and validation accepts both.
    #[test]
    fn pretty_print_round_trip(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let raw = random_raw_blueprint(&mut rng, (seed % 1000) as usize);
        let printed = pretty_print(&raw);
        let reparsed = parse_source(&printed)
            .unwrap_or_else(|e| panic!("generated text failed to parse: {e}\n{printed}"));
        prop_assert_eq!(reparsed.len(), 1);
        prop_assert!(raw.structurally_eq(&reparsed[0]), "round trip changed:\n{}", printed);

        let registry = standard_registry();
        let blueprint = validate(&reparsed[0], &registry).unwrap();
        prop_assert!(blueprint.feature_complete());
        prop_assert!(check_blueprint(&blueprint, &registry).is_empty());
    }
}
