//! Formulas, their concrete syntax, and schematic matching.

mod formula;
mod parser;
mod pattern;

use thiserror::Error;

pub use formula::{derived_form, render, render_sugared, Derived, Formula};
pub use parser::{parse, parse_fixed, parse_pattern};
pub use pattern::{apply_subst, is_metavar_name, match_pattern, Pattern, SubstError, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("parameter error: {0}")]
    Parameter(String),
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["p", "q", "r", "A", "B", "x_1"]).prop_map(Formula::atom),
            Just(Formula::Bot),
            Just(Formula::Top),
        ];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::neg),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse(&render(&f)).unwrap(), f);
        }

        #[test]
        fn sugared_round_trip(f in arb_formula(), k in 1usize..4, wrap in 0u8..3) {
            let g = match wrap {
                0 => f.circ_iter(k),
                1 => f.cpow(k),
                _ => Formula::neg(Formula::and(f.cpow(k), f)),
            };
            prop_assert_eq!(parse(&render_sugared(&g)).unwrap(), g);
        }

        #[test]
        fn derived_forms_unfold(f in arb_formula(), n in 2usize..5) {
            let pow = derived_form(Derived::Pow(n), f.clone()).unwrap();
            let prev = derived_form(Derived::Pow(n - 1), f.clone()).unwrap();
            prop_assert_eq!(pow.clone(), prev.circ());
            let cpow = derived_form(Derived::CPow(n), f.clone()).unwrap();
            let cprev = derived_form(Derived::CPow(n - 1), f).unwrap();
            prop_assert_eq!(cpow, Formula::and(cprev, pow));
        }

        #[test]
        fn match_apply_adjoint(
            shape in arb_formula(),
            a in arb_formula(),
            b in arb_formula(),
        ) {
            // Build a schema from a random formula: atoms A and B become
            // metavariables.
            let pattern = Pattern::schematize(&shape);
            let s = Substitution::new().with("A", a).with("B", b);
            let bound: Substitution = pattern
                .metavars()
                .into_iter()
                .map(|v| (v.to_string(), s.get(v).unwrap().clone()))
                .collect();
            let target = apply_subst(&pattern, &bound).unwrap();
            let found = match_pattern(&pattern, &target).unwrap();
            prop_assert_eq!(&found, &bound);
            prop_assert_eq!(apply_subst(&pattern, &found).unwrap(), target);
        }
    }
}
