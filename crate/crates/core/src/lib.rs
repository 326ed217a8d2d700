//! Proof checking and finite-model semantics for da Costa-style weakenings
//! of intuitionistic negation.

pub mod acceptance;
pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod polarity;
pub mod syntax;

pub use syntax::{parse, render, Formula, Pattern, Substitution};
