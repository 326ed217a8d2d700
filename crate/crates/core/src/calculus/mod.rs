//! Hilbert-style proof checking for the da Costa family of systems.
//!
//! The kernel knows three justifications: an axiom instance, Modus Ponens,
//! and an instance of a previously registered theorem. Everything else
//! (the deduction theorem, corpus generators, splicing) sits outside it
//! and produces plain scripts that the kernel re-checks.

mod builder;
mod checker;
pub mod corpus;
mod schema;
mod script;
mod splice;

use thiserror::Error;

use crate::syntax::{SubstError, SyntaxError};

pub use builder::{Builder, Term};
pub use checker::{check_proof, register_theorem, Failure, FailureKind, Registry, Theorem, Verdict};
pub use schema::{
    axiom_formulas, catalog, fixed_pattern, instantiate_axiom, instantiate_axiom_partial, list_axioms, schema,
    AxiomSchema, SystemDef, BUILTIN_SYSTEMS,
};
pub use script::{parse_script, render_script, Justification, Line, ProofScript};
pub use splice::{splice_all, splice_line};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("unknown system {0}")]
    UnknownSystem(String),
    #[error("axiom {name} is not part of {system}")]
    UnknownAxiom { name: String, system: String },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error(transparent)]
    Subst(#[from] SubstError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("script line {line}: {message}")]
    Script { line: usize, message: String },
    #[error("theorem {0} is already registered for this system")]
    DuplicateName(String),
    #[error("proof of {name} rejected: {reason}")]
    RejectedProof { name: String, reason: String },
    #[error("cannot build proof: {0}")]
    Build(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("cannot splice: {0}")]
    Splice(String),
}
