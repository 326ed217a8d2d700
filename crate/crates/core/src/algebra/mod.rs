//! Finite Heyting algebras with a negation operator: evaluation, validity,
//! the negation hierarchy, model enumeration and countermodel search.

mod classify;
mod enumerate;
mod file;
mod lattice;
mod model;

use thiserror::Error;

pub use classify::{classify_negation, negation_class, right_adjoint, Classification, NegationClass, Property};
pub use enumerate::{
    countermodel_search, distributive_lattices, enumerate_models, Bounds, Countermodel, SearchReport,
    DEFAULT_MAX_LATTICE, HARD_MAX_LATTICE,
};
pub use file::{load_model, model_from_toml, model_to_toml, resolve_model, ModelFile};
pub use lattice::{
    build_algebra, build_algebra_named, upset_algebra_of, upsets, FiniteLattice, HeytingAlgebra, MAX_ELEMENTS,
};
pub use model::{
    builtin_model, entails, eval, is_valid, Entailment, NegationModel, Program, Validity, Valuation,
    BUILTIN_MODELS,
};

pub(crate) use lattice::from_order;
pub(crate) use model::for_each_valuation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not distributive: {0}")]
    NotDistributive(String),
    #[error("residuation fails at {0}")]
    ResiduationFailure(String),
    #[error("invalid model: {0}")]
    InvalidSpec(String),
    #[error("atom {0} has no value")]
    UnboundAtom(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("adjoint law fails: {0}")]
    AdjointLawFailure(String),
    #[error("unknown builtin {0}")]
    UnknownBuiltin(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}
