//! Birkhoff-polarity frames: the `lambda`/`rho` operators of a hereditary
//! incompatibility relation, the induced up-set algebra and Kripke
//! evaluation.

mod file;
mod frame;
mod semantics;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use file::{frame_from_toml, frame_to_toml, load_frame, resolve_frame, FrameFile};
pub use frame::{
    build_frame, build_frame_named, builtin_frame, check_galois, enumerate_frames, LawCheck, PolarityFrame, Side,
    BUILTIN_FRAMES, MAX_ENUM_WORLDS, MAX_WORLDS,
};
pub use semantics::{kripke_eval, kripke_set, upset_algebra, verify_frame_axioms, AxiomStatus, UpSetAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarityError {
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("R is not hereditary: {0}")]
    NotHereditary(String),
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("valuation is not hereditary: {0}")]
    NonHereditaryValuation(String),
    #[error("invalid frame: {0}")]
    InvalidSpec(String),
    #[error("unknown builtin {0}")]
    UnknownBuiltin(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
