use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("axiom violated: {axiom} at {at:?} (residual {residual:.3e})")]
    AxiomViolation {
        axiom: String,
        at: Vec<usize>,
        residual: f64,
    },

    #[error("fusion multiplicity {0} > 1 is not supported")]
    Multiplicity(u32),

    #[error("power iteration did not converge after {0} steps")]
    NonConvergence(usize),

    #[error("quantum dimensions inconsistent with the fusion ring (residual {0:.3e})")]
    InconsistentDims(f64),

    #[error("missing entry {0}")]
    MissingEntry(String),

    #[error("unexpected entry {0} (key is not admissible)")]
    UnexpectedEntry(String),

    #[error("twist of label {label} is not a phase (|theta| = {modulus})")]
    NonPhase { label: usize, modulus: f64 },

    #[error("category has no braiding")]
    NoBraiding,

    #[error("category is not premodular: {0}")]
    NotPremodular(String),

    #[error("Mueger tests disagree on label {0}")]
    MembershipDisagreement(usize),

    #[error("network is not planar: {0}")]
    NonPlanar(String),

    #[error("inadmissible vertex {0}")]
    InadmissibleVertex(usize),

    #[error("network is not in standard form: {0}")]
    NotStandardForm(String),

    #[error("network evaluation exceeded {0} moves")]
    NonTermination(usize),

    #[error("eigensolver failed: {0}")]
    EigenFailure(String),

    #[error("fast path disagrees with generic path by {0:.3e}")]
    FastpathMismatch(f64),

    #[error("enumeration of {count} trees exceeds budget {budget}")]
    ExplosionGuard { count: u128, budget: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("algebra is not commutative (residual {0:.3e})")]
    NotCommutative(f64),

    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("generated data failed {0}")]
    GeneratorInvalid(String),
}

impl Error {
    pub(crate) fn parse(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            at: at.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
