//! Premodular category toolkit.
//!
//! Load or generate fusion-category data (`N`, `F`, `R`), check the pentagon and hexagon
//! axioms, compute S-matrices, Mueger centers and connected S-matrices, and evaluate the
//! topological entanglement entropy diagnostics of Levin-Wen and Walker-Wang models.
//!
//! Conventions: `F^d_{abc}[e,f]` is stored under key `[a,b,c,d,e,f]` with `a b -> e`,
//! `e c -> d`, `b c -> f`, `a f -> d`; `R_{ab}^c` under `[a,b,c]`. Label 0 is the unit.
//! Fusion multiplicities are at most 1. Entropies are in nats.

pub mod algebra;
pub mod braided;
pub mod catalog;
pub mod check;
pub mod entropy;
pub mod error;
pub mod ring;
pub mod smat;
pub mod trees;

pub type C64 = num_complex::Complex64;

/// Default residual tolerance for axiom checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for the `delta = log D^2_Mueger` comparison.
pub const CONJECTURE_TOL: f64 = 1e-8;

pub use algebra::{
    check_commutative, enumerate_algebras_pointed, mueger_relation, validate_algebra, AlgebraObject,
    FoundAlgebra, MuegerRelation,
};
pub use braided::{validate_category, CategoryData, FKey, FSymbols, RKey, RSymbols};
pub use catalog::{emit_category, parse_algebra, parse_category, CatalogEntry};
pub use check::{Residual, ValidationResult};
pub use entropy::{
    entropy_report, BoundaryMethod, BoundaryOutcome, BoundaryResult, EntropyReport, RegionSpec,
};
pub use error::{Error, Result};
pub use ring::{validate_ring, FusionRing, Label};
pub use smat::{classify, gram_spectrum, Classification, GramSpectrum, SMatrixSuite};
