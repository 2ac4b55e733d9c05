//! Exact homological algebra in categories of representations of bound
//! quiver algebras over prime fields.
//!
//! The category of finite-dimensional representations is an exact, hence
//! extriangulated, category. This crate computes in it exactly: Ext¹ classes
//! in fixed coordinates with their functorial actions and realizations,
//! injective envelopes and resolutions, injective dimensions, and
//! verifiers that rebuild the diagrams behind Schanuel's lemma, its long
//! form and the injective dimension theorem on concrete instances.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exactlin;
pub mod extstruct;
pub mod quivalg;
pub mod repcat;
pub mod report;
pub mod resolve;
pub mod suites;

use alloc::string::String;

pub use exactlin::{FpMatrix, FpScalar, LinalgError, Prime};
pub use extstruct::{Conflation, ExtClass, ExtSpace};
pub use quivalg::{BoundQuiverAlgebra, Quiver, RelationSet};
pub use repcat::{Biproduct, IsoOutcome, RepMorphism, Representation};
pub use report::{Report, Verdict};
pub use resolve::{DimensionVerdict, InjectiveResolution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("relations not admissible: {0}")]
    NotAdmissible(String),
    #[error("path not composable: {0}")]
    NotComposable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("morphism is not natural: {0}")]
    NotNatural(String),
    #[error("not a conflation: {0}")]
    NotAConflation(String),
    #[error("random generation budget exceeded: {0}")]
    GenerationBudgetExceeded(String),
    #[error("lifting failed: {0}")]
    LiftFailed(String),
    #[error("source mismatch: {0}")]
    SourceMismatch(String),
    #[error("target mismatch: {0}")]
    TargetMismatch(String),
    #[error("extension classes live in different groups")]
    BaseMismatch,
    #[error("not a retraction of the inflation")]
    NotARetraction,
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("uniqueness failure: {0}")]
    UniquenessFailure(String),
    #[error("extension to the injective envelope failed: {0}")]
    ExtensionFailed(String),
    #[error("resolution too short: need {needed} steps, have {have}")]
    DepthInsufficient { needed: usize, have: usize },
    #[error("isomorphism search inconclusive: {0}")]
    IsoSearchInconclusive(String),
}
