//! Exact construction and verification of twisted vertex operator
//! representations of centrally extended unitary Lie algebras over skew
//! Laurent polynomial rings.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalars`]: cyclotomic numbers and rational functions in formal parameters.
//! * [`series`]: one-variable formal distributions, δ and Dδ atoms, partial-fraction identities.
//! * [`lattice`]: the lattice `Γ = ⊕ Zε_i`, its 2-cocycle and the twisted group algebra `C[Γ/2Γ]`.
//! * [`fock`]: the truncated Fock space `C[Γ/2Γ] ⊗ S(H⁻)` with Heisenberg and group actions.
//! * [`vertex`]: vertex operators as exact mode matrices and their commutator formula.
//! * [`unitary`]: the skew Laurent ring, the centrally extended `gl_ν` bracket, the
//!   unitary subalgebra and its representation on the Fock space.
//! * [`clifford`]: the Clifford algebra picture of `C[Γ/2Γ]` and its simple components.
//! * [`hermitian`]: the positive definite form and unitarity of the representation.

pub mod clifford;
pub mod fock;
pub mod hermitian;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod scalars;
pub mod series;
pub mod unitary;
pub mod vertex;

pub use report::{CheckReport, Mismatch};
pub use scalars::{Cyclo, FieldConfig, Param, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] scalars::ScalarError),
    #[error("insufficient headroom: state of degree {degree} is outside the operator domain (depth {depth})")]
    InsufficientHeadroom { degree: u32, depth: u32 },
    #[error("mixed expansion directions in a product")]
    MixedDirections,
    #[error("zero scale in vertex operator")]
    ZeroScale,
    #[error("element is not unitary")]
    NotUnitary,
    #[error("mode {mode} outside window {window}")]
    ModeOutOfWindow { mode: i64, window: i64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Deliberate corruptions, each honored by the verifiers it applies to and
/// ignored by the rest. They exist to show that a check can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Flips the sign of `ε(ε_1, ε_2)` in the cocycle.
    CocycleFlip,
    /// Drops the zero-mode scalar from the representation of `e_ii(0, α)`.
    DropZeroModeDelta,
    /// Drops the sign `(−1)^{m+1}` from `τ`.
    DropTauSign,
    /// Halves the coefficient of the `Dδ` terms.
    DeltaCoefficient,
    /// Drops the mode condition `m ∈ |σ|Z` from `Λ_σ`.
    DropModeCondition,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::CocycleFlip,
        Mutation::DropZeroModeDelta,
        Mutation::DropTauSign,
        Mutation::DeltaCoefficient,
        Mutation::DropModeCondition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::CocycleFlip => "cocycle-flip",
            Mutation::DropZeroModeDelta => "drop-zero-mode-delta",
            Mutation::DropTauSign => "drop-tau-sign",
            Mutation::DeltaCoefficient => "delta-coefficient",
            Mutation::DropModeCondition => "drop-mode-condition",
        }
    }

    pub fn from_name(s: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s)
    }

    /// The cocycle to use under this mutation.
    pub fn cocycle(m: Option<Mutation>) -> lattice::Cocycle {
        match m {
            Some(Mutation::CocycleFlip) => lattice::Cocycle::with_flip(0, 1),
            _ => lattice::Cocycle::standard(),
        }
    }
}
