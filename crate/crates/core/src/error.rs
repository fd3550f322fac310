//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A cohomology class does not live in the lattice it was paired against.
    #[error("invalid class: expected rank {expected}, got {got}")]
    InvalidClass { expected: usize, got: usize },

    /// Integer overflow in checked arithmetic. Coefficients in this problem
    /// are tiny; overflow means a bug, so we fail loudly instead of wrapping.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Exceptional-class enumeration is finite only up to eight blow-ups.
    #[error("unsupported rank: X_{0} has infinitely many exceptional classes (k > 8)")]
    UnsupportedRank(usize),

    /// Model is not of a kind the requested operation supports.
    #[error("unsupported model kind: {0}")]
    UnsupportedModel(String),

    /// Normal Chern number parity does not match the claimed ruled surface.
    #[error("inconsistent extremum: b = {b} has wrong parity for {model}")]
    InconsistentExtremum { b: i64, model: String },

    /// A wall crossing was requested with data that does not describe a wall.
    #[error("not a wall: {0}")]
    NotAWall(String),

    /// Simultaneous blow-down along cycles that are not pairwise orthogonal.
    #[error("simultaneous blow-down inconsistency: {0}")]
    BlowdownInconsistent(String),

    /// Level-0 wall crossing with an empty surface list when the profile
    /// promises fixed surfaces there.
    #[error("empty surface list at level-0 wall")]
    EmptySurfaceWall,

    /// Degenerate input to the splitting enumerator.
    #[error("empty input: splitting requires volume >= 1, got {0}")]
    EmptyInput(i64),

    /// Polytope vertex data failed the Delzant smoothness test.
    #[error("not Delzant: {0}")]
    NotDelzant(String),

    /// No moment-map shift makes the fixed-point levels balanced.
    #[error("not balanced-compatible: {0}")]
    NotBalanced(String),

    /// A toric report matched zero or several classification records.
    #[error("ambiguous match: {0}")]
    AmbiguousMatch(String),

    /// Malformed fixture file.
    #[error("fixture parse error: {0}")]
    FixtureParse(String),

    /// An internal cross-check failed; the classification output cannot be trusted.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
