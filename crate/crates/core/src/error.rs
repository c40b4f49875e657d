//! Error type shared by all modules of the crate.

use crate::state::DegeneracyConfiguration;

/// Errors produced by state construction, decomposition and equivalence search.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Every coefficient magnitude is below the zero threshold.
    #[error("state vector is numerically zero")]
    ZeroState,

    /// Coefficient list length does not match the declared qubit count.
    #[error("coefficient list has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    /// Two states with different qubit counts cannot be compared.
    #[error("qubit counts differ: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    /// Multiplicities are empty, contain a zero, or do not sum to the qubit count.
    #[error("invalid multiplicity list: {0}")]
    BadConfiguration(String),

    /// Determinant is below the invertibility floor relative to the entries.
    #[error("local operation is numerically singular (|det| = {det:.3e}, floor = {floor:.3e})")]
    SingularOperation { det: f64, floor: f64 },

    /// Root iteration did not settle within the sweep cap.
    #[error("root finder did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// The image of a point under a local operation has vanishing norm.
    #[error("image of point under local operation is numerically zero")]
    DegenerateImage,

    /// A point triple passed to the three-point map contains coincident points.
    #[error("point triple contains coincident points (chordal distance {0:.3e})")]
    DegenerateTriple(f64),

    /// Cross-ratio input points must be pairwise distinct.
    #[error("cross-ratio requires pairwise distinct points")]
    DegeneratePoints,

    /// Families with four or more distinct points have no single representative.
    #[error("configuration {0} holds a continuous range of classes; no single representative")]
    ContinuousFamily(DegeneracyConfiguration),

    /// Canonical form needs at least three distinct points.
    #[error("canonical form needs at least 3 distinct points, state has {0}")]
    TooFewPoints(usize),

    /// Full-vector operations are capped to keep memory bounded.
    #[error("full-vector operations are capped at {max} qubits, requested {got}")]
    TooLarge { max: usize, got: usize },

    /// Amplitudes within a Hamming-weight class disagree.
    #[error("vector is not permutation symmetric (relative deviation {0:.3e})")]
    NotSymmetric(f64),

    /// No candidate operation passed witness verification.
    #[error("no constructed witness passed verification")]
    WitnessNotFound,

    /// A state or operation file does not match the expected schema.
    #[error("invalid input file: {0}")]
    InvalidFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
