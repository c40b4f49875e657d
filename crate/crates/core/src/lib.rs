//! Classification of symmetric N-qubit pure states into entanglement
//! families under stochastic local operations, through the point
//! representation on the Riemann sphere.
//!
//! A symmetric state of N qubits corresponds to an unordered multiset of
//! N points on the sphere, the roots of an associated polynomial built
//! from its Dicke coefficients. Invertible local operations act on the
//! points as Mobius transformations, so the multiplicity partition of the
//! points is invariant: it labels the entanglement family of the state,
//! and there are exactly p(N) families. Families with at most three
//! distinct points form a single equivalence class each; larger families
//! carry d - 3 continuous parameters.
//!
//! The crate provides:
//!
//! - [`state`]: canonical value types for states, points, configurations
//!   and local operations;
//! - [`majorana`]: conversion between Dicke coefficients and point
//!   multisets, including the root finder in [`polynomial`];
//! - [`classification`]: family enumeration, labels and canonical
//!   representatives;
//! - [`slocc`]: the equivalence decision with an explicit witness
//!   operation, normal forms and cross-ratio invariants;
//! - [`oracle`]: brute-force full-vector checks and seeded generators for
//!   tests and reproduction;
//! - [`io`]: the JSON file formats shared with the command-line tool.
//!
//! All types are immutable after construction and safe to share across
//! threads.

pub mod classification;
pub mod error;
pub mod io;
pub mod majorana;
pub mod oracle;
pub mod polynomial;
pub mod slocc;
pub mod state;

pub use error::{Error, Result};
pub use polynomial::ComplexPolynomial;
pub use state::{
    DegeneracyConfiguration, DickeVector, LocalOperation, MajoranaDecomposition, SpinorPoint,
    DEFAULT_TOL,
};
