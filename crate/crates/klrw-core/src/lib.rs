//! Crystal-graph combinatorics and weighted KLRW diagram combinatorics for
//! quivers of finite type.
//!
//! The crate builds fundamental-weight crystal graphs, places the strings of
//! weighted KLRW idempotent diagrams by exact (infinitesimal-aware)
//! coordinates, enumerates homogeneous sandwich cellular bases of the
//! cyclotomic quotients, and derives graded ranks, graded decomposition
//! numbers, simple-module dimensions and (semi)simplicity reports from them.
//!
//! Modules mirror the pipeline:
//!
//! - [`cartan`] — finite-type Cartan/quiver data, Q-polynomial tables and the
//!   local degree rules for diagram crossings and dots.
//! - [`crystal`] — fundamental crystal graphs (tableaux, spin and monomial
//!   models), rooted paths, two-color faces, blocks and plactic diagnostics.
//! - [`wdiagram`] — exact-coordinate idempotent diagrams: affine charge,
//!   blocking, parking, anchors, steadiness and straight-segment degrees.
//! - [`cellular`] — dotted idempotents, sandwiched dots, face permutations,
//!   dominance order and the cell datum with its graded numerology.
//! - [`reports`] — nonvanishing ranges, l/u bounds and semisimplicity
//!   verdicts.

pub mod cartan;
pub mod cellular;
pub mod coord;
pub mod crystal;
pub mod laurent;
pub mod reports;
pub mod wdiagram;

pub use cartan::{CartanDatum, CartanType, Family};
pub use wdiagram::IdempotentDiagram;
pub use coord::Coord;
pub use crystal::CrystalGraph;
pub use laurent::LaurentPoly;


/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested Cartan type does not exist (bad family/rank combination).
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    /// Affine quivers are rejected: the cyclotomic algebras there are not
    /// known to be cellular, and some are known not to be.
    #[error("affine type {0} is not supported: cellularity fails or is open in affine types")]
    AffineType(String),
    /// A configuration value is out of range or inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// A crystal construction exceeded the configured vertex limit.
    #[error("crystal size limit exceeded: {0} vertices (limit {1})")]
    SizeLimit(usize, usize),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
