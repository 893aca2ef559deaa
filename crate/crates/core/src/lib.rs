//! Exact computations with deformed tensor algebras
//! `T(V)⊗ℚ[ℏ]/ℏ^K / (x_i x_j − x_j x_i − R_ij)`.
//!
//! The crate builds relation sets from Lie algebras (Chevalley–Eilenberg
//! deformation of the cobar resolution), Poisson bivectors (first-order
//! symmetrized relations plus an order-by-order correction search) or raw
//! relations, and decides the PBW property by terminating ℏ-truncated
//! rewriting and overlap (diamond lemma) checks. Supporting machinery covers
//! bar and cobar complexes with exact rank computations, Hochschild cochains
//! on `S(V)` with the Gerstenhaber bracket, and the transport of cochains to
//! derivations of the reduced cobar algebra.
//!
//! All arithmetic is over ℚ; nothing in the crate uses floating point.

pub mod complex;
pub mod linalg;
pub mod pbw;
pub mod polyvector;
pub mod scalar;
pub mod tensor;

pub use scalar::{HbarSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mismatched truncation orders: K={left} vs K={right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("structural error: {0}")]
    Structural(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
