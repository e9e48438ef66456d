//! Exact combinatorial machinery for curves on surfaces.
//!
//! The library works at "desk scale": every quantity it reports is either
//! computed exactly (integer/rational arithmetic, exhaustive enumeration)
//! or explicitly flagged as truncated evidence. The main pieces:
//!
//! - [`surfaces`]: surface types `(g, p)`, Euler characteristics, and
//!   summaries of cut surfaces.
//! - [`farey`]: exact slope arithmetic on the one-holed torus and the
//!   four-holed sphere, with finite edge links.
//! - [`fillingsystem`]: polygonal decompositions induced by filling curve
//!   systems, cyclic edge-word curve codes, exact geometric intersection,
//!   bounded curve enumeration, Dehn twists, and subsurface projections.
//! - [`links`]: edge links in the bounded-intersection curve graph families,
//!   diameters, shortcut sets, distance certificates, and the edge classifier.
//! - [`surgery`]: curve surgery steps and zero-edge paths.
//! - [`girth`]: weighted multi-arcs on cut surfaces, dual graphs, girth
//!   bounds, the short-curve pipeline, and the constants audit.

pub mod config;
pub mod farey;
pub mod fillingsystem;
pub mod girth;
pub mod links;
pub mod report;
pub mod surfaces;
pub mod surgery;

use thiserror::Error;

/// Library-wide error type.
///
/// `Precondition` errors carry the violated hypothesis so the CLI can report
/// it verbatim (exit code 3); `InvalidInput` covers malformed configuration
/// and data (exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
