//! Exact polyhedral computations on the symmetric and graphical travelling
//! salesman polyhedra of small complete graphs.
//!
//! Everything is computed in exact rational arithmetic: vertex and facet
//! enumeration, face lattices, blocking and polar polyhedra, the
//! tight-triangular normal form of inequalities, the projective maps between
//! the two polars, and parsimony tests for relaxations.

#![allow(clippy::needless_range_loop)]

pub mod artifacts;
pub mod cli;
pub mod exactcore;
pub mod instances;
pub mod parsimony;
pub mod polyhedra;
pub mod rotation;
pub mod ttgeom;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("polyhedron is not pointed")]
    NotPointed,
    #[error("representations disagree: {0}")]
    Inconsistent(String),
    #[error("point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("face is not good: {0}")]
    NotGood(String),
    #[error("unclassifiable facet: {0}")]
    Unclassifiable(String),
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
