//! Two-dimensional acoustic scattering and inverse-scattering toolkit.
//!
//! The library synthesizes far-field patterns for sound-soft and sound-hard
//! obstacles augmented with a reference point scatterer, recovers phased far
//! fields from phaseless moduli by per-entry trilateration, and localizes
//! scatterers with direct-sampling indicator functions evaluated on
//! rectangular grids.
//!
//! Module map:
//! - [`specfun`]: Bessel and Hankel functions of integer order.
//! - [`geometry`]: parameterized boundary curves, normals, quadrature nodes.
//! - [`forward`]: Nyström boundary-integral solver, point-scatterer model,
//!   additive/coupled combination, and a Mie-series oracle for circles.
//! - [`phase_retrieval`]: trilateration and phased far-field recovery.
//! - [`indicators`]: sampling indicators on grids.
//! - [`harness`]: noise injection, file formats, scene configs, and the
//!   end-to-end reconstruction pipelines.

pub mod geometry;
pub mod specfun;
pub mod forward;
pub mod phase_retrieval;
pub mod indicators;
pub mod harness;

use std::fmt;

/// Unified error type for the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    Domain(String),
    /// Malformed configuration or file content.
    Parse(String),
    /// Inconsistent metadata between inputs that must match.
    Mismatch(String),
    /// Linear solve failed or the system is numerically singular.
    Solve(String),
    /// Underlying I/O failure, flattened to a message.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Mismatch(m) => write!(f, "mismatch: {m}"),
            Error::Solve(m) => write!(f, "solve error: {m}"),
            Error::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
