//! Frame-level geometry of real hypersurfaces in non-flat complex space forms.
//!
//! The library works entirely in orthonormal frames: a hypersurface point is a
//! pair of matrices (structure tensor, shape operator) together with a
//! distinguished basis slot for the structure vector field. On top of that it
//! provides
//!
//! - curvature evaluation through the Gauss equation ([`geometry`]),
//! - a catalog of the standard Hopf model hypersurfaces with closed-form
//!   principal curvatures ([`models`]),
//! - membership tests and least-squares fits for the kappa-, (kappa, mu)- and
//!   (kappa, mu, nu)-nullity conditions on the structure vector field
//!   ([`nullity`]),
//! - the non-Hopf frame equations and the constraint-forcing chains that
//!   certify the associated non-existence results ([`nonhopf`]).

pub mod geometry;
pub mod models;
pub mod nonhopf;
pub mod nullity;
pub mod rng;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ambient space: {0}")]
    InvalidAmbient(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid model spec: {0}")]
    InvalidModel(String),
    #[error("invalid nullity family: {0}")]
    InvalidNullity(String),
    #[error("hopf relation inconsistency: {0}")]
    HopfInconsistency(String),
    #[error("not a kappa-nullity member: {0}")]
    NotKappaMember(String),
    #[error("invalid non-hopf state: {0}")]
    InvalidState(String),
    #[error("invalid sampler: {0}")]
    InvalidSampler(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use geometry::{AmbientSpace, FramePoint};
pub use models::{ModelFamily, ModelSpec, PrincipalData};
pub use nonhopf::{DerivativeAssignment, NonHopfState};
pub use nullity::{NullityFamily, NullityFit};
