//! Exact-arithmetic reconstruction of the automorphism group generators of
//! the singular K3 surface of discriminant 7.
//!
//! The pipeline runs entirely over exact integers and rationals:
//!
//! 1. [`golay`] builds the Steiner system S(5,8,24) as a PSL2(23)-orbit and
//!    spans the binary Golay code.
//! 2. [`leech`] realizes Leech lattice vectors as 24-tuples of integers
//!    filtered by the Golay congruence conditions.
//! 3. [`lorentzian`] places them inside II(1,25) = U + Leech and produces
//!    Leech roots and the Weyl vector.
//! 4. [`ns_embed`] embeds an A6 chain of Leech roots, computes its orthogonal
//!    complement (the Neron-Severi lattice S_X, rank 20, discriminant 7), the
//!    28 nodal curve classes and the Coxeter graph they span.
//! 5. [`faces`] classifies the 126 Leech roots cutting out the faces of the
//!    restricted chamber D' into types A6+A1 / A7 / D7 / E7.
//! 6. [`symmetry`] computes the automorphism group of the Coxeter graph
//!    (PGL2(7), order 336) and lifts it to isometries of S_X.
//! 7. [`fibrations`] finds, for each non-curve face, the elliptic fibration
//!    whose fiber class lies in the face, and builds the associated inversion
//!    involution as an integral isometry.
//! 8. [`reduction`] reduces ample classes into D' by greedy height descent
//!    over the involutions and decomposes isometries into an involution word
//!    followed by a graph automorphism.
//!
//! The [`model`] module wires the stages together; [`report`] runs the full
//! verification battery behind the `verify` CLI subcommand.

pub mod faces;
pub mod fibrations;
pub mod golay;
pub mod lattice;
pub mod leech;
pub mod lorentzian;
pub mod model;
pub mod ns_embed;
pub mod reduction;
pub mod report;
pub mod symmetry;

use thiserror::Error;

/// Crate-wide error type.
///
/// `InvalidArgument` marks caller mistakes (bad dimensions, unsatisfied
/// preconditions); `Inconsistency` marks violations of internally verified
/// mathematical facts and always carries a diagnostic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("consistency failure: {0}")]
    Inconsistency(String),
    #[error("not in the involution-automorphism group: {0}")]
    NotInGroup(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inconsistency(msg.into()))
}
