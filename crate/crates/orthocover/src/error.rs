//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the geometric kernel and the covering constructions.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    /// Two vectors of different projective dimension were combined.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A projective vector with all coordinates zero.
    #[error("zero vector is not a projective point")]
    ZeroVector,

    /// A vector that cannot be normalized to the affine chart `x0 = 1`.
    #[error("vector has x0 = 0 and no affine representative")]
    NonAffine,

    /// An operation required a proper (interior) point.
    #[error("{context}: point is not proper (<x,x> = {form_value})")]
    NonProperPoint { context: &'static str, form_value: f64 },

    /// An operation received a non-finite scalar.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// An input fell outside the documented domain of an operation.
    #[error("{context}: argument out of domain")]
    OutOfDomain { context: &'static str },

    /// Schläfli parameter below the existence bound of the family.
    #[error("{{p,{q},{r}}}: p = {p} is below existence bound (need p >= {min} for integer tilings)")]
    BelowExistenceBound { q: u32, r: u32, p: f64, min: f64 },

    /// Unsupported (q,r) family.
    #[error("unsupported family ({q},{r}); supported: (3,6), (4,4), (6,3)")]
    UnsupportedFamily { q: u32, r: u32 },

    /// Real (non-integer) p requested outside the supported window.
    #[error("real parameter p = {p} supported only for family (3,6) with 6 < p < 7")]
    RealParameterUnsupported { p: f64 },

    /// The coordinate system of an orthoscheme has no positive solution.
    #[error("no positive coordinate solution: {0}")]
    NoPositiveSolution(&'static str),

    /// A degenerate configuration (e.g. ball through its own center).
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    /// A required ball/edge intersection does not exist on the segment.
    #[error("missing required intersection: {0}")]
    MissingIntersection(&'static str),

    /// A non-realizable case was passed where a realizable one is required,
    /// or vice versa.
    #[error("case {case} is not valid here: {context}")]
    InvalidCase { case: &'static str, context: &'static str },

    /// An optimizer found no valid point in its domain.
    #[error("no valid point in optimization domain")]
    EmptyValidRegion,

    /// A Monte Carlo bounding box touches or leaves the model ball.
    #[error("bounding box not strictly inside the unit ball")]
    BoxOutsideModel,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
