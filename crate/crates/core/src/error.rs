use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("lines are parallel (|cross| = {cross:.3e})")]
    ParallelLines { cross: f64 },

    #[error("the surface passes through the origin (|D0| = {offset:.3e}); contact side is undefined")]
    OriginOnPlane { offset: f64 },

    #[error("spring {spring} has zero length; its direction is undefined")]
    ZeroLengthSpring { spring: usize },

    #[error("free-length pose cannot be assembled: {reason}")]
    NotAssemblable { reason: String },

    #[error("spring {spring} has nonzero free length {value}; this solver requires zero free lengths")]
    NonZeroFreeLength { spring: usize, value: f64 },

    #[error("expected L01 > 0 and L02 = L03 = 0, got free lengths {free_lengths:?}")]
    WrongFreeLengthPattern { free_lengths: [f64; 3] },

    #[error("quartic in tan(beta/2) degenerates to degree {degree}")]
    DegenerateQuartic { degree: usize },

    #[error("cannot take roots of the zero polynomial")]
    ZeroPolynomial,

    #[error("root finder did not converge after {iterations} iterations (worst backward error {worst_residual:.3e})")]
    NonConvergence { iterations: usize, worst_residual: f64 },

    #[error("interpolated determinant fails held-out validation (relative mismatch {mismatch:.3e}, degree bound {degree_bound})")]
    InterpolationMismatch { mismatch: f64, degree_bound: usize },

    #[error("probe interpolation in L is singular")]
    ProbeSingularity,

    #[error("quartic probe in L fails held-out validation (relative mismatch {mismatch:.3e})")]
    ProbeMismatch { mismatch: f64 },

    #[error("resultant has effective degree {actual}, expected {expected}")]
    DegreeMismatch { expected: usize, actual: usize },

    #[error("{stage}: {source}")]
    Stage { stage: &'static str, source: Box<Error> },

    #[error("invalid mechanism parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("unsupported free-length pattern {free_lengths:?}: need all zero, or L01 > 0 with L02 = L03 = 0")]
    UnsupportedFreeLengthPattern { free_lengths: [f64; 3] },
}

impl Error {
    /// Stage-wrapped errors report the inner error here.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Input problems as opposed to numerical failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self.root(),
            Error::InvalidParameter { .. }
                | Error::UnsupportedFreeLengthPattern { .. }
                | Error::WrongFreeLengthPattern { .. }
                | Error::NonZeroFreeLength { .. }
                | Error::OriginOnPlane { .. }
                | Error::ParallelLines { .. }
        )
    }

    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { field, reason: reason.into() }
    }
}
