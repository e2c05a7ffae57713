use thiserror::Error;

use crate::perm::Point;

/// Failures surfaced by evaluation, construction and the finite lab.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A lazy case-committed construction ran past its search window.
    #[error("case stall: no admissible point within {window} candidates after {after}")]
    CaseStall { after: Point, window: u64 },

    /// Orbit classification hit a point whose orbit did not close within the bound.
    #[error("unresolved orbit at {point} (bound {bound})")]
    UnresolvedOrbits { point: Point, bound: u64 },

    /// Orbit matching could not find a partner orbit.
    #[error("match stall: {0}")]
    MatchStall(String),

    #[error("degree {degree} exceeds ceiling {ceiling}")]
    DegreeTooLarge { degree: usize, ceiling: usize },

    #[error("generating set too large: more than {cap} elements")]
    SetTooLarge { cap: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("rejected: {0}")]
    Reject(String),

    /// A lazy construction exceeded its stage budget.
    #[error("stage cap {cap} exceeded")]
    StageCap { cap: u64 },

    #[error("scan exhausted: {0}")]
    ScanExhausted(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CaseStall { .. } => "CASE_STALL",
            Error::UnresolvedOrbits { .. } => "UNRESOLVED_ORBITS",
            Error::MatchStall(_) => "MATCH_STALL",
            Error::DegreeTooLarge { .. } => "DEGREE_TOO_LARGE",
            Error::SetTooLarge { .. } => "SET_TOO_LARGE",
            Error::PreconditionViolation(_) => "PRECONDITION_VIOLATION",
            Error::Reject(_) => "REJECT",
            Error::StageCap { .. } => "STAGE_CAP",
            Error::ScanExhausted(_) => "SCAN_EXHAUSTED",
            Error::Overflow(_) => "OVERFLOW",
            Error::Parse(_) => "PARSE",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
