use thiserror::Error;

use crate::bitstring::BitString;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("position {pos} out of range for length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance too large: {what} = {value} exceeds cap {cap}")]
    InstanceTooLarge {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    /// The budget row admits no assignment. The optimum is still reported.
    #[error("infeasible budget: optimum {optimum} exceeds budget {budget}")]
    InfeasibleBudget {
        optimum: i128,
        budget: i128,
        argmin: BitString,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    /// Short machine-readable tag, used on the CLI error stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::PositionOutOfRange { .. } => "position-out-of-range",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Overflow(_) => "overflow",
            Error::Parse { .. } => "parse",
            Error::InstanceTooLarge { .. } => "instance-too-large",
            Error::InfeasibleBudget { .. } => "infeasible-budget",
        }
    }

    /// Resource errors (caps, overflow) as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::InstanceTooLarge { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
