use thiserror::Error;

use crate::types::TypeSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("vertex {vertex} inside base")]
    VertexInsideBase { vertex: u64 },

    #[error("invalid vertex set: {0}")]
    InvalidSet(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("canonicalization bound exceeded: order {order} > {max}")]
    CanonBound { order: usize, max: usize },

    #[error("{what} out of range: {value} (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        allowed: String,
    },

    #[error("dead end at step {step}: no host vertex of the required type ({remaining} pool vertices left)")]
    DeadEnd {
        step: usize,
        required: TypeSpec,
        remaining: usize,
    },

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("prefix exhausted at block {block} (scan reached {scan_position})")]
    PrefixExhausted { block: usize, scan_position: u64 },

    #[error("type class empty before forcing at level {level} (expected about {expected:.3} candidates in the prefix)")]
    TypeClassEmpty { level: usize, expected: f64 },

    #[error("forcing failed at level {level} within prefix bound {bound}")]
    ForcingFailed { level: usize, bound: u64 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    /// True for outcomes that mean "the finite prefix or budget was too small",
    /// as opposed to bad input.
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            Error::DeadEnd { .. }
                | Error::BudgetExhausted { .. }
                | Error::PrefixExhausted { .. }
                | Error::TypeClassEmpty { .. }
                | Error::ForcingFailed { .. }
        )
    }

    /// Short machine-readable tag used in JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Contract(_) => "contract",
            Error::VertexInsideBase { .. } => "vertex_inside_base",
            Error::InvalidSet(_) => "invalid_set",
            Error::Parse { .. } => "parse",
            Error::CanonBound { .. } => "canon_bound",
            Error::OutOfRange { .. } => "out_of_range",
            Error::DeadEnd { .. } => "dead_end",
            Error::BudgetExhausted { .. } => "budget_exhausted",
            Error::PrefixExhausted { .. } => "prefix_exhausted",
            Error::TypeClassEmpty { .. } => "type_class_empty",
            Error::ForcingFailed { .. } => "forcing_failed",
            Error::Verification(_) => "verification",
            Error::Io { .. } => "io",
        }
    }
}
