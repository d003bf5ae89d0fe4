use thiserror::Error;

use crate::group::DihedralElement;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group size n={n}: {reason}")]
    InvalidOrder { n: u32, reason: &'static str },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("element {element} does not belong to {group}")]
    ForeignElement { element: DihedralElement, group: String },

    #[error("generating set is empty")]
    EmptyGenSet,

    #[error("generating set contains the identity")]
    ContainsIdentity,

    #[error("generating set is not closed under inverses: {element} is present but {inverse} is not")]
    NotInverseClosed {
        element: DihedralElement,
        inverse: DihedralElement,
    },

    #[error("generating set lists {element} more than once")]
    DuplicateElement { element: DihedralElement },

    #[error("subgroup closure and gcd criteria disagree: {detail}")]
    ClassificationMismatch { detail: String },

    #[error("generating set has the wrong shape: expected {expected}")]
    WrongShape { expected: &'static str },

    #[error("classification is only defined for 1 to 3 generators, got {size}")]
    UnsupportedCardinality { size: usize },

    #[error("generating set does not generate the group: reached {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },

    #[error("failed to write output: {0}")]
    SinkWriteFailure(#[from] std::io::Error),

    #[error("no closed-form prediction exists for class {class}")]
    UnsupportedClass { class: String },

    #[error("generating sets live in different groups or have different sizes: {detail}")]
    DifferentAmbient { detail: String },

    #[error("length transfer fails at {element}: {detail}")]
    TransferViolation { element: DihedralElement, detail: String },

    #[error("{0}")]
    Usage(String),
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::SinkWriteFailure(std::io::Error::other(err))
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::SinkWriteFailure(std::io::Error::other(err))
    }
}

impl Error {
    /// Short stable name of the variant, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidOrder { .. } => "InvalidOrder",
            Error::Parse { .. } => "ParseError",
            Error::ForeignElement { .. } => "ForeignElement",
            Error::EmptyGenSet => "EmptyGenSet",
            Error::ContainsIdentity => "ContainsIdentity",
            Error::NotInverseClosed { .. } => "NotInverseClosed",
            Error::DuplicateElement { .. } => "DuplicateElement",
            Error::ClassificationMismatch { .. } => "ClassificationMismatch",
            Error::WrongShape { .. } => "WrongShape",
            Error::UnsupportedCardinality { .. } => "UnsupportedCardinality",
            Error::NotGenerating { .. } => "NotGenerating",
            Error::SinkWriteFailure(_) => "SinkWriteFailure",
            Error::UnsupportedClass { .. } => "UnsupportedClass",
            Error::DifferentAmbient { .. } => "DifferentAmbient",
            Error::TransferViolation { .. } => "TransferViolation",
            Error::Usage(_) => "UsageError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
