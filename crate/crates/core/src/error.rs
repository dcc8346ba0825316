//! Crate-wide error type.
//!
//! Errors fall into three classes that the CLI maps onto exit codes:
//! usage errors (handled by the argument parser), data/validation errors,
//! and numerical failures. [`Error::is_numerical`] distinguishes the last
//! class.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("unsupported manifest schema_version {found} (expected {expected})")]
    SchemaVersion { found: i64, expected: u32 },

    #[error("duplicate clip id {id:?} in manifest")]
    DuplicateClipId { id: String },

    #[error("{referenced_by} references unknown clip id {id:?}")]
    UnknownClipId { id: String, referenced_by: String },

    #[error("invalid field {field} in record {record:?}: {reason}")]
    InvalidField {
        record: String,
        field: String,
        reason: String,
    },

    #[error("splits {a:?} and {b:?} in cross-validation group {group:?} overlap (e.g. {id:?})")]
    OverlappingSplits {
        group: String,
        a: String,
        b: String,
        id: String,
    },

    #[error("{what}: expected dimensions {expected:?}, got {actual:?}")]
    DimensionMismatch {
        what: String,
        expected: Vec<usize>,
        actual: Vec<usize>,
    },

    #[error("non-finite value encountered in {what}")]
    NonFinite { what: String },

    #[error("{what} must be nonempty")]
    EmptyInput { what: String },

    #[error("precondition violated: {what}")]
    Precondition { what: String },

    #[error("clip has {t} frames but the encoder window needs at least {t_window}")]
    ClipTooShort { t: usize, t_window: usize },

    #[error("sequences have mismatched lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("correlation undefined for constant input ({which})")]
    ConstantInput { which: String },

    #[error("prediction/label key sets differ; missing in predictions: {missing_in_predictions:?}, missing in labels: {missing_in_labels:?}")]
    KeyMismatch {
        missing_in_predictions: Vec<String>,
        missing_in_labels: Vec<String>,
    },

    #[error("bad checkpoint magic at offset {offset} (expected \"VRSK\")")]
    BadMagic { offset: u64 },

    #[error("checkpoint version mismatch: found {found}, this reader supports {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("checkpoint truncated at offset {offset} while reading {what}")]
    Truncated { offset: u64, what: String },

    #[error("checkpoint is missing tensor {name:?}")]
    MissingTensor { name: String },

    #[error("no comfortable clips: no training label has total below {threshold}")]
    NoComfortableClips { threshold: f64 },

    #[error("non-finite loss at {stage} step {step}")]
    NonFiniteLoss { stage: String, step: usize },
}

impl Error {
    /// True for failures of the numerics themselves (as opposed to bad
    /// input data); the CLI reports these with a dedicated exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonFinite { .. } | Error::NonFiniteLoss { .. })
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
