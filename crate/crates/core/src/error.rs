use thiserror::Error;

use crate::mention::MentionId;

/// Violations of the partition invariants, raised while building or pairing partitions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("mention `{0}` appears in more than one class")]
    DuplicateMention(MentionId),
    #[error("mention `{0}` is not part of the universe")]
    UnknownMention(MentionId),
    #[error("class #{0} is empty")]
    EmptyClass(usize),
    #[error("key and response cover different mention sets ({key_only} key-only, {response_only} response-only)")]
    UniverseMismatch { key_only: usize, response_only: usize },
    #[error("{side} class index {index} out of range (have {len})")]
    IndexOutOfRange {
        side: &'static str,
        index: usize,
        len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("{0} is outside [0, 1]")]
    Domain(String),
    #[error("unknown XPS mode `{0}` (expected `reconstructed` or `printed`)")]
    UnknownMode(String),
}

/// Failures while reading a key or response document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("input is not valid UTF-8 (byte {offset})")]
    NotUtf8 { offset: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("malformed tag at offset {offset}: {message}")]
    MalformedTag { offset: usize, message: String },
    #[error("duplicate mention id `{id}`")]
    DuplicateId { id: String },
    #[error("REF `{target}` at offset {offset} points to no ID")]
    DanglingRef { target: String, offset: usize },
    #[error("nesting violation at offset {offset}: {message}")]
    NestingViolation { offset: usize, message: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}
