use std::fmt;

use serde::{Deserialize, Serialize};

/// Opaque identifier of a referring expression, unique within one document.
///
/// Ordering is plain lexicographic on the underlying string; class normalization
/// and every tie-break downstream rely on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MentionId(String);

impl MentionId {
    pub fn new(id: impl Into<String>) -> Self {
        MentionId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MentionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for MentionId {
    fn from(s: &str) -> Self {
        MentionId(s.to_owned())
    }
}

impl From<String> for MentionId {
    fn from(s: String) -> Self {
        MentionId(s)
    }
}

impl From<u32> for MentionId {
    fn from(n: u32) -> Self {
        MentionId(n.to_string())
    }
}

impl std::borrow::Borrow<str> for MentionId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Character offsets of a mention in its source document, `start <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Option<Self> {
        (start <= end).then_some(Span { start, end })
    }
}

impl From<Span> for [usize; 2] {
    fn from(s: Span) -> Self {
        [s.start, s.end]
    }
}

impl TryFrom<[usize; 2]> for Span {
    type Error = String;

    fn try_from([start, end]: [usize; 2]) -> Result<Self, Self::Error> {
        Span::new(start, end).ok_or_else(|| format!("span start {start} exceeds end {end}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub id: MentionId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

impl Mention {
    pub fn new(id: impl Into<MentionId>) -> Self {
        Mention {
            id: id.into(),
            surface: None,
            span: None,
        }
    }
}
