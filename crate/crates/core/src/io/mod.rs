//! Reading key/response documents and writing reports.

mod bundle;
mod emit;
mod json;
mod sgml;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{FormatError, PartitionError};
use crate::mention::{Mention, MentionId};
use crate::partition::Partition;

pub use bundle::{export_inspector_bundle, BundleCell, BundleClass, BundleMention, ClassScores, CoreEntry, DisplayScore, InspectorBundle, BUNDLE_VERSION};
pub use emit::{aggregate_value, document_value, emit_aggregate, emit_report, CsvReportWriter, MetricSet, ReportFormat, CSV_COLUMNS};
pub use json::{parse_partition_json, write_partition_json};
pub use sgml::parse_muc_sgml;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceFormat {
    NativeJson,
    MucSgml,
}

/// One key or response file: its mentions and the classes it lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionDocument {
    pub doc_id: String,
    pub mentions: Vec<Mention>,
    pub classes: Vec<Vec<MentionId>>,
    pub source_format: SourceFormat,
}

impl PartitionDocument {
    /// The partition of this document's mentions, unlisted mentions as singletons.
    pub fn partition(&self) -> Result<Partition, PartitionError> {
        let mut seen = BTreeSet::new();
        for m in &self.mentions {
            if !seen.insert(&m.id) {
                return Err(PartitionError::DuplicateMention(m.id.clone()));
            }
        }
        Partition::new(
            self.mentions.iter().map(|m| m.id.clone()),
            self.classes.iter().map(|c| c.iter().cloned()),
        )
    }

    pub fn mention_ids(&self) -> BTreeSet<&MentionId> {
        self.mentions.iter().map(|m| &m.id).collect()
    }
}

/// Parses either format: input whose first non-blank character is `{` is
/// read as native JSON, anything else as COREF markup.
pub fn parse_document(bytes: &[u8]) -> Result<PartitionDocument, FormatError> {
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => parse_partition_json(bytes),
        _ => parse_muc_sgml(bytes),
    }
}

fn decode_utf8(bytes: &[u8]) -> Result<&str, FormatError> {
    std::str::from_utf8(bytes).map_err(|e| FormatError::NotUtf8 {
        offset: e.valid_up_to(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_detection() {
        let json = parse_document(b"  {\"doc_id\": \"d\", \"mentions\": [], \"classes\": []}").unwrap();
        assert_eq!(json.source_format, SourceFormat::NativeJson);
        let sgml = parse_document(b"<COREF ID=\"a\">x</COREF>").unwrap();
        assert_eq!(sgml.source_format, SourceFormat::MucSgml);
        let empty = parse_document(b"").unwrap();
        assert!(empty.mentions.is_empty());
    }
}
