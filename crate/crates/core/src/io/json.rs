//! The native partition format.
//!
//! ```json
//! {
//!   "doc_id": "toy",
//!   "mentions": [{"id": "m1", "surface": "John", "span": [0, 4]}, {"id": "m2"}],
//!   "classes": [["m1", "m2"]]
//! }
//! ```
//!
//! Mentions that no class lists are singletons.

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use crate::error::FormatError;
use crate::mention::{Mention, MentionId};

use super::{decode_utf8, PartitionDocument, SourceFormat};

#[derive(Serialize, Deserialize)]
struct NativeDocument {
    doc_id: String,
    mentions: Vec<Mention>,
    classes: Vec<Vec<MentionId>>,
}

pub fn parse_partition_json(bytes: &[u8]) -> Result<PartitionDocument, FormatError> {
    let text = decode_utf8(bytes)?;
    let native: NativeDocument = serde_json::from_str(text).map_err(|e| match e.classify() {
        Category::Data => FormatError::Schema(e.to_string()),
        _ => FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e),
        },
    })?;
    let doc = PartitionDocument {
        doc_id: native.doc_id,
        mentions: native.mentions,
        classes: native.classes,
        source_format: SourceFormat::NativeJson,
    };
    doc.partition()?;
    Ok(doc)
}

pub fn write_partition_json(doc: &PartitionDocument) -> String {
    let native = NativeDocument {
        doc_id: doc.doc_id.clone(),
        mentions: doc.mentions.clone(),
        classes: doc.classes.clone(),
    };
    let mut out = serde_json::to_string_pretty(&native).expect("plain data serializes");
    out.push('\n');
    out
}

fn strip_position(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg,
    }
}
