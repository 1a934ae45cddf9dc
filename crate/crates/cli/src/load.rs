use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use coref_eval::io::{parse_document, PartitionDocument};
use coref_eval::{align_and_extend, Partition};

use crate::config::MismatchPolicy;

/// Key and response mention sets differ and the policy forbids extending.
#[derive(Debug)]
pub struct UniverseMismatch {
    pub key_only: usize,
    pub response_only: usize,
}

impl fmt::Display for UniverseMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "key and response mention sets differ ({} key-only, {} response-only)",
            self.key_only, self.response_only
        )
    }
}

impl std::error::Error for UniverseMismatch {}

pub struct Loaded {
    pub doc: PartitionDocument,
    pub partition: Partition,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse_document(&bytes).with_context(|| format!("{}", path.display()))?;
    let partition = doc
        .partition()
        .with_context(|| format!("{}", path.display()))?;
    Ok(Loaded { doc, partition })
}

pub fn check_mismatch(key: &Partition, response: &Partition, policy: MismatchPolicy) -> Result<(), UniverseMismatch> {
    if policy == MismatchPolicy::Extend {
        return Ok(());
    }
    let (_, _, stats) = align_and_extend(key, response);
    if stats.is_aligned() {
        return Ok(());
    }
    Err(UniverseMismatch {
        key_only: stats.added_to_response.len(),
        response_only: stats.added_to_key.len(),
    })
}

/// The document id to report: the key's own id, else the key file's stem.
pub fn doc_id(key: &Loaded, key_path: &Path) -> String {
    if !key.doc.doc_id.is_empty() {
        return key.doc.doc_id.clone();
    }
    key_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}
