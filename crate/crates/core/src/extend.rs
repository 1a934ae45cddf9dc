//! Bringing key and response onto a common mention set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::mention::MentionId;
use crate::partition::Partition;

/// What [`align_and_extend`] had to add, and the sizes it started from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStats {
    /// |M_key| before extension.
    pub key_mentions: usize,
    /// |M_resp| before extension.
    pub response_mentions: usize,
    /// Response-only mentions added to the key as singletons.
    pub added_to_key: BTreeSet<MentionId>,
    /// Key-only mentions added to the response as singletons.
    pub added_to_response: BTreeSet<MentionId>,
}

impl ExtensionStats {
    pub fn is_aligned(&self) -> bool {
        self.added_to_key.is_empty() && self.added_to_response.is_empty()
    }
}

/// Extends each partition with the mentions only the other one has, as
/// singleton classes, so that both cover the union of the two mention sets.
pub fn align_and_extend(key: &Partition, response: &Partition) -> (Partition, Partition, ExtensionStats) {
    let added_to_key: BTreeSet<MentionId> = response
        .universe()
        .difference(key.universe())
        .cloned()
        .collect();
    let added_to_response: BTreeSet<MentionId> = key
        .universe()
        .difference(response.universe())
        .cloned()
        .collect();
    let stats = ExtensionStats {
        key_mentions: key.mention_count(),
        response_mentions: response.mention_count(),
        added_to_key,
        added_to_response,
    };
    if stats.is_aligned() {
        return (key.clone(), response.clone(), stats);
    }
    let key = key.with_singletons(stats.added_to_key.iter().cloned());
    let response = response.with_singletons(stats.added_to_response.iter().cloned());
    (key, response, stats)
}
