use crate::ratio::Ratio;
use crate::table::{IntersectionTable, Side};

use super::{count, ScoreTriple};

/// Core-MR scores: every mention of a class outside its largest projection is
/// one error, however the rest is grouped.
pub fn core_scores(table: &IntersectionTable) -> ScoreTriple {
    let n = table.mention_count();
    let key_classes = table.key().class_count();
    let response_classes = table.response().class_count();

    let key_cores: usize = (0..key_classes)
        .map(|k| table.core_len(Side::Key, k).expect("index in range"))
        .sum();
    let response_cores: usize = (0..response_classes)
        .map(|r| table.core_len(Side::Response, r).expect("index in range"))
        .sum();

    ScoreTriple::new(
        Ratio::recall(count(key_cores - key_classes), count(n - key_classes)),
        Ratio::precision(count(response_cores - response_classes), count(n - response_classes)),
    )
}

/// CRS(K) = (|c(K)| − 1) / (|K| − 1) for a single key class.
pub fn core_class_recall(table: &IntersectionTable, key_class: usize) -> Option<Ratio> {
    let size = table.key().class(key_class)?.len();
    let core = table.core_len(Side::Key, key_class).ok()?;
    Some(Ratio::recall(count(core - 1), count(size - 1)))
}
