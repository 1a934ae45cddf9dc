use crate::ratio::Ratio;
use crate::table::{IntersectionTable, Side};

use super::{count, ScoreTriple};

/// Link-based scores: each class is charged |π(K)| − 1 missing links
/// (|σ(R)| − 1 spurious ones for precision).
pub fn muc_scores(table: &IntersectionTable) -> ScoreTriple {
    let n = table.mention_count();
    let key_classes = table.key().class_count();
    let response_classes = table.response().class_count();

    let key_projections: usize = (0..key_classes)
        .map(|k| table.projection_len(Side::Key, k).expect("index in range"))
        .sum();
    let response_projections: usize = (0..response_classes)
        .map(|r| table.projection_len(Side::Response, r).expect("index in range"))
        .sum();

    ScoreTriple::new(
        Ratio::recall(count(n - key_projections), count(n - key_classes)),
        Ratio::precision(count(n - response_projections), count(n - response_classes)),
    )
}

/// MRS(K) = (|K| − |π(K)|) / (|K| − 1) for a single key class.
pub fn muc_class_recall(table: &IntersectionTable, key_class: usize) -> Option<Ratio> {
    let size = table.key().class(key_class)?.len();
    let parts = table.projection_len(Side::Key, key_class).ok()?;
    Some(Ratio::recall(count(size - parts), count(size - 1)))
}
