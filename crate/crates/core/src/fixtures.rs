//! Small reference inputs with known scores, used by tests and demos.

use crate::partition::Partition;

/// The 17-mention example: key `{1,2} {3,4,5} {6..12} {13..17}`, response
/// `{1,2,6..10} {3,4,5,11..16} {17}`.
pub fn toy17() -> (Partition, Partition) {
    let key = Partition::from_classes([
        vec![1u32, 2],
        vec![3, 4, 5],
        vec![6, 7, 8, 9, 10, 11, 12],
        vec![13, 14, 15, 16, 17],
    ])
    .expect("valid key");
    let response = Partition::from_classes([
        vec![1u32, 2, 6, 7, 8, 9, 10],
        vec![3, 4, 5, 11, 12, 13, 14, 15, 16],
        vec![17],
    ])
    .expect("valid response");
    (key, response)
}

/// Ten mentions in two key classes `{1..5} {6..10}`.
pub fn ten_in_two() -> Partition {
    Partition::from_classes([(1..=5u32).collect::<Vec<_>>(), (6..=10).collect()])
        .expect("valid key")
}
