//! Scoring of coreference output as a comparison of two partitions of the
//! same mention set: the gold *key* and the system *response*.
//!
//! Four families are provided, from most to least indulgent:
//!
//! * MUC link scores ([`metrics::muc_scores`]): minimal number of missing or
//!   spurious links.
//! * Core-MR scores ([`metrics::core_scores`]): one error per mention left out
//!   of a class's largest projection.
//! * Exclusive core-MR scores ([`metrics::exclusive_scores`]): as above, but
//!   each response class may stand for one key class only.
//! * Distributional figures ([`metrics::overlapping`], [`metrics::d_error`]):
//!   compare sorted class sizes and say whether the response over- or
//!   under-merges.
//!
//! ```
//! use coref_eval::{evaluate, Partition, XpsMode};
//!
//! let key = Partition::from_classes([vec!["a", "b", "c"], vec!["d", "e"]]).unwrap();
//! let response = Partition::from_classes([vec!["a", "b"], vec!["c", "d", "e"]]).unwrap();
//! let report = evaluate(&key, &response, XpsMode::Reconstructed);
//! assert_eq!(report.muc.recall.to_string(), "2/3");
//! assert_eq!(report.core.precision.to_string(), "2/3");
//! ```

pub mod error;
pub mod extend;
pub mod fixtures;
pub mod io;
pub mod mention;
pub mod metrics;
pub mod partition;
pub mod ratio;
pub mod table;

pub use error::{FormatError, MetricError, PartitionError};
pub use extend::{align_and_extend, ExtensionStats};
pub use mention::{Mention, MentionId, Span};
pub use metrics::{evaluate, Evaluation, EvaluationReport, ScoreTriple, XpsMode};
pub use partition::Partition;
pub use ratio::{f_measure, Ratio};
pub use table::{Cell, IntersectionTable, Side};
