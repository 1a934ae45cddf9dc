//! The four scoring families, all computed from an [`IntersectionTable`].
//!
//! | family       | recall                     | precision                  |
//! |--------------|----------------------------|----------------------------|
//! | MUC links    | (\|R\| − Σ\|π(K)\|) / (\|R\| − \|P_K\|) | (\|R\| − Σ\|σ(R)\|) / (\|R\| − \|P_R\|) |
//! | core MRs     | (Σ\|c(K)\| − \|P_K\|) / (\|R\| − \|P_K\|) | (Σ\|c(R)\| − \|P_R\|) / (\|R\| − \|P_R\|) |
//! | exclusive    | Σ\|xc(K)\| / \|M_key\|       | see [`XpsMode`]            |
//!
//! The distributional family compares sorted class-size lists instead.
//!
//! [`IntersectionTable`]: crate::table::IntersectionTable

mod core_mr;
mod distribution;
mod exclusive;
mod muc;
mod report;

use serde::{Deserialize, Serialize};

use crate::ratio::{f_measure, Ratio};

pub use core_mr::{core_class_recall, core_scores};
pub use distribution::{d_error, overlapping, DError, DErrorLabel, SizeDistribution};
pub use exclusive::{exclusive_assignment, exclusive_scores, Binding, ExclusiveAssignment, XpsMode};
pub use muc::{muc_class_recall, muc_scores};
pub use report::{evaluate, AggregateReport, Counts, Evaluation, EvaluationReport, MicroAverage, PooledDError};

/// Recall, precision and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreTriple {
    pub recall: Ratio,
    pub precision: Ratio,
    pub f: Ratio,
}

impl ScoreTriple {
    pub fn new(recall: Ratio, precision: Ratio) -> Self {
        let f = f_measure(&recall, &precision).expect("scores lie in [0, 1]");
        ScoreTriple {
            recall,
            precision,
            f,
        }
    }

    pub fn pooled(&self, other: &ScoreTriple) -> ScoreTriple {
        ScoreTriple::new(
            self.recall.pooled(&other.recall),
            self.precision.pooled(&other.precision),
        )
    }
}

fn count(n: usize) -> u64 {
    n as u64
}
