use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::extend::{align_and_extend, ExtensionStats};
use crate::partition::Partition;
use crate::ratio::Ratio;
use crate::table::IntersectionTable;

use super::{
    core_scores, d_error, exclusive_assignment, exclusive_scores, muc_scores, overlapping, DError,
    DErrorLabel, ExclusiveAssignment, ScoreTriple, SizeDistribution, XpsMode,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// |R| after extension.
    pub mentions: usize,
    pub key_mentions: usize,
    pub response_mentions: usize,
    /// |P_K| after extension.
    pub key_classes: usize,
    /// |P_R| after extension.
    pub response_classes: usize,
    pub cells: usize,
}

impl Counts {
    /// |P_K| before extension; every added mention is a singleton class.
    pub fn original_key_classes(&self) -> usize {
        self.key_classes - (self.mentions - self.key_mentions)
    }

    pub fn original_response_classes(&self) -> usize {
        self.response_classes - (self.mentions - self.response_mentions)
    }

    fn add(&mut self, other: &Counts) {
        self.mentions += other.mentions;
        self.key_mentions += other.key_mentions;
        self.response_mentions += other.response_mentions;
        self.key_classes += other.key_classes;
        self.response_classes += other.response_classes;
        self.cells += other.cells;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub muc: ScoreTriple,
    pub core: ScoreTriple,
    pub exclusive: ScoreTriple,
    pub xps_mode: XpsMode,
    pub overlap: Ratio,
    pub d_error: DError,
    pub counts: Counts,
}

/// A scored key/response pair together with everything computed on the way.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub stats: ExtensionStats,
    pub table: IntersectionTable,
    pub assignment: ExclusiveAssignment,
    pub report: EvaluationReport,
}

impl Evaluation {
    /// Extends both partitions to a common mention set, then runs every scorer.
    pub fn new(key: &Partition, response: &Partition, xps_mode: XpsMode) -> Self {
        let (key, response, stats) = align_and_extend(key, response);
        let table = IntersectionTable::new(&key, &response).expect("extended universes coincide");
        let assignment = exclusive_assignment(&table);

        let key_sizes = SizeDistribution::of(&key);
        let response_sizes = SizeDistribution::of(&response);
        let report = EvaluationReport {
            muc: muc_scores(&table),
            core: core_scores(&table),
            exclusive: exclusive_scores(&table, &assignment, &stats, xps_mode),
            xps_mode,
            overlap: overlapping(&key_sizes, &response_sizes),
            d_error: d_error(&key_sizes, &response_sizes),
            counts: Counts {
                mentions: table.mention_count(),
                key_mentions: stats.key_mentions,
                response_mentions: stats.response_mentions,
                key_classes: key.class_count(),
                response_classes: response.class_count(),
                cells: table.cells().len(),
            },
        };
        Evaluation {
            stats,
            table,
            assignment,
            report,
        }
    }

    pub fn key(&self) -> &Partition {
        self.table.key()
    }

    pub fn response(&self) -> &Partition {
        self.table.response()
    }
}

pub fn evaluate(key: &Partition, response: &Partition, xps_mode: XpsMode) -> EvaluationReport {
    Evaluation::new(key, response, xps_mode).report
}

/// Corpus-level d-error: signed magnitudes pooled like every other ratio,
/// precision-leaning counted positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PooledDError {
    pub label: DErrorLabel,
    pub magnitude: Ratio,
}

/// Micro-averaged totals over several documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub documents: usize,
    pub muc: ScoreTriple,
    pub core: ScoreTriple,
    pub exclusive: ScoreTriple,
    pub xps_mode: XpsMode,
    pub overlap: Ratio,
    pub d_error: PooledDError,
    pub counts: Counts,
}

/// Pools exact numerators and denominators across documents, per metric.
#[derive(Debug, Clone, Default)]
pub struct MicroAverage {
    acc: Option<Accumulated>,
}

#[derive(Debug, Clone)]
struct Accumulated {
    documents: usize,
    muc: ScoreTriple,
    core: ScoreTriple,
    exclusive: ScoreTriple,
    xps_mode: XpsMode,
    overlap: Ratio,
    d_error_signed: i128,
    d_error_denominator: u64,
    counts: Counts,
}

impl MicroAverage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, report: &EvaluationReport) {
        let m = report.d_error.magnitude;
        let signed = match report.d_error.label {
            DErrorLabel::Precision => m.numerator() as i128,
            DErrorLabel::Recall => -(m.numerator() as i128),
            DErrorLabel::Balanced => 0,
        };
        match &mut self.acc {
            None => {
                self.acc = Some(Accumulated {
                    documents: 1,
                    muc: report.muc,
                    core: report.core,
                    exclusive: report.exclusive,
                    xps_mode: report.xps_mode,
                    overlap: report.overlap,
                    d_error_signed: signed,
                    d_error_denominator: m.denominator(),
                    counts: report.counts,
                })
            }
            Some(acc) => {
                acc.documents += 1;
                acc.muc = acc.muc.pooled(&report.muc);
                acc.core = acc.core.pooled(&report.core);
                acc.exclusive = acc.exclusive.pooled(&report.exclusive);
                acc.overlap = acc.overlap.pooled(&report.overlap);
                acc.d_error_signed += signed;
                acc.d_error_denominator += m.denominator();
                acc.counts.add(&report.counts);
            }
        }
    }

    /// `None` when no document was added.
    pub fn finish(&self) -> Option<AggregateReport> {
        let acc = self.acc.as_ref()?;
        let label = match acc.d_error_signed.cmp(&0) {
            Ordering::Greater => DErrorLabel::Precision,
            Ordering::Less => DErrorLabel::Recall,
            Ordering::Equal => DErrorLabel::Balanced,
        };
        let magnitude = Ratio::recall(acc.d_error_signed.unsigned_abs() as u64, acc.d_error_denominator);
        Some(AggregateReport {
            documents: acc.documents,
            muc: acc.muc,
            core: acc.core,
            exclusive: acc.exclusive,
            xps_mode: acc.xps_mode,
            overlap: acc.overlap,
            d_error: PooledDError { label, magnitude },
            counts: acc.counts,
        })
    }
}
