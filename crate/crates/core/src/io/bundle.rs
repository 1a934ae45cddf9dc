//! Self-contained JSON snapshot of one evaluation for the projection inspector.
//!
//! The bundle lists both columns of classes with their members, every
//! intersection cell, and for each class its projection, extended projection,
//! core cell and exclusive binding, so a viewer can highlight and annotate
//! without recomputing anything.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::mention::MentionId;
use crate::metrics::{Evaluation, EvaluationReport};
use crate::ratio::Ratio;
use crate::table::{IntersectionTable, Side};

use super::emit::{document_value, MetricSet};

pub const BUNDLE_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InspectorBundle {
    pub v: String,
    pub doc_id: String,
    pub key_classes: Vec<BundleClass>,
    pub response_classes: Vec<BundleClass>,
    pub cells: Vec<BundleCell>,
    /// Display strings for the score header, in table order.
    pub scores: Vec<DisplayScore>,
    pub report: EvaluationReport,
    /// The same report in the CLI's JSON shape.
    pub report_json: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleMention {
    pub id: MentionId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    /// Present only on the other side's input; added as a singleton by extension.
    #[serde(default)]
    pub added: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleCell {
    pub index: usize,
    pub key: usize,
    pub response: usize,
    pub members: Vec<MentionId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreEntry {
    pub cell: usize,
    pub class: usize,
    pub size: usize,
}

/// Per-class contributions: MUC is (|C| − |proj(C)|) / (|C| − 1), core is
/// (|c(C)| − 1) / (|C| − 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassScores {
    pub muc: Ratio,
    pub core: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleClass {
    pub index: usize,
    pub label: String,
    pub members: Vec<BundleMention>,
    /// Cell indices, largest first.
    pub projection: Vec<usize>,
    /// Opposite-side class indices the class touches.
    pub extended_projection: Vec<usize>,
    pub core: CoreEntry,
    /// Key side: xc*(K). Response side: the key class bound to this class.
    pub exclusive: Option<CoreEntry>,
    pub scores: ClassScores,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplayScore {
    pub name: String,
    pub fraction: String,
    pub value: String,
}

impl InspectorBundle {
    /// `surfaces` maps mention ids to display text; mentions without an entry
    /// are shown by id only.
    pub fn new(doc_id: &str, evaluation: &Evaluation, surfaces: &HashMap<MentionId, String>) -> Self {
        let table = &evaluation.table;
        let cell_index: HashMap<(usize, usize), usize> = table
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| ((c.key, c.response), i))
            .collect();

        let mut key_classes = classes(table, Side::Key, evaluation, surfaces);
        let mut response_classes = classes(table, Side::Response, evaluation, surfaces);
        for (k, binding) in evaluation.assignment.bindings.iter().enumerate() {
            let Some(b) = binding else { continue };
            let cell = cell_index[&(k, b.response)];
            let size = b.members.len();
            key_classes[k].exclusive = Some(CoreEntry {
                cell,
                class: b.response,
                size,
            });
            response_classes[b.response].exclusive = Some(CoreEntry { cell, class: k, size });
        }

        let cells = table
            .cells()
            .iter()
            .enumerate()
            .map(|(index, c)| BundleCell {
                index,
                key: c.key,
                response: c.response,
                members: c.members.clone(),
            })
            .collect();

        let r = &evaluation.report;
        let mut scores: Vec<DisplayScore> = [
            ("MRS", r.muc.recall),
            ("MPS", r.muc.precision),
            ("CRS", r.core.recall),
            ("CPS", r.core.precision),
            ("XRS", r.exclusive.recall),
            ("XPS", r.exclusive.precision),
            ("overlap", r.overlap),
        ]
        .into_iter()
        .map(|(name, ratio)| DisplayScore {
            name: name.to_owned(),
            fraction: ratio.to_string(),
            value: ratio.round_half_even(2),
        })
        .collect();
        scores.push(DisplayScore {
            name: "d-error".to_owned(),
            fraction: r.d_error.label.as_str().to_owned(),
            value: r.d_error.magnitude.round_half_even(2),
        });

        InspectorBundle {
            v: BUNDLE_VERSION.to_owned(),
            doc_id: doc_id.to_owned(),
            key_classes,
            response_classes,
            cells,
            scores,
            report: r.clone(),
            report_json: document_value(doc_id, r, MetricSet::ALL),
        }
    }

    pub fn class(&self, side: Side, index: usize) -> Option<&BundleClass> {
        match side {
            Side::Key => self.key_classes.get(index),
            Side::Response => self.response_classes.get(index),
        }
    }
}

fn classes(
    table: &IntersectionTable,
    side: Side,
    evaluation: &Evaluation,
    surfaces: &HashMap<MentionId, String>,
) -> Vec<BundleClass> {
    let (prefix, added) = match side {
        Side::Key => ("K", &evaluation.stats.added_to_key),
        Side::Response => ("R", &evaluation.stats.added_to_response),
    };
    let other = side.opposite();
    table
        .partition(side)
        .classes()
        .iter()
        .enumerate()
        .map(|(index, members)| {
            let projection = table
                .projection_indices(side, index)
                .expect("index in range")
                .to_vec();
            let core_cell = &table.cells()[projection[0]];
            let size = members.len() as u64;
            BundleClass {
                index,
                label: format!("{prefix}{}", index + 1),
                members: members
                    .iter()
                    .map(|id| BundleMention {
                        id: id.clone(),
                        surface: surfaces.get(id).cloned(),
                        added: added.contains(id),
                    })
                    .collect(),
                extended_projection: table
                    .extended_projection(side, index)
                    .expect("index in range")
                    .into_iter()
                    .collect(),
                core: CoreEntry {
                    cell: projection[0],
                    class: core_cell.class(other),
                    size: core_cell.len(),
                },
                exclusive: None,
                scores: ClassScores {
                    muc: Ratio::recall(size - projection.len() as u64, size - 1),
                    core: Ratio::recall(core_cell.len() as u64 - 1, size - 1),
                },
                projection,
            }
        })
        .collect()
}

pub fn export_inspector_bundle(
    doc_id: &str,
    evaluation: &Evaluation,
    surfaces: &HashMap<MentionId, String>,
) -> String {
    let bundle = InspectorBundle::new(doc_id, evaluation, surfaces);
    let mut s = serde_json::to_string_pretty(&bundle).expect("bundle serializes");
    s.push('\n');
    s
}
