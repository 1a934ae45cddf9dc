//! Exclusive core MRs: an injective, greedy binding of key classes to
//! response classes, and the scores computed from it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MetricError;
use crate::extend::ExtensionStats;
use crate::mention::MentionId;
use crate::ratio::Ratio;
use crate::table::{IntersectionTable, Side};

use super::{count, ScoreTriple};

/// xc*(K) and xc(K) for one key class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub response: usize,
    pub members: Vec<MentionId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusiveAssignment {
    /// Indexed by key class; `None` marks a referent the response never recognized.
    pub bindings: Vec<Option<Binding>>,
    pub unassigned_responses: BTreeSet<usize>,
    /// Key classes in the order they were bound.
    pub order: Vec<usize>,
}

impl ExclusiveAssignment {
    /// Key class bound to a response class, if any.
    pub fn key_for(&self, response: usize) -> Option<usize> {
        self.bindings
            .iter()
            .position(|b| b.as_ref().is_some_and(|b| b.response == response))
    }

    /// Σ|xc(K)|
    pub fn covered(&self) -> usize {
        self.bindings.iter().flatten().map(|b| b.members.len()).sum()
    }
}

/// Repeatedly binds the unbound key class whose largest projection onto the
/// still-free response classes is biggest. Ties: smaller key index, then
/// smaller response index.
pub fn exclusive_assignment(table: &IntersectionTable) -> ExclusiveAssignment {
    let key_classes = table.key().class_count();
    let mut bindings: Vec<Option<Binding>> = vec![None; key_classes];
    let mut pending: BTreeSet<usize> = (0..key_classes).collect();
    let mut taken = BTreeSet::new();
    let mut order = Vec::new();

    // Each pending key's largest projection onto the free response classes,
    // refreshed only when the response class it points at gets taken.
    let largest = |k: usize, taken: &BTreeSet<usize>| {
        table
            .largest_projection(Side::Key, k, taken)
            .expect("index in range")
    };
    let mut candidates: Vec<_> = (0..key_classes).map(|k| largest(k, &taken)).collect();

    loop {
        let mut best: Option<(usize, usize)> = None;
        for &k in &pending {
            let Some((cell, _)) = candidates[k] else { continue };
            if best.is_none_or(|(len, _)| cell.len() > len) {
                best = Some((cell.len(), k));
            }
        }
        let Some((_, k)) = best else {
            break;
        };
        let (cell, r) = candidates[k].expect("chosen key has a candidate");
        bindings[k] = Some(Binding {
            response: r,
            members: cell.members.clone(),
        });
        pending.remove(&k);
        taken.insert(r);
        order.push(k);
        for &other in &pending {
            if candidates[other].is_some_and(|(_, resp)| resp == r) {
                candidates[other] = largest(other, &taken);
            }
        }
    }

    let unassigned_responses = (0..table.response().class_count())
        .filter(|r| !taken.contains(r))
        .collect();
    ExclusiveAssignment {
        bindings,
        unassigned_responses,
        order,
    }
}

/// How exclusive precision is computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XpsMode {
    /// Σ|xc(K)| / |M_resp|: every response mention outside the exclusive core
    /// of its key class is an error, including those of unbound response classes.
    #[default]
    Reconstructed,
    /// 1 − Σ|xc*(K) \ K| / |M_resp|: only foreign mentions inside bound
    /// response classes are errors.
    Printed,
}

impl FromStr for XpsMode {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reconstructed" => Ok(XpsMode::Reconstructed),
            "printed" => Ok(XpsMode::Printed),
            other => Err(MetricError::UnknownMode(other.to_owned())),
        }
    }
}

impl fmt::Display for XpsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XpsMode::Reconstructed => "reconstructed",
            XpsMode::Printed => "printed",
        })
    }
}

/// XRS and XPS. Denominators are the original (pre-extension) mention counts
/// of each side, and mentions added by extension never count as successes.
pub fn exclusive_scores(
    table: &IntersectionTable,
    assignment: &ExclusiveAssignment,
    stats: &ExtensionStats,
    mode: XpsMode,
) -> ScoreTriple {
    let bound = || assignment.bindings.iter().flatten();

    let recalled = bound()
        .flat_map(|b| &b.members)
        .filter(|id| !stats.added_to_key.contains(*id))
        .count();
    let recall = Ratio::recall(count(recalled), count(stats.key_mentions));

    let precision = match mode {
        XpsMode::Reconstructed => {
            let correct = bound()
                .flat_map(|b| &b.members)
                .filter(|id| !stats.added_to_response.contains(*id))
                .count();
            Ratio::precision(count(correct), count(stats.response_mentions))
        }
        XpsMode::Printed => {
            let response = table.response();
            let foreign: usize = assignment
                .bindings
                .iter()
                .enumerate()
                .filter_map(|(k, b)| b.as_ref().map(|b| (k, b.response)))
                .map(|(k, r)| {
                    let class = response.class(r).expect("bound class exists");
                    class
                        .iter()
                        .filter(|id| table.key().class_of(id.as_str()) != Some(k))
                        .count()
                })
                .sum();
            let total = stats.response_mentions;
            Ratio::precision(count(total.saturating_sub(foreign)), count(total))
        }
    };

    ScoreTriple::new(recall, precision)
}
