//! Pairwise intersections between key and response classes.
//!
//! Every metric in this crate is computed from an [`IntersectionTable`]: the
//! non-empty cells `K_i ∩ R_j`, indexed both by key class (the projection of a
//! key class onto the response) and by response class (the symmetric one).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::PartitionError;
use crate::mention::MentionId;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Key,
    Response,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Key => Side::Response,
            Side::Response => Side::Key,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Side::Key => "key",
            Side::Response => "response",
        }
    }
}

/// One non-empty intersection of a key class with a response class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub key: usize,
    pub response: usize,
    pub members: Vec<MentionId>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Class index of this cell on the given side.
    pub fn class(&self, side: Side) -> usize {
        match side {
            Side::Key => self.key,
            Side::Response => self.response,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntersectionTable {
    key: Partition,
    response: Partition,
    cells: Vec<Cell>,
    // Cell indices per class, in projection order.
    by_key: Vec<Vec<usize>>,
    by_response: Vec<Vec<usize>>,
}

impl IntersectionTable {
    /// Both partitions must cover the same universe; see
    /// [`align_and_extend`](crate::extend::align_and_extend) otherwise.
    pub fn new(key: &Partition, response: &Partition) -> Result<Self, PartitionError> {
        if key.universe() != response.universe() {
            let key_only = key.universe().difference(response.universe()).count();
            let response_only = response.universe().difference(key.universe()).count();
            return Err(PartitionError::UniverseMismatch {
                key_only,
                response_only,
            });
        }

        let mut cells = Vec::new();
        for (k, class) in key.classes().iter().enumerate() {
            let mut split: Vec<(usize, Vec<MentionId>)> = Vec::new();
            for id in class {
                let r = response
                    .class_of(id.as_str())
                    .expect("universes are equal");
                match split.iter_mut().find(|(resp, _)| *resp == r) {
                    Some((_, members)) => members.push(id.clone()),
                    None => split.push((r, vec![id.clone()])),
                }
            }
            split.sort_by_key(|(r, _)| *r);
            cells.extend(split.into_iter().map(|(response, members)| Cell {
                key: k,
                response,
                members,
            }));
        }

        let mut by_key = vec![Vec::new(); key.class_count()];
        let mut by_response = vec![Vec::new(); response.class_count()];
        for (i, cell) in cells.iter().enumerate() {
            by_key[cell.key].push(i);
            by_response[cell.response].push(i);
        }
        let projection_order = |a: &usize, b: &usize| {
            let (a, b) = (&cells[*a], &cells[*b]);
            b.len()
                .cmp(&a.len())
                .then_with(|| a.members[0].cmp(&b.members[0]))
        };
        for list in by_key.iter_mut().chain(by_response.iter_mut()) {
            list.sort_by(projection_order);
        }

        Ok(IntersectionTable {
            key: key.clone(),
            response: response.clone(),
            cells,
            by_key,
            by_response,
        })
    }

    pub fn key(&self) -> &Partition {
        &self.key
    }

    pub fn response(&self) -> &Partition {
        &self.response
    }

    pub fn partition(&self, side: Side) -> &Partition {
        match side {
            Side::Key => &self.key,
            Side::Response => &self.response,
        }
    }

    /// All cells, ordered by key index then response index.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// |R|, the size of the common universe.
    pub fn mention_count(&self) -> usize {
        self.key.mention_count()
    }

    fn cell_indices(&self, side: Side, class: usize) -> Result<&[usize], PartitionError> {
        let lists = match side {
            Side::Key => &self.by_key,
            Side::Response => &self.by_response,
        };
        lists
            .get(class)
            .map(Vec::as_slice)
            .ok_or(PartitionError::IndexOutOfRange {
                side: side.name(),
                index: class,
                len: lists.len(),
            })
    }

    /// Indices into [`cells`](Self::cells) of a class's projection, largest cell first.
    pub fn projection_indices(&self, side: Side, class: usize) -> Result<&[usize], PartitionError> {
        self.cell_indices(side, class)
    }

    /// π(K) for a key class, σ(R) for a response class: the class's cells,
    /// largest first, ties by smallest member id.
    pub fn projection(&self, side: Side, class: usize) -> Result<Vec<&Cell>, PartitionError> {
        Ok(self
            .cell_indices(side, class)?
            .iter()
            .map(|&i| &self.cells[i])
            .collect())
    }

    /// |π(K)| or |σ(R)| without materializing the cells.
    pub fn projection_len(&self, side: Side, class: usize) -> Result<usize, PartitionError> {
        Ok(self.cell_indices(side, class)?.len())
    }

    /// π*(K) or σ*(R): the opposite-side classes the class intersects.
    pub fn extended_projection(
        &self,
        side: Side,
        class: usize,
    ) -> Result<BTreeSet<usize>, PartitionError> {
        let other = side.opposite();
        Ok(self
            .cell_indices(side, class)?
            .iter()
            .map(|&i| self.cells[i].class(other))
            .collect())
    }

    /// The largest cell of a class whose opposite-side class is not in
    /// `excluded`, with that opposite class index. Ties go to the smallest
    /// opposite index. `None` once every opposite class is excluded.
    pub fn largest_projection(
        &self,
        side: Side,
        class: usize,
        excluded: &BTreeSet<usize>,
    ) -> Result<Option<(&Cell, usize)>, PartitionError> {
        let other = side.opposite();
        let best = self
            .cell_indices(side, class)?
            .iter()
            .map(|&i| &self.cells[i])
            .filter(|cell| !excluded.contains(&cell.class(other)))
            .min_by(|a, b| {
                b.len()
                    .cmp(&a.len())
                    .then_with(|| a.class(other).cmp(&b.class(other)))
            });
        Ok(best.map(|cell| (cell, cell.class(other))))
    }

    /// |c(K)| or |c(R)| with nothing excluded.
    pub fn core_len(&self, side: Side, class: usize) -> Result<usize, PartitionError> {
        let first = self.cell_indices(side, class)?[0];
        Ok(self.cells[first].len())
    }
}
