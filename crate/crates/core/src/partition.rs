//! Mention sets and their partitions into equivalence classes.
//!
//! A [`Partition`] always covers its universe: mentions that no listed class
//! claims become singleton classes. Classes are kept in a normalized order
//! (descending size, then smallest member id) so that class indices are stable
//! for a given content, whatever order the input listed them in.

use std::collections::{BTreeSet, HashMap};

use crate::error::PartitionError;
use crate::mention::MentionId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    universe: BTreeSet<MentionId>,
    classes: Vec<Vec<MentionId>>,
    class_of: HashMap<MentionId, usize>,
}

impl Partition {
    /// Builds a partition of `universe` from the listed classes, completing it
    /// with one singleton per unlisted mention.
    pub fn new<U, C, M>(universe: U, listed: C) -> Result<Self, PartitionError>
    where
        U: IntoIterator<Item = M>,
        C: IntoIterator,
        C::Item: IntoIterator<Item = M>,
        M: Into<MentionId>,
    {
        let universe: BTreeSet<MentionId> = universe.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for (i, class) in listed.into_iter().enumerate() {
            let mut members = Vec::new();
            for id in class {
                let id = id.into();
                if !universe.contains(&id) {
                    return Err(PartitionError::UnknownMention(id));
                }
                if !seen.insert(id.clone()) {
                    return Err(PartitionError::DuplicateMention(id));
                }
                members.push(id);
            }
            if members.is_empty() {
                return Err(PartitionError::EmptyClass(i));
            }
            classes.push(members);
        }
        classes.extend(
            universe
                .iter()
                .filter(|id| !seen.contains(*id))
                .map(|id| vec![id.clone()]),
        );
        Ok(Self::from_disjoint(universe, classes))
    }

    /// Convenience for a partition whose universe is exactly the union of `classes`.
    pub fn from_classes<C, M>(classes: C) -> Result<Self, PartitionError>
    where
        C: IntoIterator,
        C::Item: IntoIterator<Item = M>,
        M: Into<MentionId>,
    {
        let classes: Vec<Vec<MentionId>> = classes
            .into_iter()
            .map(|c| c.into_iter().map(Into::into).collect())
            .collect();
        let universe: Vec<MentionId> = classes.iter().flatten().cloned().collect();
        Partition::new(universe, classes)
    }

    /// Callers guarantee the classes are non-empty, disjoint and cover `universe`.
    pub(crate) fn from_disjoint(
        universe: BTreeSet<MentionId>,
        mut classes: Vec<Vec<MentionId>>,
    ) -> Self {
        for class in &mut classes {
            class.sort();
        }
        classes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
        let class_of = classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |id| (id.clone(), i)))
            .collect();
        Partition {
            universe,
            classes,
            class_of,
        }
    }

    pub fn universe(&self) -> &BTreeSet<MentionId> {
        &self.universe
    }

    pub fn classes(&self) -> &[Vec<MentionId>] {
        &self.classes
    }

    pub fn class(&self, index: usize) -> Option<&[MentionId]> {
        self.classes.get(index).map(Vec::as_slice)
    }

    pub fn class_of(&self, id: &str) -> Option<usize> {
        self.class_of.get(id).copied()
    }

    /// |R|
    pub fn mention_count(&self) -> usize {
        self.universe.len()
    }

    /// |P|
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(Vec::len)
    }

    /// Returns a partition extended with `extra` mentions as singleton classes.
    /// Mentions already in the universe are ignored.
    pub fn with_singletons<I>(&self, extra: I) -> Self
    where
        I: IntoIterator<Item = MentionId>,
    {
        let mut universe = self.universe.clone();
        let mut classes = self.classes.clone();
        for id in extra {
            if universe.insert(id.clone()) {
                classes.push(vec![id]);
            }
        }
        Self::from_disjoint(universe, classes)
    }

    /// Removes `drop` mentions from the universe and from their classes; classes
    /// left empty disappear.
    pub fn without<'a, I>(&self, drop: I) -> Self
    where
        I: IntoIterator<Item = &'a MentionId>,
    {
        let drop: BTreeSet<&MentionId> = drop.into_iter().collect();
        let universe = self
            .universe
            .iter()
            .filter(|id| !drop.contains(id))
            .cloned()
            .collect();
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().filter(|id| !drop.contains(id)).cloned().collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        Self::from_disjoint(universe, classes)
    }
}
