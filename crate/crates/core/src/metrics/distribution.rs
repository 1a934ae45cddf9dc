//! Distributional comparison: class sizes only, not class contents.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::ratio::{IfUndefined, Ratio};

use super::count;

/// Class sizes sorted non-increasingly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeDistribution {
    sizes: Vec<usize>,
}

impl SizeDistribution {
    pub fn of(partition: &Partition) -> Self {
        Self::from_sizes(partition.class_sizes().collect())
    }

    /// Sorts `sizes` and drops zeros.
    pub fn from_sizes(mut sizes: Vec<usize>) -> Self {
        sizes.retain(|&s| s > 0);
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        SizeDistribution { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Size at 0-based `i`, zero past the end.
    fn padded(&self, i: usize) -> usize {
        self.sizes.get(i).copied().unwrap_or(0)
    }
}

/// Σ min(k_i, r_i) over the zero-padded lists, divided by the larger total.
pub fn overlapping(key: &SizeDistribution, response: &SizeDistribution) -> Ratio {
    let len = key.sizes.len().max(response.sizes.len());
    let shared: usize = (0..len)
        .map(|i| key.padded(i).min(response.padded(i)))
        .sum();
    Ratio::new(
        count(shared),
        count(key.total().max(response.total())),
        IfUndefined::One,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DErrorLabel {
    /// The response's big classes are smaller than the key's: too few links.
    Recall,
    /// The response's big classes are bigger than the key's: too many links.
    Precision,
    Balanced,
}

impl DErrorLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            DErrorLabel::Recall => "recall",
            DErrorLabel::Precision => "precision",
            DErrorLabel::Balanced => "balanced",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            DErrorLabel::Recall => DErrorLabel::Precision,
            DErrorLabel::Precision => DErrorLabel::Recall,
            DErrorLabel::Balanced => DErrorLabel::Balanced,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DError {
    pub magnitude: Ratio,
    pub label: DErrorLabel,
    /// 1-based positions where the key class is bigger.
    pub key_greater_positions: Vec<usize>,
    /// 1-based positions where the response class is bigger.
    pub response_greater_positions: Vec<usize>,
}

/// Compares the mean position of key-bigger slots (A) with that of
/// response-bigger slots (B). B earlier than A means the response inflates its
/// top classes (precision errors); A earlier means recall errors. The
/// magnitude is |avg(A) − avg(B)| / L for padded length L, or 1 when only one
/// of the two sets is non-empty.
pub fn d_error(key: &SizeDistribution, response: &SizeDistribution) -> DError {
    let len = key.sizes.len().max(response.sizes.len());
    let mut key_greater = Vec::new();
    let mut response_greater = Vec::new();
    for i in 0..len {
        match key.padded(i).cmp(&response.padded(i)) {
            Ordering::Greater => key_greater.push(i + 1),
            Ordering::Less => response_greater.push(i + 1),
            Ordering::Equal => {}
        }
    }

    let (label, magnitude) = match (key_greater.is_empty(), response_greater.is_empty()) {
        (true, true) => (DErrorLabel::Balanced, Ratio::zero()),
        (true, false) => (DErrorLabel::Precision, Ratio::one()),
        (false, true) => (DErrorLabel::Recall, Ratio::one()),
        (false, false) => {
            let (sa, na) = (key_greater.iter().sum::<usize>(), key_greater.len());
            let (sb, nb) = (response_greater.iter().sum::<usize>(), response_greater.len());
            // avg(A) − avg(B) = (sa·nb − sb·na) / (na·nb)
            let a = count(sa * nb);
            let b = count(sb * na);
            let denominator = count(na * nb * len);
            match a.cmp(&b) {
                Ordering::Greater => (DErrorLabel::Precision, Ratio::recall(a - b, denominator)),
                Ordering::Less => (DErrorLabel::Recall, Ratio::recall(b - a, denominator)),
                Ordering::Equal => (DErrorLabel::Balanced, Ratio::recall(0, denominator)),
            }
        }
    };

    DError {
        magnitude,
        label,
        key_greater_positions: key_greater,
        response_greater_positions: response_greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::toy17;

    fn dist(sizes: &[usize]) -> SizeDistribution {
        SizeDistribution::from_sizes(sizes.to_vec())
    }

    #[test]
    fn toy17_distributions() {
        let (key, response) = toy17();
        assert_eq!(SizeDistribution::of(&key).sizes(), [7, 5, 3, 2]);
        assert_eq!(SizeDistribution::of(&response).sizes(), [9, 7, 1]);
    }

    #[test]
    fn overlap_examples() {
        let o = overlapping(&dist(&[7, 5, 3, 1]), &dist(&[9, 7, 1]));
        assert_eq!(o.to_string(), "13/17");
        assert_eq!(o.round_half_even(4), "0.7647");
        assert!(overlapping(&dist(&[3, 2]), &dist(&[3, 2])).is(1, 1));
        assert!(overlapping(&dist(&[4]), &dist(&[1, 1, 1, 1])).is(1, 4));
        assert!(overlapping(&dist(&[]), &dist(&[])).is(1, 1));
    }

    #[test]
    fn d_error_on_toy_sizes() {
        let d = d_error(&dist(&[7, 5, 3, 1]), &dist(&[9, 7, 1]));
        assert_eq!(d.label, DErrorLabel::Precision);
        assert_eq!(d.key_greater_positions, [3, 4]);
        assert_eq!(d.response_greater_positions, [1, 2]);
        assert!(d.magnitude.is(1, 2), "{}", d.magnitude);
    }

    #[test]
    fn identical_sizes_are_balanced() {
        let d = d_error(&dist(&[4, 2, 1]), &dist(&[4, 2, 1]));
        assert_eq!(d.label, DErrorLabel::Balanced);
        assert!(d.magnitude.is(0, 1));
        assert!(d.key_greater_positions.is_empty() && d.response_greater_positions.is_empty());
    }

    #[test]
    fn one_sided_differences_have_full_magnitude() {
        let d = d_error(&dist(&[4]), &dist(&[1, 1, 1, 1]));
        assert_eq!(d.label, DErrorLabel::Recall);
        assert_eq!(d.key_greater_positions, [1]);
        assert_eq!(d.response_greater_positions, [2, 3, 4]);
        assert!(d.magnitude.is(1, 2));

        let d = d_error(&dist(&[3, 1]), &dist(&[3, 2]));
        assert_eq!((d.label, d.magnitude), (DErrorLabel::Precision, Ratio::one()));
    }

    #[test]
    fn equal_average_positions_are_balanced() {
        // A = {1, 4}, B = {2, 3}
        let d = d_error(&dist(&[4, 2, 2, 1]), &dist(&[3, 3, 3]));
        assert_eq!(d.key_greater_positions, [1, 4]);
        assert_eq!(d.response_greater_positions, [2, 3]);
        assert_eq!(d.label, DErrorLabel::Balanced);
        assert!(d.magnitude.is(0, 1));
    }

    #[test]
    fn swapping_flips_the_label() {
        let d = d_error(&dist(&[9, 7, 1]), &dist(&[7, 5, 3, 1]));
        assert_eq!(d.label, DErrorLabel::Recall);
        assert!(d.magnitude.is(1, 2));
    }
}
