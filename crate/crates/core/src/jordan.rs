//! Integer partitions used as Jordan types, with the dominance order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JordanType(Vec<usize>);

/// Outcome of comparing two partitions in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    Dominates,
    DominatedBy,
    Incomparable,
}

impl JordanType {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanType(parts)
    }

    /// `count` blocks of size `size` followed by one block of size `rest`.
    pub fn blocks(size: usize, count: usize, rest: usize) -> Self {
        let mut parts = vec![size; count];
        parts.push(rest);
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Compares prefix sums; partitions of different totals are
    /// incomparable.
    pub fn dominance(&self, other: &JordanType) -> Dominance {
        if self.total() != other.total() {
            return Dominance::Incomparable;
        }
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0usize, 0usize);
        let (mut ge, mut le) = (true, true);
        for i in 0..len {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Greater => le = false,
                Ordering::Less => ge = false,
                Ordering::Equal => {}
            }
        }
        match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Dominates,
            (false, true) => Dominance::DominatedBy,
            (false, false) => Dominance::Incomparable,
        }
    }

    /// The element dominating every member of `types`, if one exists.
    pub fn dominance_max<'a, I>(types: I) -> Option<JordanType>
    where
        I: IntoIterator<Item = &'a JordanType>,
    {
        let all: Vec<&JordanType> = types.into_iter().collect();
        all.iter()
            .find(|cand| {
                all.iter().all(|t| {
                    matches!(cand.dominance(t), Dominance::Equal | Dominance::Dominates)
                })
            })
            .map(|t| (*t).clone())
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
