//! Subsets of simple generators encoded as bitmasks.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of the generator indices `0..32`.
///
/// Internally 0-based; user-facing ids (display, JSON, CLI) are 1-based to
/// match the usual numbering of simple roots `α_1, ..., α_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= 32);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    /// From 0-based indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// From 1-based ids; `None` if an id is 0 or exceeds `rank`.
    pub fn from_ids(ids: &[usize], rank: usize) -> Option<Self> {
        let mut bits = 0u32;
        for &id in ids {
            if id == 0 || id > rank {
                return None;
            }
            bits |= 1 << (id - 1);
        }
        Some(Subset(bits))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    /// 0-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// 1-based ids in increasing order.
    pub fn ids(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `self` in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let bits = self.0;
        (0..=bits).filter(move |m| m & !bits == 0).map(Subset)
    }

    /// All `X` with `self ⊆ X ⊆ outer`, in increasing bitmask order.
    pub fn supersets_within(self, outer: Subset) -> impl Iterator<Item = Subset> {
        debug_assert!(self.is_subset_of(outer));
        let base = self;
        outer
            .difference(self)
            .subsets()
            .map(move |extra| base.union(extra))
    }

    /// `(-1)^|self|`.
    pub fn sign(self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.ids().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.ids().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_ids(&ids, 32)
            .ok_or_else(|| serde::de::Error::custom("generator ids are 1-based and at most 32"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_iteration() {
        let k = Subset::from_ids(&[1, 3], 3).unwrap();
        let subs: Vec<String> = k.subsets().map(|s| s.to_string()).collect();
        assert_eq!(subs, ["{}", "{1}", "{3}", "{1,3}"]);
        let sup: Vec<Subset> = Subset::singleton(0).supersets_within(Subset::full(3)).collect();
        assert_eq!(sup.len(), 4);
        assert!(sup.iter().all(|s| s.contains(0)));
        assert_eq!(Subset::from_ids(&[4], 3), None);
        assert_eq!(Subset::from_ids(&[0], 3), None);
    }

    #[test]
    fn json_uses_one_based_ids() {
        let s = Subset::from_indices([0, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        let back: Subset = serde_json::from_str("[1,3]").unwrap();
        assert_eq!(back, s);
    }
}
