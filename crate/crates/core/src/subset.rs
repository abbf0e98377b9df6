//! Spin configurations as subsets of `{1..N}`.
//!
//! A [`SubsetAssignment`] lists the spins that point up. Indices are 1-based
//! in the public API. Universes of up to 64 spins are stored as a bitmask
//! (bit `i` is index `i + 1`), larger ones as a sorted index list.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Members {
    Mask(u64),
    /// Sorted, 0-based.
    List(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetAssignment {
    universe: usize,
    members: Members,
}

/// Bitmask with the low `n` bits set.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Lexicographic order of the ascending index sequences encoded by two masks,
/// a proper prefix sorting first.
pub(crate) fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = (a ^ b).trailing_zeros();
    let above = if d == 63 { 0 } else { u64::MAX << (d + 1) };
    if a & (1 << d) != 0 {
        // `a` continues with index d; `b` either continues with something
        // larger (so `a` is smaller) or has ended (so `b` is a prefix).
        if b & above != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a & above != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl SubsetAssignment {
    pub fn empty(universe: usize) -> Self {
        if universe <= 64 {
            Self { universe, members: Members::Mask(0) }
        } else {
            Self { universe, members: Members::List(Vec::new()) }
        }
    }

    /// Builds a subset from a bitmask; bits at or above `universe` are rejected.
    pub fn from_mask(universe: usize, mask: u64) -> Result<Self> {
        if universe < 64 && mask >> universe != 0 {
            return Err(Error::Input(format!(
                "mask {mask:#x} has bits outside a universe of {universe}"
            )));
        }
        if universe <= 64 {
            Ok(Self { universe, members: Members::Mask(mask) })
        } else {
            Self::from_zero_based(universe, (0..64).filter(|i| mask >> i & 1 == 1).collect())
        }
    }

    pub(crate) fn from_mask_unchecked(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64 && mask & !full_mask(universe) == 0);
        Self { universe, members: Members::Mask(mask) }
    }

    /// Builds a subset from 1-based indices (duplicates are merged).
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Result<Self> {
        let mut zero_based = Vec::new();
        for i in indices {
            if i == 0 || i > universe {
                return Err(Error::Input(format!(
                    "index {i} is out of range 1..={universe}"
                )));
            }
            zero_based.push(i - 1);
        }
        Self::from_zero_based(universe, zero_based)
    }

    fn from_zero_based(universe: usize, mut zero_based: Vec<usize>) -> Result<Self> {
        zero_based.sort_unstable();
        zero_based.dedup();
        if let Some(&last) = zero_based.last() {
            if last >= universe {
                return Err(Error::Input(format!(
                    "index {} is out of range 1..={universe}",
                    last + 1
                )));
            }
        }
        if universe <= 64 {
            let mask = zero_based.iter().fold(0u64, |m, &i| m | 1 << i);
            Ok(Self { universe, members: Members::Mask(mask) })
        } else {
            Ok(Self { universe, members: Members::List(zero_based) })
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn mask(&self) -> Option<u64> {
        match self.members {
            Members::Mask(m) => Some(m),
            Members::List(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        match &self.members {
            Members::Mask(m) => m.count_ones() as usize,
            Members::List(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Membership test for a 1-based index.
    pub fn contains(&self, index: usize) -> bool {
        if index == 0 || index > self.universe {
            return false;
        }
        match &self.members {
            Members::Mask(m) => m >> (index - 1) & 1 == 1,
            Members::List(v) => v.binary_search(&(index - 1)).is_ok(),
        }
    }

    /// Ascending 1-based indices.
    pub fn indices(&self) -> Vec<usize> {
        self.iter_zero_based().map(|i| i + 1).collect()
    }

    pub(crate) fn iter_zero_based(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.members {
            Members::Mask(m) => {
                let m = *m;
                Box::new((0..self.universe).filter(move |i| m >> i & 1 == 1))
            }
            Members::List(v) => Box::new(v.iter().copied()),
        }
    }

    /// `I \ A`.
    pub fn complement(&self) -> Self {
        match &self.members {
            Members::Mask(m) => Self {
                universe: self.universe,
                members: Members::Mask(!m & full_mask(self.universe)),
            },
            Members::List(v) => {
                let mut out = Vec::with_capacity(self.universe - v.len());
                let mut it = v.iter().peekable();
                for i in 0..self.universe {
                    if it.peek() == Some(&&i) {
                        it.next();
                    } else {
                        out.push(i);
                    }
                }
                Self { universe: self.universe, members: Members::List(out) }
            }
        }
    }

    /// The member of the pair `{A, I \ A}` that contains index 1.
    pub fn canonical(&self) -> Self {
        if self.contains(1) || self.universe == 0 {
            self.clone()
        } else {
            self.complement()
        }
    }

    /// Spin string with `+1` at members and `-1` elsewhere.
    pub fn spins(&self) -> Vec<i8> {
        (1..=self.universe)
            .map(|i| if self.contains(i) { 1 } else { -1 })
            .collect()
    }
}

impl Ord for SubsetAssignment {
    /// Universe size first, then lexicographic order of the index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe.cmp(&other.universe).then_with(|| {
            match (&self.members, &other.members) {
                (Members::Mask(a), Members::Mask(b)) => lex_cmp_masks(*a, *b),
                _ => self.iter_zero_based().cmp(other.iter_zero_based()),
            }
        })
    }
}

impl PartialOrd for SubsetAssignment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter_zero_based().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// `+1 -1 ...` rendering of a spin string.
pub fn format_spins(spins: &[i8]) -> String {
    spins
        .iter()
        .map(|&s| if s > 0 { "+1" } else { "-1" })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, idx: &[usize]) -> SubsetAssignment {
        SubsetAssignment::from_indices(n, idx.iter().copied()).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set(3, &[1]).complement(), set(3, &[2, 3]));
        assert_eq!(set(3, &[]).complement(), set(3, &[1, 2, 3]));
        assert_eq!(set(1, &[1]).complement(), set(1, &[]));
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        assert!(SubsetAssignment::from_indices(3, [4]).is_err());
        assert!(SubsetAssignment::from_indices(3, [0]).is_err());
        assert!(SubsetAssignment::from_mask(3, 0b1000).is_err());
    }

    #[test]
    fn large_universes_use_index_lists() {
        let s = set(100, &[100, 3, 3, 70]);
        assert_eq!(s.mask(), None);
        assert_eq!(s.indices(), vec![3, 70, 100]);
        let c = s.complement();
        assert_eq!(c.len(), 97);
        assert!(!c.contains(70) && c.contains(1));
        assert_eq!(c.complement(), s);
        assert_eq!(s.canonical(), c);
    }

    #[test]
    fn ordering_puts_prefixes_first() {
        assert!(set(3, &[]) < set(3, &[1]));
        assert!(set(3, &[1]) < set(3, &[1, 2]));
        assert!(set(3, &[1, 2]) < set(3, &[1, 3]));
        assert!(set(3, &[1, 3]) < set(3, &[2]));
        assert!(set(3, &[1, 2]) < set(3, &[3]));
    }

    #[test]
    fn spins_follow_membership() {
        assert_eq!(set(3, &[3]).spins(), vec![-1, -1, 1]);
        assert_eq!(format_spins(&set(3, &[1, 2]).spins()), "+1 +1 -1");
    }

    proptest! {
        #[test]
        fn mask_order_matches_sequence_order(a in any::<u64>(), b in any::<u64>(), n in 1usize..=64) {
            let a = a & full_mask(n);
            let b = b & full_mask(n);
            let seq = |m: u64| (0..n).filter(move |i| m >> i & 1 == 1);
            prop_assert_eq!(lex_cmp_masks(a, b), seq(a).cmp(seq(b)));
        }

        #[test]
        fn list_and_mask_forms_agree(idx in proptest::collection::vec(1usize..=60, 0..20)) {
            let small = SubsetAssignment::from_indices(60, idx.iter().copied()).unwrap();
            let big = SubsetAssignment::from_indices(65, idx.iter().copied()).unwrap();
            prop_assert_eq!(small.indices(), big.indices());
            prop_assert_eq!(small.complement().len() + 5, big.complement().len());
        }
    }
}
