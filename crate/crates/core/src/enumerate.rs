//! Gray-code walk over the subsets that contain index 1.
//!
//! Every configuration pairs with its complement at equal energy, so walking
//! the `2^(N-1)` subsets holding index 1 covers the whole spectrum. The free
//! bits `1..N` are split into `2^shard_bits` shards by their top bits.

use crate::exec::{shard_bits, Parallelism};
use crate::sum::SumInt;

pub(crate) struct CanonicalWalk<'a, T> {
    weights: &'a [T],
    shard_bits: u32,
}

impl<'a, T: SumInt> CanonicalWalk<'a, T> {
    pub(crate) fn new(weights: &'a [T], parallelism: Parallelism) -> Self {
        assert!(!weights.is_empty() && weights.len() <= 64);
        let free = weights.len() as u32 - 1;
        Self { weights, shard_bits: shard_bits(free, parallelism) }
    }

    pub(crate) fn shards(&self) -> usize {
        1 << self.shard_bits
    }

    /// Calls `visit(mask, subset_sum)` for every canonical subset in `shard`.
    pub(crate) fn walk<F: FnMut(u64, &T)>(&self, shard: usize, mut visit: F) {
        let n = self.weights.len();
        let low = n as u32 - 1 - self.shard_bits;
        let high_shift = 1 + low;
        let mut mask = 1u64 | (shard as u64) << high_shift;
        let mut sum = self.weights[0].clone();
        for b in 0..self.shard_bits {
            if shard >> b & 1 == 1 {
                sum = sum.add(&self.weights[(high_shift + b) as usize]);
            }
        }
        visit(mask, &sum);
        for i in 1u64..(1u64 << low) {
            let bit = i.trailing_zeros() + 1;
            mask ^= 1 << bit;
            let w = &self.weights[bit as usize];
            sum = if mask >> bit & 1 == 1 { sum.add(w) } else { sum.sub(w) };
            visit(mask, &sum);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_canonical_subset_is_visited_once_with_its_sum() {
        let weights: Vec<u128> = vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
        for mode in [Parallelism::Sequential, Parallelism::Parallel] {
            let walk = CanonicalWalk::new(&weights, mode);
            let mut seen = vec![false; 1 << weights.len()];
            for shard in 0..walk.shards() {
                walk.walk(shard, |mask, sum| {
                    assert_eq!(mask & 1, 1);
                    assert!(!seen[mask as usize]);
                    seen[mask as usize] = true;
                    let direct: u128 = (0..weights.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| weights[i])
                        .sum();
                    assert_eq!(*sum, direct);
                });
            }
            assert_eq!(seen.iter().filter(|&&s| s).count(), 1 << (weights.len() - 1));
        }
    }

    #[test]
    fn single_weight() {
        let weights = vec![7u128];
        let walk = CanonicalWalk::new(&weights, Parallelism::Parallel);
        let mut visits = Vec::new();
        walk.walk(0, |m, s| visits.push((m, *s)));
        assert_eq!(visits, vec![(1, 7)]);
    }
}
