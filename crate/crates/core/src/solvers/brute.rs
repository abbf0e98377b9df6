use std::cmp::Ordering;
use std::time::Instant;

use crate::enumerate::CanonicalWalk;
use crate::error::Result;
use crate::exec::Parallelism;
use crate::instance::Instance;
use crate::solvers::{SolveResult, SolveStats, SolverConfig, SolverKind};
use crate::subset::{lex_cmp_masks, SubsetAssignment};
use crate::sum::{with_sum_type, SumInt};

/// `(|discrepancy|, mask)`, ordered by discrepancy then subset order.
fn better<T: SumInt>(cand: &(T, u64), best: &(T, u64)) -> bool {
    match cand.0.cmp(&best.0) {
        Ordering::Less => true,
        Ordering::Equal => lex_cmp_masks(cand.1, best.1) == Ordering::Less,
        Ordering::Greater => false,
    }
}

pub(crate) fn best_canonical<T: SumInt>(weights: &[T], parallelism: Parallelism) -> (T, u64, u64) {
    let total = weights.iter().fold(T::zero(), |acc, w| acc.add(w));
    let walk = CanonicalWalk::new(weights, parallelism);
    let per_shard = parallelism.map_shards(walk.shards(), |shard| {
        let mut best: Option<(T, u64)> = None;
        let mut visited = 0u64;
        walk.walk(shard, |mask, sum| {
            visited += 1;
            let d = sum.double().abs_diff(&total);
            let cand = (d, mask);
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        });
        (best.expect("every shard has at least one subset"), visited)
    });
    let mut visited = 0;
    let mut best: Option<(T, u64)> = None;
    for (cand, v) in per_shard {
        visited += v;
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
    }
    let (d, mask) = best.expect("at least one shard");
    (d, mask, visited)
}

/// Exhaustive search over the `2^(N-1)` subsets containing index 1. The
/// witness is the lexicographically smallest optimal canonical subset.
pub fn solve_brute_force(instance: &Instance, config: &SolverConfig) -> Result<SolveResult> {
    let n = instance.len();
    config.check_brute_cap(n, "brute force")?;
    let start = Instant::now();
    let (mask, visited) = with_sum_type!(instance, |w: T| {
        let (_, mask, visited) = best_canonical::<T>(&w, config.parallelism);
        (mask, visited)
    });
    let stats = SolveStats { nodes_expanded: visited, elapsed: start.elapsed(), peak_list_size: 0 };
    Ok(SolveResult::from_witness(
        instance,
        SolverKind::BruteForce,
        SubsetAssignment::from_mask_unchecked(n, mask),
        true,
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::instance::{energy, generate_instance};
    use num_bigint::BigUint;

    fn inst(w: &[u64]) -> Instance {
        Instance::from_u64s(w).unwrap()
    }

    /// Independent oracle: every one of the 2^N subsets, energy via `energy`.
    fn oracle(instance: &Instance) -> (BigUint, SubsetAssignment) {
        let n = instance.len();
        let mut best: Option<(BigUint, SubsetAssignment)> = None;
        for m in 0..(1u64 << n) {
            let s = SubsetAssignment::from_mask(n, m).unwrap();
            if !s.contains(1) {
                continue;
            }
            let e = energy(instance, &s).unwrap().energy;
            let replace = match &best {
                None => true,
                Some((be, bs)) => e < *be || (e == *be && s < *bs),
            };
            if replace {
                best = Some((e, s));
            }
        }
        best.unwrap()
    }

    #[test]
    fn examples() {
        let r = solve_brute_force(&inst(&[1, 2, 3]), &SolverConfig::default()).unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(0u32));
        assert_eq!(r.witness.indices(), vec![1, 2]);
        assert!(r.exact);

        let r = solve_brute_force(&inst(&[1]), &SolverConfig::default()).unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(1u32));

        let r = solve_brute_force(&inst(&[2, 2, 2]), &SolverConfig::default()).unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(4u32));
        assert_eq!(r.witness.indices(), vec![1]);
    }

    #[test]
    fn cap_refusal_names_the_cap() {
        let i = generate_instance(29, 8, 1).unwrap();
        match solve_brute_force(&i, &SolverConfig::default()).unwrap_err() {
            Error::CapExceeded { cap, n, .. } => assert_eq!((cap, n), (28, 29)),
            e => panic!("{e:?}"),
        }
        let cfg = SolverConfig { brute_cap: 10, ..SolverConfig::default() };
        assert!(solve_brute_force(&generate_instance(11, 8, 1).unwrap(), &cfg).is_err());
    }

    #[test]
    fn matches_oracle_including_tie_break() {
        for seed in 0..60 {
            let n = 1 + (seed as usize % 12);
            let bits = [3, 8, 20][seed as usize % 3];
            let i = generate_instance(n, bits, seed).unwrap();
            let (e, w) = oracle(&i);
            for mode in [Parallelism::Sequential, Parallelism::Parallel] {
                let cfg = SolverConfig { parallelism: mode, ..SolverConfig::default() };
                let r = solve_brute_force(&i, &cfg).unwrap();
                assert_eq!(r.optimal_energy, e, "seed {seed}");
                assert_eq!(r.witness, w, "seed {seed}");
            }
        }
    }

    #[test]
    fn twenty_by_twenty_bits_agrees_with_oracle_energy() {
        let i = generate_instance(20, 20, 7).unwrap();
        let r = solve_brute_force(&i, &SolverConfig::default()).unwrap();
        // Independent route: a sorted list of all 2^20 subset sums.
        let w: Vec<u64> = i.weights().iter().map(|x| x.try_into().unwrap()).collect();
        let total: u64 = w.iter().sum();
        let best = (0u32..1 << 20)
            .map(|m| {
                let s: u64 = (0..20).filter(|b| m >> b & 1 == 1).map(|b| w[b]).sum();
                (2 * s).abs_diff(total)
            })
            .min()
            .unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(best) * best);
    }

    #[test]
    fn big_weights_use_the_wide_path() {
        let big: BigUint = "340282366920938463463374607431768211457".parse().unwrap();
        let i = Instance::new(vec![big.clone(), big.clone(), big.clone() * 2u32 + 3u32]).unwrap();
        let r = solve_brute_force(&i, &SolverConfig::default()).unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(9u32));
        assert_eq!(r.witness.indices(), vec![1, 2]);
    }
}
