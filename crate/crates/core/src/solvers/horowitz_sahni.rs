use std::cmp::Ordering;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::instance::Instance;
use crate::solvers::{subset_sums, SolveResult, SolveStats, SolverConfig, SolverKind};
use crate::subset::SubsetAssignment;
use crate::sum::{with_sum_type, SumInt};

pub(crate) fn check_mitm_memory(n: usize, entries: u128, bytes_per: u64, config: &SolverConfig) -> Result<()> {
    if n > 64 {
        return Err(Error::CapExceeded { what: "meet-in-the-middle", n, cap: 64 });
    }
    let estimated = entries.saturating_mul(bytes_per as u128);
    if estimated > config.memory_limit_bytes as u128 {
        return Err(Error::MemoryLimit { estimated, limit: config.memory_limit_bytes });
    }
    Ok(())
}

fn by_sum_then_mask<T: Ord>(a: &(T, u64), b: &(T, u64)) -> Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Two-pointer scan for the pair whose doubled sum is closest to `total`.
/// `left` ascending, `right` descending. Returns `(|d|, mask, steps)`.
fn closest_pair<T: SumInt>(left: &[(T, u64)], right: &[(T, u64)], total: &T) -> (T, u64, u64) {
    let floor = total.is_odd();
    let (mut i, mut j, mut steps) = (0, 0, 0u64);
    let mut best: Option<(T, u64)> = None;
    while i < left.len() && j < right.len() {
        steps += 1;
        let doubled = left[i].0.add(&right[j].0).double();
        let d = doubled.abs_diff(total);
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d.clone(), left[i].1 | right[j].1));
        }
        if d == if floor { T::from_big(&1u32.into()) } else { T::zero() } {
            break;
        }
        if doubled > *total {
            j += 1;
        } else {
            i += 1;
        }
    }
    let (d, mask) = best.expect("both lists are non-empty");
    (d, mask, steps)
}

fn run<T: SumInt>(weights: &[T], parallelism: Parallelism) -> (u64, u64, u64) {
    let n = weights.len();
    let h = n.div_ceil(2);
    let total = weights.iter().fold(T::zero(), |acc, w| acc.add(w));
    let mut left = subset_sums(&weights[..h], 0, true);
    let mut right = subset_sums(&weights[h..], h as u32, false);
    parallelism.sort_by(&mut left, by_sum_then_mask);
    parallelism.sort_by(&mut right, |a, b| by_sum_then_mask(b, a));
    let (_, mask, steps) = closest_pair(&left, &right, &total);
    (mask, steps, (left.len() + right.len()) as u64)
}

/// Meet in the middle: sorted subset sums of the two halves, scanned with two
/// pointers. About `2^(N/2)` time and space.
pub fn solve_horowitz_sahni(instance: &Instance, config: &SolverConfig) -> Result<SolveResult> {
    let n = instance.len();
    let h = n.div_ceil(2);
    let entries = (1u128 << (h - 1).min(100)) + (1u128 << (n - h).min(100));
    let bits = instance.total().bits();
    let per = if crate::sum::fits_u128(&instance.total()) {
        <u128 as SumInt>::approx_bytes(bits)
    } else {
        <num_bigint::BigUint as SumInt>::approx_bytes(bits)
    } + 8;
    check_mitm_memory(n, entries, per, config)?;

    let start = Instant::now();
    let (mask, steps, peak) = with_sum_type!(instance, |w: T| run::<T>(&w, config.parallelism));
    let stats = SolveStats { nodes_expanded: steps, elapsed: start.elapsed(), peak_list_size: peak };
    Ok(SolveResult::from_witness(
        instance,
        SolverKind::HorowitzSahni,
        SubsetAssignment::from_mask_unchecked(n, mask),
        true,
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_instance;
    use crate::solvers::solve_brute_force;
    use num_bigint::BigUint;

    #[test]
    fn examples() {
        let cfg = SolverConfig::default();
        let r = solve_horowitz_sahni(&Instance::from_u64s(&[1, 2, 3]).unwrap(), &cfg).unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(0u32));
        let r = solve_horowitz_sahni(&Instance::from_u64s(&[7]).unwrap(), &cfg).unwrap();
        assert_eq!(r.optimal_energy, BigUint::from(49u32));
        assert_eq!(r.witness.indices(), vec![1]);
    }

    #[test]
    fn agrees_with_brute_force_on_24_weights() {
        let i = generate_instance(24, 16, 1).unwrap();
        let cfg = SolverConfig::default();
        let hs = solve_horowitz_sahni(&i, &cfg).unwrap();
        let bf = solve_brute_force(&i, &cfg).unwrap();
        assert_eq!(hs.optimal_energy, bf.optimal_energy);
        assert_eq!(hs.stats.peak_list_size, (1 << 11) + (1 << 12));
    }

    #[test]
    fn memory_guard_refuses() {
        let cfg = SolverConfig { memory_limit_bytes: 1 << 10, ..SolverConfig::default() };
        let i = generate_instance(24, 16, 1).unwrap();
        assert!(matches!(solve_horowitz_sahni(&i, &cfg).unwrap_err(), Error::MemoryLimit { .. }));
        let i = generate_instance(70, 16, 1).unwrap();
        assert!(solve_horowitz_sahni(&i, &SolverConfig::default()).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree_bit_for_bit() {
        for seed in 0..20 {
            let i = generate_instance(18, 6, seed).unwrap();
            let a = solve_horowitz_sahni(&i, &SolverConfig::sequential()).unwrap();
            let b = solve_horowitz_sahni(
                &i,
                &SolverConfig { parallelism: Parallelism::Parallel, ..SolverConfig::default() },
            )
            .unwrap();
            assert_eq!(a.witness, b.witness);
            assert_eq!(a.optimal_energy, b.optimal_energy);
        }
    }
}
