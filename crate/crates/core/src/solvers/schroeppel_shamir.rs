use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::error::Result;
use crate::instance::Instance;
use crate::solvers::horowitz_sahni::check_mitm_memory;
use crate::solvers::{
    solve_brute_force, subset_sums, BudgetMeter, SolveResult, SolveStats, SolverBudget,
    SolverConfig, SolverKind,
};
use crate::subset::SubsetAssignment;
use crate::sum::{with_sum_type, SumInt};

/// Sums `a[i] + b[j]` in ascending order, generated lazily from a heap
/// holding at most one entry per element of `a`.
struct Ascending<'a, T> {
    a: &'a [(T, u64)],
    b: &'a [(T, u64)],
    heap: BinaryHeap<Reverse<(T, usize, usize)>>,
    peak: usize,
}

impl<'a, T: SumInt> Ascending<'a, T> {
    fn new(a: &'a [(T, u64)], b: &'a [(T, u64)]) -> Self {
        let heap: BinaryHeap<_> = (0..a.len()).map(|i| Reverse((a[i].0.add(&b[0].0), i, 0))).collect();
        let peak = heap.len();
        Self { a, b, heap, peak }
    }

    fn next(&mut self) -> Option<(T, u64)> {
        let Reverse((sum, i, j)) = self.heap.pop()?;
        if j + 1 < self.b.len() {
            self.heap.push(Reverse((self.a[i].0.add(&self.b[j + 1].0), i, j + 1)));
        }
        self.peak = self.peak.max(self.heap.len());
        Some((sum, self.a[i].1 | self.b[j].1))
    }
}

/// Sums `c[i] + d[j]` in descending order.
struct Descending<'a, T> {
    c: &'a [(T, u64)],
    d: &'a [(T, u64)],
    heap: BinaryHeap<(T, usize, usize)>,
    peak: usize,
}

impl<'a, T: SumInt> Descending<'a, T> {
    fn new(c: &'a [(T, u64)], d: &'a [(T, u64)]) -> Self {
        let last = d.len() - 1;
        let heap: BinaryHeap<_> = (0..c.len()).map(|i| (c[i].0.add(&d[last].0), i, last)).collect();
        let peak = heap.len();
        Self { c, d, heap, peak }
    }

    fn next(&mut self) -> Option<(T, u64)> {
        let (sum, i, j) = self.heap.pop()?;
        if j > 0 {
            self.heap.push((self.c[i].0.add(&self.d[j - 1].0), i, j - 1));
        }
        self.peak = self.peak.max(self.heap.len());
        Some((sum, self.c[i].1 | self.d[j].1))
    }
}

struct Outcome {
    mask: u64,
    steps: u64,
    peak: u64,
}

fn run<T: SumInt>(weights: &[T], meter: &mut BudgetMeter) -> Option<Outcome> {
    let n = weights.len();
    let h = n.div_ceil(2);
    let qa = h.div_ceil(2);
    let qc = h + (n - h).div_ceil(2);
    let total = weights.iter().fold(T::zero(), |acc, w| acc.add(w));
    let floor = if total.is_odd() { T::from_big(&1u32.into()) } else { T::zero() };

    let sorted = |mut v: Vec<(T, u64)>| {
        v.sort_unstable();
        v
    };
    let a = sorted(subset_sums(&weights[..qa], 0, true));
    let b = sorted(subset_sums(&weights[qa..h], qa as u32, false));
    let c = sorted(subset_sums(&weights[h..qc], h as u32, false));
    let d = sorted(subset_sums(&weights[qc..], qc as u32, false));
    let lists = (a.len() + b.len() + c.len() + d.len()) as u64;

    let mut left = Ascending::new(&a, &b);
    let mut right = Descending::new(&c, &d);
    let mut l = left.next();
    let mut r = right.next();
    let mut best: Option<(T, u64)> = None;
    while let (Some((ls, lm)), Some((rs, rm))) = (&l, &r) {
        if !meter.tick() {
            return None;
        }
        let doubled = ls.add(rs).double();
        let dist = doubled.abs_diff(&total);
        if best.as_ref().is_none_or(|(bd, _)| dist < *bd) {
            best = Some((dist.clone(), lm | rm));
        }
        if dist == floor {
            break;
        }
        if doubled > total {
            r = right.next();
        } else {
            l = left.next();
        }
    }
    let (_, mask) = best.expect("both streams start non-empty");
    Some(Outcome { mask, steps: meter.nodes, peak: lists + (left.peak + right.peak) as u64 })
}

/// Four quarter lists; the two half-sum streams are produced in sorted order
/// by heaps so only about `2^(N/4)` elements are held at once. Instances with
/// fewer than four weights go to brute force. Running out of `budget` is an
/// error: this solver never reports a non-optimal answer.
pub fn solve_schroeppel_shamir(
    instance: &Instance,
    config: &SolverConfig,
    budget: SolverBudget,
) -> Result<SolveResult> {
    let n = instance.len();
    if n < 4 {
        let mut r = solve_brute_force(instance, config)?;
        r.solver = SolverKind::SchroeppelShamir;
        return Ok(r);
    }
    let quarter = n.div_ceil(4).min(100);
    let bits = instance.total().bits();
    let per = if crate::sum::fits_u128(&instance.total()) {
        <u128 as SumInt>::approx_bytes(bits)
    } else {
        <num_bigint::BigUint as SumInt>::approx_bytes(bits)
    } + 16;
    check_mitm_memory(n, 6u128 << quarter, per, config)?;

    let start = Instant::now();
    let mut meter = BudgetMeter::new(budget);
    let outcome = with_sum_type!(instance, |w: T| run::<T>(&w, &mut meter));
    let Some(outcome) = outcome else {
        return Err(meter.exhausted_error());
    };
    let stats = SolveStats {
        nodes_expanded: outcome.steps,
        elapsed: start.elapsed(),
        peak_list_size: outcome.peak,
    };
    Ok(SolveResult::from_witness(
        instance,
        SolverKind::SchroeppelShamir,
        SubsetAssignment::from_mask_unchecked(n, outcome.mask),
        true,
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::instance::generate_instance;
    use crate::solvers::solve_horowitz_sahni;
    use num_bigint::BigUint;

    fn ss(w: &[u64]) -> SolveResult {
        solve_schroeppel_shamir(
            &Instance::from_u64s(w).unwrap(),
            &SolverConfig::default(),
            SolverBudget::unlimited(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let r = ss(&[1, 2, 3, 4]);
        assert_eq!(r.optimal_energy, BigUint::from(0u32));
        assert_eq!(r.witness.len(), 2);
        assert_eq!(ss(&[1, 1, 1, 1]).optimal_energy, BigUint::from(0u32));
        assert_eq!(ss(&[5, 1]).optimal_energy, BigUint::from(16u32));
        assert_eq!(ss(&[5, 1]).solver, SolverKind::SchroeppelShamir);
    }

    #[test]
    fn agrees_with_horowitz_sahni_on_24_weights() {
        let i = generate_instance(24, 16, 1).unwrap();
        let cfg = SolverConfig::default();
        let a = solve_schroeppel_shamir(&i, &cfg, SolverBudget::unlimited()).unwrap();
        let b = solve_horowitz_sahni(&i, &cfg).unwrap();
        assert_eq!(a.optimal_energy, b.optimal_energy);
        assert!(a.stats.peak_list_size < b.stats.peak_list_size / 8);
    }

    #[test]
    fn heaps_stay_at_quarter_size() {
        // Quarters of 6: |A| = 32, |B| = |C| = |D| = 64, heaps <= |A| and <= |C|.
        let i = generate_instance(24, 48, 3).unwrap();
        let r = solve_schroeppel_shamir(&i, &SolverConfig::default(), SolverBudget::unlimited()).unwrap();
        assert!(r.stats.peak_list_size <= 32 + 3 * 64 + 32 + 64);
        assert!(r.stats.peak_list_size >= 32 + 3 * 64);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let i = generate_instance(24, 48, 3).unwrap();
        let err = solve_schroeppel_shamir(&i, &SolverConfig::default(), SolverBudget::nodes(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
    }
}
