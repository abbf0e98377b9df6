use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::instance::Instance;
use crate::solvers::{subset_from_sides, two_color, SolveResult, SolveStats, SolverKind};
use crate::sum::{with_sum_type, SumInt};

pub(crate) type Edge = (usize, usize, bool);

/// Largest-differencing: returns the final |discrepancy| and the side
/// constraints it implies. Ties go to the lower original index.
pub(crate) fn differencing<T: SumInt>(weights: &[T]) -> (T, Vec<Edge>) {
    let mut heap: BinaryHeap<(T, Reverse<usize>)> =
        weights.iter().cloned().enumerate().map(|(i, w)| (w, Reverse(i))).collect();
    let mut edges = Vec::with_capacity(weights.len().saturating_sub(1));
    while heap.len() > 1 {
        let (u, Reverse(ui)) = heap.pop().expect("len > 1");
        let (v, Reverse(vi)) = heap.pop().expect("len > 1");
        edges.push((ui, vi, false));
        heap.push((u.sub(&v), Reverse(ui)));
    }
    let (d, _) = heap.pop().expect("non-empty instance");
    (d, edges)
}

/// Karmarkar–Karp differencing heuristic, `O(N log N)`. Never exact.
pub fn solve_kk(instance: &Instance) -> SolveResult {
    let start = Instant::now();
    let edges = with_sum_type!(instance, |w: T| differencing::<T>(&w).1);
    let sides = two_color(instance.len(), &edges);
    let stats = SolveStats {
        nodes_expanded: edges.len() as u64,
        elapsed: start.elapsed(),
        peak_list_size: instance.len() as u64,
    };
    SolveResult::from_witness(instance, SolverKind::KarmarkarKarp, subset_from_sides(&sides), false, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_instance;
    use crate::solvers::{solve_brute_force, SolverConfig};
    use num_bigint::{BigInt, BigUint};

    #[test]
    fn hand_run_of_8_7_6_5_4() {
        // 8-7=1, 6-5=1, 4-1=3, 3-1=2: differencing ends at 2, while {8,7} vs
        // {6,5,4} is perfect.
        let r = solve_kk(&Instance::from_u64s(&[8, 7, 6, 5, 4]).unwrap());
        assert_eq!(r.optimal_energy, BigUint::from(4u32));
        assert_eq!(r.discrepancy.magnitude(), &BigUint::from(2u32));
        assert!(!r.exact);
    }

    #[test]
    fn single_weight() {
        let r = solve_kk(&Instance::from_u64s(&[1]).unwrap());
        assert_eq!(r.optimal_energy, BigUint::from(1u32));
        assert_eq!(r.discrepancy, BigInt::from(1));
    }

    #[test]
    fn upper_bounds_the_optimum_and_reconstructs_its_value() {
        for seed in 0..100 {
            let i = generate_instance(1 + seed as usize % 16, 12, seed).unwrap();
            let kk = solve_kk(&i);
            let d = with_sum_type!(&i, |w: T| differencing::<T>(&w).0.to_big());
            assert_eq!(kk.discrepancy.magnitude(), &d);
            let exact = solve_brute_force(&i, &SolverConfig::default()).unwrap();
            assert!(kk.optimal_energy >= exact.optimal_energy);
        }
    }
}
