use std::time::Instant;

use num_bigint::BigUint;

use crate::instance::Instance;
use crate::solvers::kk::{differencing, Edge};
use crate::solvers::{
    subset_from_sides, two_color, BudgetMeter, SolveResult, SolveStats, SolverBudget, SolverKind,
};
use crate::sum::{with_sum_type, SumInt};

/// A new best-so-far |discrepancy| and the node count at which it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub nodes: u64,
    pub discrepancy: BigUint,
}

struct Search<T> {
    meter: BudgetMeter,
    floor: T,
    best: T,
    best_edges: Vec<Edge>,
    edges: Vec<Edge>,
    exhausted: bool,
    trace: Vec<Improvement>,
    peak: usize,
}

/// Items are kept sorted by value descending, then index ascending, which is
/// the order the differencing heap pops them in.
fn insert_sorted<T: SumInt>(items: &mut Vec<(T, usize)>, item: (T, usize)) {
    let pos = items.partition_point(|x| x.0 > item.0 || (x.0 == item.0 && x.1 < item.1));
    items.insert(pos, item);
}

impl<T: SumInt> Search<T> {
    fn done(&self) -> bool {
        self.exhausted || self.best == self.floor
    }

    fn leaf(&mut self, d: T, extra: impl Iterator<Item = Edge>) {
        if d < self.best {
            self.best = d;
            self.best_edges = self.edges.clone();
            self.best_edges.extend(extra);
            self.trace.push(Improvement { nodes: self.meter.nodes, discrepancy: self.best.to_big() });
        }
    }

    fn expand(&mut self, items: Vec<(T, usize)>, depth: usize) {
        if self.done() {
            return;
        }
        if !self.meter.tick() {
            self.exhausted = true;
            return;
        }
        self.peak = self.peak.max(items.len() * (depth + 1));
        if items.len() == 1 {
            self.leaf(items[0].0.clone(), std::iter::empty());
            return;
        }
        let rest = items[1..].iter().fold(T::zero(), |acc, x| acc.add(&x.0));
        if items[0].0 >= rest {
            // Dominance: the largest element goes alone against everything else.
            let d = items[0].0.sub(&rest);
            let head = items[0].1;
            self.leaf(d, items[1..].iter().map(move |x| (head, x.1, false)));
            return;
        }
        let (u, ui) = items[0].clone();
        let (v, vi) = items[1].clone();

        let mut diff = items[2..].to_vec();
        insert_sorted(&mut diff, (u.sub(&v), ui));
        self.edges.push((ui, vi, false));
        self.expand(diff, depth + 1);
        self.edges.pop();
        if self.done() {
            return;
        }

        let mut union = items[2..].to_vec();
        insert_sorted(&mut union, (u.add(&v), ui));
        self.edges.push((ui, vi, true));
        self.expand(union, depth + 1);
        self.edges.pop();
    }
}

fn run<T: SumInt>(weights: &[T], budget: SolverBudget) -> (Vec<Edge>, bool, u64, usize, Vec<Improvement>) {
    let total = weights.iter().fold(T::zero(), |acc, w| acc.add(w));
    let floor = if total.is_odd() { T::from_big(&1u32.into()) } else { T::zero() };
    let (kk_d, kk_edges) = differencing(weights);
    let mut items: Vec<(T, usize)> = Vec::with_capacity(weights.len());
    for (i, w) in weights.iter().enumerate() {
        insert_sorted(&mut items, (w.clone(), i));
    }
    let mut search = Search {
        meter: BudgetMeter::new(budget),
        floor,
        trace: vec![Improvement { nodes: 0, discrepancy: kk_d.to_big() }],
        best: kk_d,
        best_edges: kk_edges,
        edges: Vec::new(),
        exhausted: false,
        peak: weights.len(),
    };
    search.expand(items, 0);
    let completed = !search.exhausted;
    (search.best_edges, completed, search.meter.nodes, search.peak, search.trace)
}

/// Complete Karmarkar–Karp with its improvement trace. The incumbent starts
/// at the differencing solution, which is also the first leaf of the tree.
pub fn solve_ckk_traced(instance: &Instance, budget: SolverBudget) -> (SolveResult, Vec<Improvement>) {
    let start = Instant::now();
    let (edges, completed, nodes, peak, trace) = with_sum_type!(instance, |w: T| run::<T>(&w, budget));
    let sides = two_color(instance.len(), &edges);
    let stats = SolveStats { nodes_expanded: nodes, elapsed: start.elapsed(), peak_list_size: peak as u64 };
    let result = SolveResult::from_witness(
        instance,
        SolverKind::CompleteKarmarkarKarp,
        subset_from_sides(&sides),
        completed,
        stats,
    );
    (result, trace)
}

/// Anytime branch and bound over "difference" (opposite sides) and "union"
/// (same side) decisions on the two largest remaining values. `exact` is true
/// only when the tree was exhausted, or the parity floor reached, within `budget`.
pub fn solve_ckk(instance: &Instance, budget: SolverBudget) -> SolveResult {
    solve_ckk_traced(instance, budget).0
}
