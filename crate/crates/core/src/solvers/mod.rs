//! Two-way number partitioning: minimize `E(A) = (Σ_A q - Σ_{I\A} q)^2`.
//!
//! All solvers work on `|discrepancy|` and square only when building the
//! [`SolveResult`]. Witnesses are always reported in canonical form (the side
//! holding index 1).

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::instance::{energy, Instance};
use crate::subset::SubsetAssignment;

mod brute;
mod ckk;
mod horowitz_sahni;
mod kk;
mod schroeppel_shamir;

pub use brute::solve_brute_force;
pub use ckk::{solve_ckk, solve_ckk_traced, Improvement};
pub use horowitz_sahni::solve_horowitz_sahni;
pub use kk::solve_kk;
pub use schroeppel_shamir::solve_schroeppel_shamir;

pub const DEFAULT_BRUTE_CAP: usize = 28;
pub const DEFAULT_MEMORY_LIMIT: u64 = 2 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    BruteForce,
    HorowitzSahni,
    SchroeppelShamir,
    KarmarkarKarp,
    CompleteKarmarkarKarp,
}

impl SolverKind {
    pub const ALL: [SolverKind; 5] = [
        SolverKind::BruteForce,
        SolverKind::HorowitzSahni,
        SolverKind::SchroeppelShamir,
        SolverKind::KarmarkarKarp,
        SolverKind::CompleteKarmarkarKarp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::BruteForce => "brute",
            SolverKind::HorowitzSahni => "hs",
            SolverKind::SchroeppelShamir => "ss",
            SolverKind::KarmarkarKarp => "kk",
            SolverKind::CompleteKarmarkarKarp => "ckk",
        }
    }

    /// Whether a successful run is guaranteed optimal.
    pub fn is_exact(self) -> bool {
        !matches!(self, SolverKind::KarmarkarKarp)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown solver {s:?}; expected one of brute, hs, ss, kk, ckk")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    /// Largest N accepted by exhaustive enumeration.
    pub brute_cap: usize,
    /// Refuse meet-in-the-middle runs whose lists would exceed this many bytes.
    pub memory_limit_bytes: u64,
    pub parallelism: Parallelism,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            brute_cap: DEFAULT_BRUTE_CAP,
            memory_limit_bytes: DEFAULT_MEMORY_LIMIT,
            parallelism: Parallelism::default(),
        }
    }
}

impl SolverConfig {
    pub fn sequential() -> Self {
        Self { parallelism: Parallelism::Sequential, ..Self::default() }
    }

    pub(crate) fn check_brute_cap(&self, n: usize, what: &'static str) -> Result<()> {
        let cap = self.brute_cap.min(63);
        if n > cap {
            return Err(Error::CapExceeded { what, n, cap });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolverBudget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl SolverBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self { max_nodes: Some(max_nodes), max_seconds: None }
    }

    pub fn seconds(max_seconds: f64) -> Self {
        Self { max_nodes: None, max_seconds: Some(max_seconds) }
    }
}

/// Node counter that checks a [`SolverBudget`]; the clock is read every 1024 nodes.
pub(crate) struct BudgetMeter {
    budget: SolverBudget,
    start: Instant,
    pub(crate) nodes: u64,
}

impl BudgetMeter {
    pub(crate) fn new(budget: SolverBudget) -> Self {
        Self { budget, start: Instant::now(), nodes: 0 }
    }

    /// Counts one node; returns false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return false;
            }
        }
        if let Some(secs) = self.budget.max_seconds {
            if self.nodes.is_multiple_of(1024) && self.start.elapsed().as_secs_f64() > secs {
                return false;
            }
        }
        true
    }

    pub(crate) fn exhausted_error(&self) -> Error {
        Error::BudgetExhausted { nodes: self.nodes, seconds: self.start.elapsed().as_secs_f64() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub elapsed: Duration,
    /// Largest number of list/heap elements held at once.
    pub peak_list_size: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub solver: SolverKind,
    pub optimal_energy: BigUint,
    /// Signed discrepancy of the canonical witness.
    pub discrepancy: BigInt,
    pub witness: SubsetAssignment,
    pub exact: bool,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn from_witness(
        instance: &Instance,
        solver: SolverKind,
        witness: SubsetAssignment,
        exact: bool,
        stats: SolveStats,
    ) -> Self {
        let witness = witness.canonical();
        let value = energy(instance, &witness).expect("solver witness matches its instance");
        Self {
            solver,
            optimal_energy: value.energy,
            discrepancy: value.discrepancy,
            witness,
            exact,
            stats,
        }
    }

    pub fn to_document(&self) -> Value {
        json!({
            "solver": self.solver.name(),
            "n": self.witness.universe(),
            "optimal_energy": self.optimal_energy.to_string(),
            "discrepancy": self.discrepancy.to_string(),
            "witness": self.witness.indices(),
            "exact": self.exact,
            "stats": {
                "nodes_expanded": self.stats.nodes_expanded,
                "elapsed_s": crate::format::real(self.stats.elapsed.as_secs_f64()),
                "peak_list_size": self.stats.peak_list_size,
            },
        })
    }
}

/// Runs the named solver. `budget` is used by `ckk` and `ss`.
pub fn solve(
    kind: SolverKind,
    instance: &Instance,
    config: &SolverConfig,
    budget: SolverBudget,
) -> Result<SolveResult> {
    match kind {
        SolverKind::BruteForce => solve_brute_force(instance, config),
        SolverKind::HorowitzSahni => solve_horowitz_sahni(instance, config),
        SolverKind::SchroeppelShamir => solve_schroeppel_shamir(instance, config, budget),
        SolverKind::KarmarkarKarp => Ok(solve_kk(instance)),
        SolverKind::CompleteKarmarkarKarp => Ok(solve_ckk(instance, budget)),
    }
}

/// All subset sums of `weights`, masks shifted by `offset`. With `force_first`
/// only subsets containing the first weight are produced.
pub(crate) fn subset_sums<T: crate::sum::SumInt>(
    weights: &[T],
    offset: u32,
    force_first: bool,
) -> Vec<(T, u64)> {
    let mut out = Vec::with_capacity(1 << weights.len());
    let rest = if force_first && !weights.is_empty() {
        out.push((weights[0].clone(), 1u64 << offset));
        &weights[1..]
    } else {
        out.push((T::zero(), 0));
        weights
    };
    let skip = weights.len() - rest.len();
    for (k, w) in rest.iter().enumerate() {
        let bit = 1u64 << (offset as usize + skip + k);
        let len = out.len();
        for idx in 0..len {
            let (s, m) = &out[idx];
            let next = (s.add(w), m | bit);
            out.push(next);
        }
    }
    out
}

/// Side assignment from "same side" / "opposite side" constraints forming a
/// spanning forest over `n` items. Item 0 is placed on side `true`.
pub(crate) fn two_color(n: usize, edges: &[(usize, usize, bool)]) -> Vec<bool> {
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for &(a, b, same) in edges {
        adj[a].push((b, same));
        adj[b].push((a, same));
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(true);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let su = side[u].expect("visited");
            for &(v, same) in &adj[u] {
                if side[v].is_none() {
                    side[v] = Some(if same { su } else { !su });
                    stack.push(v);
                }
            }
        }
    }
    side.into_iter().map(|s| s.expect("colored")).collect()
}

pub(crate) fn subset_from_sides(sides: &[bool]) -> SubsetAssignment {
    SubsetAssignment::from_indices(
        sides.len(),
        sides.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i + 1),
    )
    .expect("indices in range")
}
