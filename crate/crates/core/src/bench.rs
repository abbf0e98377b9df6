//! Scaling measurements: run solvers over growing N and fit log2 growth rates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::format::real;
use crate::instance::generate_instance;
use crate::solvers::{solve, SolverBudget, SolverConfig, SolverKind};
use crate::subset::SubsetAssignment;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solvers: Vec<SolverKind>,
    /// Strictly ascending.
    pub n_values: Vec<usize>,
    pub bits: u32,
    pub seeds_per_n: u64,
    pub first_seed: u64,
    /// Seconds per run. A solver that exceeds it is skipped at larger N.
    pub time_cap: f64,
    /// Each cell is timed this many times and the fastest run kept.
    pub repeats: u32,
    /// Spread (solver, n, seed) cells over the thread pool. Each timed solve
    /// still runs sequentially.
    pub parallel_cells: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            solvers: vec![SolverKind::BruteForce, SolverKind::HorowitzSahni, SolverKind::SchroeppelShamir],
            n_values: vec![16, 18, 20, 22],
            bits: 48,
            seeds_per_n: 3,
            first_seed: 0,
            time_cap: 60.0,
            repeats: 1,
            parallel_cells: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.solvers.is_empty() || self.n_values.is_empty() {
            return Err(Error::Input("bench needs at least one solver and one n".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("bench n values must be strictly ascending".into()));
        }
        if self.seeds_per_n == 0 || self.repeats == 0 {
            return Err(Error::Input("seeds per n and repeats must be at least 1".into()));
        }
        if self.time_cap.is_nan() || self.time_cap <= 0.0 {
            return Err(Error::Input("time cap must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Completed,
    /// Ran past the time cap or its search budget.
    OverTime,
    /// The solver refused the size (cap or memory limit).
    Refused,
    /// Not run because a smaller N already went over time.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub solver: SolverKind,
    pub n: usize,
    pub seed: u64,
    pub elapsed_s: Option<f64>,
    pub peak_list_size: u64,
    pub energy: Option<BigUint>,
    pub witness: Option<SubsetAssignment>,
    pub status: RowStatus,
}

impl BenchRow {
    pub fn completed(&self) -> bool {
        self.status == RowStatus::Completed
    }
}

/// `(solver, n, seed, energy, witness)`.
pub type Fingerprint = (SolverKind, usize, u64, Option<String>, Option<String>);

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub bits: u32,
    pub rows: Vec<BenchRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitLevel {
    pub n: usize,
    pub median_elapsed_s: f64,
    pub median_peak: f64,
    /// Observed minus fitted log2 time.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFit {
    pub solver: SolverKind,
    /// Slope of log2(median elapsed) against n.
    pub time_slope: f64,
    /// Slope of log2(median peak list size), when every level has one.
    pub peak_slope: Option<f64>,
    pub levels: Vec<FitLevel>,
}

/// Smallest positive time kept before taking logs.
const TIME_FLOOR: f64 = 1e-9;

pub fn run_scaling(config: &BenchConfig, solver_config: &SolverConfig) -> Result<BenchReport> {
    config.validate()?;
    let solver_config = SolverConfig { parallelism: Parallelism::Sequential, ..*solver_config };
    let budget = SolverBudget::seconds(config.time_cap);
    let cells_mode = if config.parallel_cells { Parallelism::Parallel } else { Parallelism::Sequential };
    let mut over_time = BTreeSet::new();
    let mut rows = Vec::new();

    for &n in &config.n_values {
        let cells: Vec<(SolverKind, u64)> = config
            .solvers
            .iter()
            .flat_map(|&s| (0..config.seeds_per_n).map(move |i| (s, config.first_seed + i)))
            .collect();
        let level = cells_mode.map_shards(cells.len(), |c| {
            let (solver, seed) = cells[c];
            if over_time.contains(&solver) {
                return Ok(BenchRow {
                    solver,
                    n,
                    seed,
                    elapsed_s: None,
                    peak_list_size: 0,
                    energy: None,
                    witness: None,
                    status: RowStatus::Skipped,
                });
            }
            run_cell(solver, n, seed, config, &solver_config, budget)
        });
        for row in level {
            let row = row?;
            if row.status == RowStatus::OverTime {
                log::info!("{} went over the time cap at n={}", row.solver, n);
                over_time.insert(row.solver);
            }
            rows.push(row);
        }
    }
    Ok(BenchReport { bits: config.bits, rows })
}

fn run_cell(
    solver: SolverKind,
    n: usize,
    seed: u64,
    config: &BenchConfig,
    solver_config: &SolverConfig,
    budget: SolverBudget,
) -> Result<BenchRow> {
    let instance = generate_instance(n, config.bits, seed)?;
    let mut row = BenchRow {
        solver,
        n,
        seed,
        elapsed_s: None,
        peak_list_size: 0,
        energy: None,
        witness: None,
        status: RowStatus::Completed,
    };
    let mut best = f64::INFINITY;
    for _ in 0..config.repeats {
        let start = Instant::now();
        let outcome = solve(solver, &instance, solver_config, budget);
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(r) => {
                best = best.min(elapsed);
                row.peak_list_size = r.stats.peak_list_size;
                if solver == SolverKind::CompleteKarmarkarKarp && !r.exact {
                    row.status = RowStatus::OverTime;
                }
                row.energy = Some(r.optimal_energy);
                row.witness = Some(r.witness);
            }
            Err(e @ (Error::CapExceeded { .. } | Error::MemoryLimit { .. })) => {
                log::info!("{solver} refused n={n}: {e}");
                row.status = RowStatus::Refused;
                return Ok(row);
            }
            Err(Error::BudgetExhausted { .. }) => {
                best = best.min(elapsed);
                row.status = RowStatus::OverTime;
            }
            Err(e) => return Err(e),
        }
        if best > config.time_cap {
            row.status = RowStatus::OverTime;
        }
        if row.status != RowStatus::Completed {
            break;
        }
    }
    row.elapsed_s = Some(best);
    if !row.completed() {
        row.energy = None;
        row.witness = None;
    }
    Ok(row)
}

impl BenchReport {
    pub fn rows_for(&self, solver: SolverKind) -> impl Iterator<Item = &BenchRow> {
        self.rows.iter().filter(move |r| r.solver == solver)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("solver,n,seed,elapsed_s,peak_list_size,energy,completed\n");
        for r in &self.rows {
            let elapsed = r.elapsed_s.map(real).unwrap_or_default();
            let energy = r.energy.as_ref().map(ToString::to_string).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.solver,
                r.n,
                r.seed,
                elapsed,
                r.peak_list_size,
                energy,
                r.completed()
            );
        }
        out
    }

    /// The agreed optimum per (n, seed), from completed exact solvers.
    pub fn consensus(&self) -> BTreeMap<(usize, u64), BigUint> {
        let mut out = BTreeMap::new();
        for r in self.rows.iter().filter(|r| r.completed() && r.solver.is_exact()) {
            if let Some(e) = &r.energy {
                out.entry((r.n, r.seed)).or_insert_with(|| e.clone());
            }
        }
        out
    }

    /// Completed rows that disagree with the consensus: exact solvers with a
    /// different energy, heuristics with a lower one.
    pub fn consensus_violations(&self) -> Vec<&BenchRow> {
        let consensus = self.consensus();
        self.rows
            .iter()
            .filter(|r| r.completed())
            .filter(|r| {
                let (Some(e), Some(c)) = (&r.energy, consensus.get(&(r.n, r.seed))) else {
                    return false;
                };
                if r.solver.is_exact() {
                    e != c
                } else {
                    e < c
                }
            })
            .collect()
    }

    /// Number of places where a solver's median time drops as n grows.
    pub fn median_inversions(&self, solver: SolverKind) -> usize {
        let levels = median_levels(self, solver);
        levels.windows(2).filter(|w| w[1].1 < w[0].1).count()
    }

    /// Energies and witnesses only; equal across reruns of the same config.
    pub fn outcome_fingerprint(&self) -> Vec<Fingerprint> {
        self.rows
            .iter()
            .map(|r| {
                (
                    r.solver,
                    r.n,
                    r.seed,
                    r.energy.as_ref().map(ToString::to_string),
                    r.witness.as_ref().map(ToString::to_string),
                )
            })
            .collect()
    }

    pub fn fit_summary(&self) -> Value {
        let solvers: BTreeSet<SolverKind> = self.rows.iter().map(|r| r.solver).collect();
        let mut doc = serde_json::Map::new();
        for s in solvers {
            let entry = match fit_exponent(self, s) {
                Ok(fit) => json!({
                    "time_slope": real(fit.time_slope),
                    "peak_slope": fit.peak_slope.map(real),
                    "levels": fit.levels.iter().map(|l| json!({
                        "n": l.n,
                        "median_elapsed_s": real(l.median_elapsed_s),
                        "median_peak_list_size": real(l.median_peak),
                        "residual": real(l.residual),
                    })).collect::<Vec<_>>(),
                }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            doc.insert(s.name().to_string(), entry);
        }
        json!({ "bits": self.bits, "fits": doc })
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    }
}

/// `(n, median elapsed, median peak)` over completed rows, ascending n.
fn median_levels(report: &BenchReport, solver: SolverKind) -> Vec<(usize, f64, f64)> {
    let mut by_n: BTreeMap<usize, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in report.rows_for(solver).filter(|r| r.completed()) {
        let e = by_n.entry(r.n).or_default();
        e.0.push(r.elapsed_s.unwrap_or(0.0));
        e.1.push(r.peak_list_size as f64);
    }
    by_n.into_iter()
        .map(|(n, (mut t, mut p))| (n, median(&mut t), median(&mut p)))
        .collect()
}

/// Least-squares `(slope, intercept)`.
fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Fits log2 of the per-n median time (and peak list size) against n.
pub fn fit_exponent(report: &BenchReport, solver: SolverKind) -> Result<ExponentFit> {
    let levels = median_levels(report, solver);
    if levels.len() < 3 {
        return Err(Error::Refused(format!(
            "{solver} has {} completed n levels; a fit needs at least 3",
            levels.len()
        )));
    }
    let time: Vec<(f64, f64)> = levels.iter().map(|&(n, t, _)| (n as f64, t.max(TIME_FLOOR).log2())).collect();
    let (time_slope, intercept) = least_squares(&time);
    let peak_slope = levels.iter().all(|l| l.2 > 0.0).then(|| {
        let pts: Vec<(f64, f64)> = levels.iter().map(|&(n, _, p)| (n as f64, p.log2())).collect();
        least_squares(&pts).0
    });
    let levels = levels
        .iter()
        .zip(&time)
        .map(|(&(n, t, p), &(x, y))| FitLevel {
            n,
            median_elapsed_s: t,
            median_peak: p,
            residual: y - (intercept + time_slope * x),
        })
        .collect();
    Ok(ExponentFit { solver, time_slope, peak_slope, levels })
}
