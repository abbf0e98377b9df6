//! Boltzmann ensemble over all `2^N` spin configurations.
//!
//! The spectrum is built exactly as a histogram of distinct energies, so the
//! ensemble sums have one term per level. Exponentials use the shifted energy
//! `H_k - E_min` (an exact integer difference) to keep every weight in `(0, 1]`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::enumerate::CanonicalWalk;
use crate::error::{Error, Result};
use crate::exec::pairwise_sum;
use crate::instance::Instance;
use crate::solvers::SolverConfig;
use crate::sum::{with_sum_type, SumInt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyLevel {
    pub energy: BigUint,
    /// `energy - E_min`.
    pub excess: BigUint,
    /// Number of configurations at this energy.
    pub multiplicity: u64,
}

/// Distinct energies in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergySpectrum {
    pub n: usize,
    pub levels: Vec<EnergyLevel>,
}

impl EnergySpectrum {
    pub fn ground_energy(&self) -> &BigUint {
        &self.levels[0].energy
    }

    /// Second-lowest distinct energy, if any.
    pub fn next_energy(&self) -> Option<&BigUint> {
        self.levels.get(1).map(|l| &l.energy)
    }

    pub fn max_energy(&self) -> &BigUint {
        &self.levels.last().expect("non-empty spectrum").energy
    }

    pub fn configurations(&self) -> u64 {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoltzmannLevel {
    /// `-β (H - E_min)`, always `<= 0`.
    pub shifted_log_weight: f64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoltzmannTable {
    pub beta: f64,
    pub e_min: BigUint,
    pub levels: Vec<BoltzmannLevel>,
    /// `ln Σ_k e^{-β (H_k - E_min)}`.
    pub log_partition_shifted: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleReport {
    pub beta: f64,
    pub average_energy: f64,
    /// `<E> - E_ground`, computed from shifted energies.
    pub gap_to_ground: f64,
    pub probabilities_checksum: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaSweep {
    pub ground_energy: BigUint,
    pub reports: Vec<EnsembleReport>,
}

impl BetaSweep {
    /// `<E> - E_ground` at the largest β.
    pub fn convergence_gap(&self) -> f64 {
        self.reports.last().map_or(f64::NAN, |r| r.gap_to_ground)
    }

    /// CSV with columns `beta,average_energy,gap_to_ground,checksum`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("beta,average_energy,gap_to_ground,checksum\n");
        for r in &self.reports {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.beta, r.average_energy, r.gap_to_ground, r.probabilities_checksum
            ));
        }
        out
    }
}

fn histogram<T: SumInt>(weights: &[T], config: &SolverConfig) -> BTreeMap<BigUint, u64> {
    let total = weights.iter().fold(T::zero(), |acc, w| acc.add(w));
    let walk = CanonicalWalk::new(weights, config.parallelism);
    let shards = config.parallelism.map_shards(walk.shards(), |shard| {
        let mut counts: HashMap<T, u64> = HashMap::new();
        walk.walk(shard, |_, sum| {
            *counts.entry(sum.double().abs_diff(&total)).or_default() += 1;
        });
        counts
    });
    let mut merged: BTreeMap<BigUint, u64> = BTreeMap::new();
    for shard in shards {
        for (d, c) in shard {
            // Each canonical subset stands for itself and its complement.
            *merged.entry(d.to_big()).or_default() += 2 * c;
        }
    }
    merged
}

/// Exact energy histogram over all `2^N` configurations.
pub fn energy_spectrum(instance: &Instance, config: &SolverConfig) -> Result<EnergySpectrum> {
    config.check_brute_cap(instance.len(), "ensemble enumeration")?;
    let by_distance = with_sum_type!(instance, |w: T| histogram::<T>(&w, config));
    let e_min = {
        let d = by_distance.keys().next().expect("non-empty histogram");
        d * d
    };
    let levels = by_distance
        .into_iter()
        .map(|(d, multiplicity)| {
            let energy = &d * &d;
            EnergyLevel { excess: &energy - &e_min, energy, multiplicity }
        })
        .collect();
    Ok(EnergySpectrum { n: instance.len(), levels })
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta < 0.0 || beta.is_infinite() {
        return Err(Error::Input(format!("beta must be finite and non-negative, got {beta}")));
    }
    Ok(())
}

fn big_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub fn boltzmann_table(spectrum: &EnergySpectrum, beta: f64) -> Result<BoltzmannTable> {
    check_beta(beta)?;
    let levels: Vec<BoltzmannLevel> = spectrum
        .levels
        .iter()
        .map(|l| BoltzmannLevel {
            shifted_log_weight: if beta == 0.0 || l.excess.is_zero() {
                0.0
            } else {
                -beta * big_to_f64(&l.excess)
            },
            multiplicity: l.multiplicity,
        })
        .collect();
    let weights: Vec<f64> = levels
        .iter()
        .map(|l| l.multiplicity as f64 * l.shifted_log_weight.exp())
        .collect();
    Ok(BoltzmannTable {
        beta,
        e_min: spectrum.ground_energy().clone(),
        levels,
        log_partition_shifted: pairwise_sum(&weights).ln(),
    })
}

/// Ensemble average from a precomputed spectrum. Summation runs over levels in
/// ascending energy with a fixed pairwise tree.
pub fn ensemble_from_spectrum(spectrum: &EnergySpectrum, beta: f64) -> Result<EnsembleReport> {
    check_beta(beta)?;
    let table = boltzmann_table(spectrum, beta)?;
    let weights: Vec<f64> = table
        .levels
        .iter()
        .map(|l| l.multiplicity as f64 * l.shifted_log_weight.exp())
        .collect();
    let z = pairwise_sum(&weights);
    let probs: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let excess: Vec<f64> = probs
        .iter()
        .zip(&spectrum.levels)
        .map(|(p, l)| if *p == 0.0 { 0.0 } else { p * big_to_f64(&l.excess) })
        .collect();
    let gap = pairwise_sum(&excess);
    Ok(EnsembleReport {
        beta,
        average_energy: big_to_f64(spectrum.ground_energy()) + gap,
        gap_to_ground: gap,
        probabilities_checksum: pairwise_sum(&probs),
    })
}

/// `<E> = Σ_k H_k P_k` with `P_k = e^{-β H_k} / Z`. `beta = 0` gives the plain
/// mean over all configurations.
pub fn ensemble_average_energy(instance: &Instance, beta: f64, config: &SolverConfig) -> Result<EnsembleReport> {
    check_beta(beta)?;
    ensemble_from_spectrum(&energy_spectrum(instance, config)?, beta)
}

/// Ensemble averages along strictly ascending `betas`.
pub fn beta_sweep(instance: &Instance, betas: &[f64], config: &SolverConfig) -> Result<BetaSweep> {
    if betas.is_empty() {
        return Err(Error::Input("the beta list is empty".into()));
    }
    for &b in betas {
        check_beta(b)?;
    }
    if betas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("betas must be strictly ascending".into()));
    }
    let spectrum = energy_spectrum(instance, config)?;
    let reports = betas
        .iter()
        .map(|&b| ensemble_from_spectrum(&spectrum, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(BetaSweep { ground_energy: spectrum.ground_energy().clone(), reports })
}
