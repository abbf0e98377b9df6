//! Ground eigenspace of the Ising Hamiltonian: every spin configuration at the
//! minimal energy, and the uniform superposition over them.

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::enumerate::CanonicalWalk;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solvers::SolverConfig;
use crate::subset::{format_spins, full_mask, lex_cmp_masks, SubsetAssignment};
use crate::sum::{with_sum_type, SumInt};

#[derive(Clone, Debug, PartialEq)]
pub struct GroundEigenspace {
    pub n: usize,
    pub optimal_energy: BigUint,
    /// Minimizers in ascending subset order, at most `limit` of them.
    pub configurations: Vec<SubsetAssignment>,
    /// Number of minimizers in total, including any cut off by the limit.
    pub degeneracy: u64,
    pub truncated: bool,
}

/// The amplitude `1/√d`, kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformAmplitude {
    pub dimension: u64,
}

impl UniformAmplitude {
    /// `d · (1/√d)^2` as the exact fraction `(d, d)`.
    pub fn norm_squared(&self) -> (u64, u64) {
        (self.dimension, self.dimension)
    }

    pub fn is_normalized(&self) -> bool {
        let (num, den) = self.norm_squared();
        num == den && den > 0
    }

    pub fn symbol(&self) -> String {
        format!("1/√{}", self.dimension)
    }

    pub fn to_f64(&self) -> f64 {
        1.0 / (self.dimension as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVectorDescription {
    pub dimension: u64,
    /// `z_i = +1` iff index `i` is in the configuration.
    pub basis_labels: Vec<Vec<i8>>,
    pub amplitude: UniformAmplitude,
}

struct ShardBest<T> {
    dist: Option<T>,
    /// Configurations (both members of each complement pair), kept sorted and
    /// trimmed to `keep` once they grow past twice that.
    masks: Vec<u64>,
    count: u64,
}

fn trim(masks: &mut Vec<u64>, keep: usize) {
    masks.sort_unstable_by(|a, b| lex_cmp_masks(*a, *b));
    masks.truncate(keep);
}

fn minimizers<T: SumInt>(weights: &[T], keep: usize, config: &SolverConfig) -> (T, Vec<u64>, u64) {
    let total = weights.iter().fold(T::zero(), |acc, w| acc.add(w));
    let full = full_mask(weights.len());
    let walk = CanonicalWalk::new(weights, config.parallelism);
    let shards = config.parallelism.map_shards(walk.shards(), |shard| {
        let mut best = ShardBest::<T> { dist: None, masks: Vec::new(), count: 0 };
        let threshold = keep.saturating_mul(2).max(1 << 12);
        walk.walk(shard, |mask, sum| {
            let d = sum.double().abs_diff(&total);
            let ord = best.dist.as_ref().map_or(Ordering::Less, |b| d.cmp(b));
            if ord == Ordering::Greater {
                return;
            }
            if ord == Ordering::Less {
                best.dist = Some(d);
                best.masks.clear();
                best.count = 0;
            }
            best.count += 2;
            best.masks.push(mask);
            best.masks.push(!mask & full);
            if best.masks.len() > threshold {
                trim(&mut best.masks, keep);
            }
        });
        best
    });
    let best_dist = shards
        .iter()
        .filter_map(|s| s.dist.clone())
        .min()
        .expect("at least one shard");
    let mut masks = Vec::new();
    let mut count = 0;
    for s in shards {
        if s.dist.as_ref() == Some(&best_dist) {
            masks.extend(s.masks);
            count += s.count;
        }
    }
    trim(&mut masks, keep);
    (best_dist, masks, count)
}

/// Every configuration attaining the minimal energy, in ascending subset order.
/// At most `limit` are returned; `truncated` reports whether more exist.
pub fn enumerate_ground_configurations(
    instance: &Instance,
    limit: usize,
    config: &SolverConfig,
) -> Result<GroundEigenspace> {
    let n = instance.len();
    config.check_brute_cap(n, "ground-state enumeration")?;
    let (dist, masks, count) = with_sum_type!(instance, |w: T| {
        let (d, m, c) = minimizers::<T>(&w, limit, config);
        (d.to_big(), m, c)
    });
    Ok(GroundEigenspace {
        n,
        optimal_energy: &dist * &dist,
        configurations: masks.into_iter().map(|m| SubsetAssignment::from_mask_unchecked(n, m)).collect(),
        degeneracy: count,
        truncated: count > limit as u64,
    })
}

/// Uniform superposition over the ground configurations.
pub fn ground_state_vector(space: &GroundEigenspace) -> Result<StateVectorDescription> {
    if space.truncated {
        return Err(Error::Refused(format!(
            "the eigenspace listing was truncated ({} of {} configurations); its dimension cannot be normalized",
            space.configurations.len(),
            space.degeneracy
        )));
    }
    let dimension = space.configurations.len() as u64;
    Ok(StateVectorDescription {
        dimension,
        basis_labels: space.configurations.iter().map(SubsetAssignment::spins).collect(),
        amplitude: UniformAmplitude { dimension },
    })
}

impl GroundEigenspace {
    pub fn to_document(&self, state: Option<&StateVectorDescription>) -> Value {
        let mut doc = json!({
            "n": self.n,
            "optimal_energy": self.optimal_energy.to_string(),
            "degeneracy": self.degeneracy,
            "truncated": self.truncated,
            "configurations": self.configurations.iter().map(|c| c.indices()).collect::<Vec<_>>(),
            "spins": self.configurations.iter().map(|c| format_spins(&c.spins())).collect::<Vec<_>>(),
        });
        if let Some(s) = state {
            doc["state"] = json!({
                "dimension": s.dimension,
                "amplitude": s.amplitude.symbol(),
                "amplitude_numeric": crate::format::real(s.amplitude.to_f64()),
                "norm_squared": format!("{}/{}", s.amplitude.norm_squared().0, s.amplitude.norm_squared().1),
            });
        }
        doc
    }
}
