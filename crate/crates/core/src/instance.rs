//! Problem instances and the configuration energy `E(A) = (Σ_{A} q - Σ_{I\A} q)^2`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::subset::SubsetAssignment;

/// Weights `q_1..q_N` of the Ising Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    weights: Vec<BigUint>,
    label: Option<String>,
}

/// Signed discrepancy of a split and its square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyValue {
    pub discrepancy: BigInt,
    pub energy: BigUint,
}

impl EnergyValue {
    pub fn from_discrepancy(discrepancy: BigInt) -> Self {
        let magnitude = discrepancy.magnitude();
        let energy = magnitude * magnitude;
        Self { discrepancy, energy }
    }
}

impl Instance {
    /// Fails on an empty list. Zero weights are accepted and logged.
    pub fn new(weights: Vec<BigUint>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Input("an instance needs at least one weight".into()));
        }
        let zeros = weights.iter().filter(|w| w.is_zero()).count();
        if zeros > 0 {
            log::warn!("instance has {zeros} zero weight(s); weights are expected to be positive");
        }
        Ok(Self { weights, label: None })
    }

    pub fn from_u64s(weights: &[u64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| BigUint::from(w)).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.weights.iter().sum()
    }

    /// 1-based positions of zero weights.
    pub fn zero_weight_indices(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    fn check_subset(&self, subset: &SubsetAssignment) -> Result<()> {
        if subset.universe() != self.len() {
            return Err(Error::Input(format!(
                "subset is over 1..={} but the instance has {} weights",
                subset.universe(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// Exact discrepancy and energy of the configuration whose up-spins are `subset`.
pub fn energy(instance: &Instance, subset: &SubsetAssignment) -> Result<EnergyValue> {
    instance.check_subset(subset)?;
    let up: BigUint = subset.iter_zero_based().map(|i| &instance.weights[i]).sum();
    let total = instance.total();
    let discrepancy = BigInt::from(up) * 2 - BigInt::from(total);
    Ok(EnergyValue::from_discrepancy(discrepancy))
}

/// `I \ A`; has the same energy as `A`.
pub fn complement(instance: &Instance, subset: &SubsetAssignment) -> Result<SubsetAssignment> {
    instance.check_subset(subset)?;
    Ok(subset.complement())
}

fn random_weight(rng: &mut ChaCha8Rng, bits: u32) -> BigUint {
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u32 - 1);
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random::<u32>()).collect();
        if top_bits < 32 {
            digits[words - 1] &= (1u32 << top_bits) - 1;
        }
        let w = BigUint::new(digits);
        if !w.is_zero() {
            return w;
        }
    }
}

/// `n` weights uniform on `[1, 2^bits - 1]`, reproducible from `seed`.
pub fn generate_instance(n: usize, bits: u32, seed: u64) -> Result<Instance> {
    if n == 0 || bits == 0 {
        return Err(Error::Input("generate_instance needs n >= 1 and bits >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..n).map(|_| random_weight(&mut rng, bits)).collect();
    Ok(Instance::new(weights)?.with_label(format!("random n={n} bits={bits} seed={seed}")))
}

/// An instance with a known perfect split: `n - 1` random weights are dealt to
/// two sides at random and one more weight equal to the side difference is
/// appended. Deals that happen to balance exactly are redrawn so every weight
/// stays positive.
pub fn generate_planted_instance(n: usize, bits: u32, seed: u64) -> Result<Instance> {
    if n < 2 || bits == 0 {
        return Err(Error::Input("a planted instance needs n >= 2 and bits >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    loop {
        let mut weights: Vec<BigUint> = (0..n - 1).map(|_| random_weight(&mut rng, bits)).collect();
        let mut side = BigInt::zero();
        for w in &weights {
            if rng.random::<bool>() {
                side += BigInt::from(w.clone());
            } else {
                side -= BigInt::from(w.clone());
            }
        }
        if side.is_zero() {
            continue;
        }
        weights.push(side.abs().to_biguint().expect("non-negative"));
        return Ok(Instance::new(weights)?.with_label(format!("planted n={n} bits={bits} seed={seed}")));
    }
}
