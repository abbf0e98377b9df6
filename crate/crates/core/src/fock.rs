//! Zero-energy Fock states of `H = (n1 - n2 - n3)^2` and Fibonacci recognition.
//!
//! Two recognizers are provided: generating the sequence until it passes `n`,
//! and the floor/ceiling test on `n(1 + p_k/q_k) ± 1/n` with a golden-ratio
//! convergent `p_k/q_k` of `φ - 1`. All arithmetic is exact.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Parallelism;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockTriple {
    pub n1: BigUint,
    pub n2: BigUint,
    pub n3: BigUint,
}

impl FockTriple {
    pub fn new(n1: impl Into<BigUint>, n2: impl Into<BigUint>, n3: impl Into<BigUint>) -> Self {
        Self { n1: n1.into(), n2: n2.into(), n3: n3.into() }
    }

    pub fn is_vacuum(&self) -> bool {
        self.n1.is_zero() && self.n2.is_zero() && self.n3.is_zero()
    }

    /// `(n1 - n2 - n3)^2`.
    pub fn energy(&self) -> BigUint {
        let rest = &self.n2 + &self.n3;
        let d = if self.n1 >= rest { &self.n1 - &rest } else { &rest - &self.n1 };
        &d * &d
    }

    pub fn particles(&self) -> BigUint {
        &self.n1 + &self.n2 + &self.n3
    }

    fn to_strings(&self) -> [String; 3] {
        [self.n1.to_string(), self.n2.to_string(), self.n3.to_string()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockKind {
    Vacuum,
    Fibonacci,
    NonFibonacci,
}

impl FockKind {
    pub fn name(self) -> &'static str {
        match self {
            FockKind::Vacuum => "vacuum",
            FockKind::Fibonacci => "fibonacci",
            FockKind::NonFibonacci => "non-fibonacci",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockClassification {
    pub kind: FockKind,
    /// Sequence positions of `(n1, n2, n3)` for Fibonacci states.
    pub fibonacci_indices: Option<(u64, u64, u64)>,
}

/// All triples with `n1 = n2 + n3` and `n1 + n2 + n3 = total`, by ascending `n2`.
/// Empty for odd `total`.
pub fn enumerate_zero_eigenspace(total: u64) -> Vec<FockTriple> {
    if total % 2 == 1 {
        return Vec::new();
    }
    let half = total / 2;
    (0..=half).map(|n2| FockTriple::new(half, n2, half - n2)).collect()
}

/// Membership by brute force, with `F_0 = 0, F_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibMembership {
    pub is_fibonacci: bool,
    /// Smallest `i` with `F_i = n`.
    pub index: Option<u64>,
}

/// Generates `0, 1, 1, 2, 3, 5, ...` until a term reaches `n`.
pub fn fib_brute_force(n: &BigUint) -> FibMembership {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    let mut i = 0u64;
    while a < *n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
        i += 1;
    }
    if a == *n {
        FibMembership { is_fibonacci: true, index: Some(i) }
    } else {
        FibMembership { is_fibonacci: false, index: None }
    }
}

/// `p_k / q_k`, the `k`-th convergent of `[0; 1, 1, 1, ...] = φ - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: u64,
    pub p: BigUint,
    pub q: BigUint,
}

/// Successive convergents from `k = 1`: `p_k = q_{k-1}`,
/// `q_k = q_{k-1} + q_{k-2}` with `p_1 = q_1 = 1` and `q_0 = 1`.
#[derive(Clone, Debug)]
pub struct Convergents {
    index: u64,
    prev_q: BigUint,
    q: BigUint,
}

impl Default for Convergents {
    fn default() -> Self {
        Self { index: 0, prev_q: BigUint::zero(), q: BigUint::one() }
    }
}

impl Iterator for Convergents {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        // With q_{-1} = 0 the first step yields (p_1, q_1) = (q_0, q_0) = (1, 1).
        let next_q = &self.q + &self.prev_q;
        let p = std::mem::replace(&mut self.q, next_q);
        self.prev_q = p.clone();
        self.index += 1;
        Some(Convergent { index: self.index, p, q: self.q.clone() })
    }
}

pub fn golden_convergent(k: u64) -> Result<Convergent> {
    if k == 0 {
        return Err(Error::Input("convergent index starts at 1".into()));
    }
    Ok(Convergents::default().nth((k - 1) as usize).expect("infinite iterator"))
}

/// Checks `|(φ - 1) - p/q| < 1/(√5 q^2)` exactly.
///
/// With `t = q + 2p` the left side is `|√5 q - t| / (2q)`, and
/// `√5 q - t = (5q^2 - t^2) / (√5 q + t)`. Writing `D = 5q^2 - t^2` the
/// inequality becomes `√5 q (|D| - 2) < 2t`, true outright when `|D| <= 2`
/// and otherwise equivalent to `5 q^2 (|D| - 2)^2 < 4 t^2`.
pub fn convergent_bound_holds(c: &Convergent) -> bool {
    let q2 = &c.q * &c.q;
    let t = &c.q + (&c.p << 1u32);
    let t2 = &t * &t;
    let five_q2 = &q2 * 5u32;
    let abs_d = if five_q2 >= t2 { &five_q2 - &t2 } else { &t2 - &five_q2 };
    let two = BigUint::from(2u32);
    if abs_d <= two {
        return true;
    }
    let excess = abs_d - two;
    five_q2 * &excess * &excess < t2 * 4u32
}

pub fn verify_convergent_bound(k: u64) -> Result<bool> {
    Ok(convergent_bound_holds(&golden_convergent(k)?))
}

/// Precision rule for the floor/ceiling test: the smallest convergent with
/// `q_k^2 >= scale * n^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinetConfig {
    pub scale: u32,
}

impl Default for BinetConfig {
    fn default() -> Self {
        Self { scale: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinetVerdict {
    pub is_fibonacci: bool,
    pub convergent: Convergent,
    /// `⌊n(1 + p/q) + 1/n⌋`.
    pub floor_upper: BigUint,
    /// `⌈n(1 + p/q) - 1/n⌉`.
    pub ceil_lower: BigUint,
}

/// Evaluates the floor/ceiling test with a given convergent. Over the common
/// denominator `q n` the two bounds are `(n^2 (q + p) ± q) / (q n)`. `n` is
/// declared Fibonacci when the window holds an integer, `floor >= ceil`; for
/// `n >= 2` the window is at most one wide and this is the equality
/// `floor == ceil`, while for `n = 1` it contains both 1 and 2.
pub fn binet_with_convergent(n: &BigUint, convergent: &Convergent) -> Result<BinetVerdict> {
    if n.is_zero() {
        return Err(Error::Input("the floor/ceiling test divides by n; use brute force for 0".into()));
    }
    let (p, q) = (&convergent.p, &convergent.q);
    let center = n * n * (q + p);
    let den = q * n;
    let floor_upper = (&center + q) / &den;
    let ceil_lower = (&center - q).div_ceil(&den);
    Ok(BinetVerdict {
        is_fibonacci: floor_upper >= ceil_lower,
        convergent: convergent.clone(),
        floor_upper,
        ceil_lower,
    })
}

/// Floor/ceiling recognizer with a shared convergent table.
#[derive(Clone, Debug)]
pub struct BinetRecognizer {
    config: BinetConfig,
    /// `(convergent, q^2)` for k = 1..=table length.
    table: Vec<(Convergent, BigUint)>,
}

impl BinetRecognizer {
    pub const TABLE_LEN: usize = 256;

    pub fn new(config: BinetConfig) -> Self {
        let table = Convergents::default()
            .take(Self::TABLE_LEN)
            .map(|c| {
                let q2 = &c.q * &c.q;
                (c, q2)
            })
            .collect();
        Self { config, table }
    }

    pub fn config(&self) -> BinetConfig {
        self.config
    }

    /// Smallest convergent satisfying the precision rule for `n`.
    pub fn convergent_for(&self, n: &BigUint) -> Convergent {
        let need = n * n * self.config.scale;
        let pos = self.table.partition_point(|(_, q2)| *q2 < need);
        if let Some((c, _)) = self.table.get(pos) {
            return c.clone();
        }
        // Past the table: keep iterating from its last entry.
        let mut it = Convergents::default().skip(self.table.len());
        loop {
            let c = it.next().expect("infinite iterator");
            if &c.q * &c.q >= need {
                return c;
            }
        }
    }

    pub fn recognize(&self, n: &BigUint) -> Result<BinetVerdict> {
        if n.is_zero() {
            return Err(Error::Input("the floor/ceiling test divides by n; use brute force for 0".into()));
        }
        binet_with_convergent(n, &self.convergent_for(n))
    }

    /// `n` in `range` where this recognizer and brute force disagree.
    pub fn disagreements(&self, range: std::ops::RangeInclusive<u64>, parallelism: Parallelism) -> Vec<u64> {
        let (lo, hi) = (*range.start().max(&1), *range.end());
        if hi < lo {
            return Vec::new();
        }
        let shards = 64usize;
        let span = (hi - lo) / shards as u64 + 1;
        parallelism
            .map_shards(shards, |s| {
                let start = lo + s as u64 * span;
                let end = (start + span - 1).min(hi);
                let mut bad = Vec::new();
                if start > hi {
                    return bad;
                }
                let fibs = FibTable::up_to(end);
                for n in start..=end {
                    let big = BigUint::from(n);
                    let v = self.recognize(&big).expect("n >= 1");
                    if v.is_fibonacci != fibs.contains(n) {
                        bad.push(n);
                    }
                }
                bad
            })
            .into_iter()
            .flatten()
            .collect()
    }
}

/// An `n` misread by the floor/ceiling test under an under-sized convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionCounterexample {
    pub n: u64,
    pub convergent: Convergent,
    pub is_fibonacci: bool,
}

/// Searches `1..=limit` for the first `n` that the floor/ceiling test
/// misclassifies when given the largest convergent with `q^2 < n/√5`
/// (checked as `5 q^4 < n^2`).
pub fn find_precision_counterexample(limit: u64) -> Option<PrecisionCounterexample> {
    let convergents: Vec<(Convergent, BigUint)> = Convergents::default()
        .take_while(|c| c.q <= BigUint::from(limit))
        .map(|c| {
            let q2 = &c.q * &c.q;
            (c, &q2 * &q2 * 5u32)
        })
        .collect();
    let fibs = FibTable::up_to(limit);
    (1..=limit).find_map(|n| {
        let big = BigUint::from(n);
        let n2 = &big * &big;
        let pos = convergents.partition_point(|(_, five_q4)| *five_q4 < n2);
        let (c, _) = convergents.get(pos.checked_sub(1)?)?;
        let v = binet_with_convergent(&big, c).expect("n >= 1");
        let truth = fibs.contains(n);
        (v.is_fibonacci != truth).then(|| PrecisionCounterexample { n, convergent: c.clone(), is_fibonacci: truth })
    })
}

/// Fibonacci numbers up to a bound, for fast membership sweeps.
struct FibTable(Vec<u64>);

impl FibTable {
    fn up_to(limit: u64) -> Self {
        let mut v = vec![0u64, 1];
        while let Some(next) = v[v.len() - 1].checked_add(v[v.len() - 2]) {
            if next > limit {
                break;
            }
            v.push(next);
        }
        FibTable(v)
    }

    fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }
}

fn default_recognizer() -> &'static BinetRecognizer {
    static RECOGNIZER: OnceLock<BinetRecognizer> = OnceLock::new();
    RECOGNIZER.get_or_init(|| BinetRecognizer::new(BinetConfig::default()))
}

/// Floor/ceiling recognizer with the default precision rule.
pub fn fib_binet_test(n: &BigUint) -> Result<BinetVerdict> {
    default_recognizer().recognize(n)
}

/// Smallest `i` with `F_i = a` and `F_{i+1} = b`.
fn adjacent_position(a: &BigUint, b: &BigUint) -> Option<u64> {
    let (mut x, mut y) = (BigUint::zero(), BigUint::one());
    let mut i = 0u64;
    while x <= *a {
        if x == *a && y == *b {
            return Some(i);
        }
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
        i += 1;
    }
    None
}

/// Vacuum for `(0, 0, 0)`. Fibonacci when `n1 = n2 + n3` and `{n2, n3}` sit at
/// adjacent sequence positions in either order, so `n1` is the following
/// term. Everything else is non-Fibonacci.
pub fn classify_fock_state(t: &FockTriple) -> FockClassification {
    if t.is_vacuum() {
        return FockClassification { kind: FockKind::Vacuum, fibonacci_indices: None };
    }
    if t.n1 == &t.n2 + &t.n3 {
        let swapped = t.n2 > t.n3;
        let (lo, hi) = if swapped { (&t.n3, &t.n2) } else { (&t.n2, &t.n3) };
        if let Some(i) = adjacent_position(lo, hi) {
            let (i2, i3) = if swapped { (i + 1, i) } else { (i, i + 1) };
            return FockClassification {
                kind: FockKind::Fibonacci,
                fibonacci_indices: Some((i + 2, i2, i3)),
            };
        }
    }
    FockClassification { kind: FockKind::NonFibonacci, fibonacci_indices: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenspaceDecomposition {
    pub total_particles: u64,
    pub fibonacci_states: Vec<FockTriple>,
    pub non_fibonacci_states: Vec<FockTriple>,
    pub vacuum_present: bool,
}

impl EigenspaceDecomposition {
    pub fn len(&self) -> usize {
        self.fibonacci_states.len() + self.non_fibonacci_states.len() + usize::from(self.vacuum_present)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_document(&self) -> Value {
        let states: Vec<Value> = self
            .fibonacci_states
            .iter()
            .chain(&self.non_fibonacci_states)
            .chain(self.vacuum_present.then(|| FockTriple::new(0u32, 0u32, 0u32)).as_ref())
            .map(|t| {
                let c = classify_fock_state(t);
                json!({
                    "triple": t.to_strings(),
                    "classification": c.kind.name(),
                    "fibonacci_indices": c.fibonacci_indices.map(|(a, b, d)| vec![a, b, d]),
                })
            })
            .collect();
        json!({
            "total_particles": self.total_particles,
            "vacuum_present": self.vacuum_present,
            "fibonacci": self.fibonacci_states.iter().map(FockTriple::to_strings).collect::<Vec<_>>(),
            "non_fibonacci": self.non_fibonacci_states.iter().map(FockTriple::to_strings).collect::<Vec<_>>(),
            "states": states,
            "counts": {
                "fibonacci": self.fibonacci_states.len(),
                "non_fibonacci": self.non_fibonacci_states.len(),
                "vacuum": usize::from(self.vacuum_present),
                "total": self.len(),
            },
        })
    }
}

/// Splits the zero eigenspace for `total` particles by [`classify_fock_state`].
pub fn decompose_eigenspace(total: u64) -> EigenspaceDecomposition {
    let mut out = EigenspaceDecomposition {
        total_particles: total,
        fibonacci_states: Vec::new(),
        non_fibonacci_states: Vec::new(),
        vacuum_present: false,
    };
    for t in enumerate_zero_eigenspace(total) {
        match classify_fock_state(&t).kind {
            FockKind::Vacuum => out.vacuum_present = true,
            FockKind::Fibonacci => out.fibonacci_states.push(t),
            FockKind::NonFibonacci => out.non_fibonacci_states.push(t),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn t(a: u64, b: u64, c: u64) -> FockTriple {
        FockTriple::new(a, b, c)
    }

    #[test]
    fn zero_eigenspace_examples() {
        assert_eq!(enumerate_zero_eigenspace(0), vec![t(0, 0, 0)]);
        assert!(enumerate_zero_eigenspace(3).is_empty());
        assert_eq!(enumerate_zero_eigenspace(4), vec![t(2, 0, 2), t(2, 1, 1), t(2, 2, 0)]);
        for s in enumerate_zero_eigenspace(40) {
            assert!(s.energy().is_zero());
            assert_eq!(s.particles(), big(40));
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(fib_brute_force(&big(0)), FibMembership { is_fibonacci: true, index: Some(0) });
        assert_eq!(fib_brute_force(&big(1)).index, Some(1));
        assert_eq!(fib_brute_force(&big(8)).index, Some(6));
        assert!(!fib_brute_force(&big(9)).is_fibonacci);
        assert_eq!(fib_brute_force(&big(832_040)).index, Some(30));
    }

    #[test]
    fn convergent_examples() {
        let c = |k| {
            let c = golden_convergent(k).unwrap();
            (c.p, c.q)
        };
        assert_eq!(c(1), (big(1), big(1)));
        assert_eq!(c(2), (big(1), big(2)));
        assert_eq!(c(5), (big(5), big(8)));
        assert!(golden_convergent(0).is_err());
    }

    #[test]
    fn convergents_are_consecutive_fibonacci_numbers() {
        let mut fib = vec![big(0), big(1)];
        while fib.len() < 70 {
            let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
            fib.push(next);
        }
        for c in Convergents::default().take(60) {
            let k = c.index as usize;
            assert_eq!(c.p, fib[k]);
            assert_eq!(c.q, fib[k + 1]);
            assert!(c.p.gcd(&c.q).is_one());
        }
    }

    #[test]
    fn binet_examples() {
        assert!(fib_binet_test(&big(8)).unwrap().is_fibonacci);
        assert!(!fib_binet_test(&big(9)).unwrap().is_fibonacci);
        assert!(fib_binet_test(&big(832_040)).unwrap().is_fibonacci);
        assert!(fib_binet_test(&big(1)).unwrap().is_fibonacci);
        assert!(matches!(fib_binet_test(&big(0)).unwrap_err(), Error::Input(_)));
    }

    #[test]
    fn binet_equality_form_holds_from_two_up() {
        for n in 2..5000u64 {
            let v = fib_binet_test(&big(n)).unwrap();
            assert_eq!(v.is_fibonacci, v.floor_upper == v.ceil_lower, "n = {n}");
        }
        let one = fib_binet_test(&big(1)).unwrap();
        assert_eq!((one.ceil_lower, one.floor_upper), (big(1), big(2)));
    }

    #[test]
    fn precision_rule_picks_the_smallest_convergent() {
        let r = BinetRecognizer::new(BinetConfig::default());
        for n in [1u64, 2, 10, 1000, 999_983] {
            let c = r.convergent_for(&big(n));
            assert!(&c.q * &c.q >= big(10 * n * n));
            if c.index > 1 {
                let prev = golden_convergent(c.index - 1).unwrap();
                assert!(&prev.q * &prev.q < big(10 * n * n));
            }
        }
        // Beyond the precomputed table.
        let huge = BigUint::from(10u32).pow(60);
        let c = r.convergent_for(&huge);
        assert!(c.index as usize > BinetRecognizer::TABLE_LEN);
        assert!(!r.recognize(&huge).unwrap().is_fibonacci);
    }

    #[test]
    fn sweep_agrees_with_brute_force() {
        let r = BinetRecognizer::new(BinetConfig::default());
        assert!(r.disagreements(1..=20_000, Parallelism::default()).is_empty());
        assert!(r.disagreements(1..=5_000, Parallelism::Sequential).is_empty());
    }

    #[test]
    fn linear_precision_rule_is_not_enough() {
        // q_k^2 >= 10 n misreads large Fibonacci numbers.
        let n = big(832_040);
        let mut it = Convergents::default();
        let c = loop {
            let c = it.next().unwrap();
            if &c.q * &c.q >= &n * 10u32 {
                break c;
            }
        };
        assert!(!binet_with_convergent(&n, &c).unwrap().is_fibonacci);
    }

    #[test]
    fn starved_convergent_misclassifies() {
        let ce = find_precision_counterexample(1_000_000).expect("counterexample");
        let c = &ce.convergent;
        assert!(&c.q * &c.q * &c.q * &c.q * 5u32 < BigUint::from(ce.n) * ce.n);
        assert_eq!(fib_brute_force(&big(ce.n)).is_fibonacci, ce.is_fibonacci);
        assert_ne!(binet_with_convergent(&big(ce.n), c).unwrap().is_fibonacci, ce.is_fibonacci);
    }

    /// `|(φ-1) - p/q| q^2 = (1 - (-1)^(k+1) φ^(-2(k+1))) / √5`: below `1/√5`
    /// exactly when `k` is odd.
    #[test]
    fn convergent_bound_holds_for_odd_indices_only() {
        for k in 1..=200u64 {
            assert_eq!(verify_convergent_bound(k).unwrap(), k % 2 == 1, "k = {k}");
        }
    }

    #[test]
    fn bound_check_agrees_with_floating_point_for_small_k() {
        let frac = (5f64.sqrt() - 1.0) / 2.0;
        for k in 1..=12u64 {
            let c = golden_convergent(k).unwrap();
            let (p, q) = (c.p.to_string().parse::<f64>().unwrap(), c.q.to_string().parse::<f64>().unwrap());
            let lhs = (frac - p / q).abs();
            let rhs = 1.0 / (5f64.sqrt() * q * q);
            assert_eq!(lhs < rhs, convergent_bound_holds(&c), "k = {k}");
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_fock_state(&t(0, 0, 0)).kind, FockKind::Vacuum);
        let c = classify_fock_state(&t(2, 1, 1));
        assert_eq!(c.kind, FockKind::Fibonacci);
        assert_eq!(c.fibonacci_indices, Some((3, 1, 2)));
        assert_eq!(classify_fock_state(&t(2, 0, 2)).kind, FockKind::NonFibonacci);
        assert_eq!(classify_fock_state(&t(8, 5, 3)).fibonacci_indices, Some((6, 5, 4)));
        assert_eq!(classify_fock_state(&t(1, 0, 1)).kind, FockKind::Fibonacci);
        assert_eq!(classify_fock_state(&t(13, 5, 3)).kind, FockKind::NonFibonacci);
        assert_eq!(classify_fock_state(&t(7, 2, 5)).kind, FockKind::NonFibonacci);
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_eigenspace(4);
        assert_eq!(d.fibonacci_states, vec![t(2, 1, 1)]);
        assert_eq!(d.non_fibonacci_states, vec![t(2, 0, 2), t(2, 2, 0)]);
        assert!(!d.vacuum_present);

        let d = decompose_eigenspace(0);
        assert!(d.vacuum_present && d.fibonacci_states.is_empty() && d.non_fibonacci_states.is_empty());

        let d = decompose_eigenspace(16);
        assert!(d.fibonacci_states.contains(&t(8, 3, 5)));
        assert!(d.fibonacci_states.contains(&t(8, 5, 3)));
        assert_eq!(d.fibonacci_states.len(), 2);
    }

    #[test]
    fn decomposition_is_complete_and_disjoint() {
        for n in 0..=200u64 {
            let d = decompose_eigenspace(n);
            let expected = if n % 2 == 0 { n / 2 + 1 } else { 0 };
            assert_eq!(d.len() as u64, expected);
            assert!(d.fibonacci_states.iter().all(|s| !d.non_fibonacci_states.contains(s)));
        }
    }

    fn is_square(x: &BigUint) -> bool {
        let r = x.sqrt();
        &r * &r == *x
    }

    proptest! {
        #[test]
        fn recognizers_agree_on_large_n(n in 1u64..=1_000_000_000_000_000_000) {
            let n = big(n);
            let brute = fib_brute_force(&n).is_fibonacci;
            prop_assert_eq!(fib_binet_test(&n).unwrap().is_fibonacci, brute);
            let five_n2 = &n * &n * 5u32;
            let square = is_square(&(&five_n2 + 4u32)) || is_square(&(&five_n2 - 4u32));
            prop_assert_eq!(square, brute);
        }

        #[test]
        fn fibonacci_neighbourhoods(k in 2u64..90, delta in -3i64..=3) {
            let f = golden_convergent(k).unwrap().q;
            let f = i128::try_from(&f).unwrap() + i128::from(delta);
            if f > 0 {
                let n = BigUint::try_from(f).unwrap();
                prop_assert_eq!(fib_binet_test(&n).unwrap().is_fibonacci, fib_brute_force(&n).is_fibonacci);
            }
        }
    }
}
