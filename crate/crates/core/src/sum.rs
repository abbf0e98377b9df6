//! Integer type used inside the solvers.
//!
//! Weights are arbitrary precision, but almost every instance fits in `u128`
//! once doubled. The solvers are generic over [`SumInt`] and run on `u128`
//! whenever `2 * Σq` fits, falling back to `BigUint` otherwise.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub(crate) trait SumInt: Clone + Ord + Hash + Send + Sync + Debug + 'static {
    fn zero() -> Self;
    fn from_big(v: &BigUint) -> Self;
    fn to_big(&self) -> BigUint;
    fn add(&self, other: &Self) -> Self;
    /// `self - other`; callers guarantee `self >= other`.
    fn sub(&self, other: &Self) -> Self;
    fn double(&self) -> Self;
    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.sub(other)
        } else {
            other.sub(self)
        }
    }
    fn is_odd(&self) -> bool;
    /// Byte estimate for memory guards.
    fn approx_bytes(bits: u64) -> u64;
}

impl SumInt for u128 {
    fn zero() -> Self {
        0
    }
    fn from_big(v: &BigUint) -> Self {
        v.to_u128().expect("caller checked the u128 range")
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    #[inline]
    fn double(&self) -> Self {
        self << 1
    }
    #[inline]
    fn abs_diff(&self, other: &Self) -> Self {
        u128::abs_diff(*self, *other)
    }
    fn is_odd(&self) -> bool {
        self & 1 == 1
    }
    fn approx_bytes(_bits: u64) -> u64 {
        16
    }
}

impl SumInt for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(v: &BigUint) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn double(&self) -> Self {
        self << 1u32
    }
    fn is_odd(&self) -> bool {
        self.bit(0)
    }
    fn approx_bytes(bits: u64) -> u64 {
        // Vec header plus limbs.
        24 + bits.div_ceil(64) * 8
    }
}

/// True when every subset sum, doubled, fits in `u128`.
pub(crate) fn fits_u128(total: &BigUint) -> bool {
    total.bits() <= 126
}

/// Dispatches `$body` with `$w` bound to the weights as `Vec<u128>` or `Vec<BigUint>`.
macro_rules! with_sum_type {
    ($instance:expr, |$w:ident : $t:ident| $body:expr) => {{
        let inst = $instance;
        if $crate::sum::fits_u128(&inst.total()) {
            type $t = u128;
            let $w: Vec<$t> = inst
                .weights()
                .iter()
                .map(<$t as $crate::sum::SumInt>::from_big)
                .collect();
            $body
        } else {
            type $t = num_bigint::BigUint;
            let $w: Vec<$t> = inst.weights().to_vec();
            $body
        }
    }};
}
pub(crate) use with_sum_type;
