//! The integer abstraction every algorithm in this crate is written against.
//!
//! Algorithms are generic over [`Natural`]; `u64` and `u128` give fast native
//! arithmetic (overflow panics when overflow checks are on), `BigUint` gives
//! unbounded exact arithmetic.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive};

/// A nonnegative integer type usable by the enumeration algorithms.
pub trait Natural:
    Integer + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn to_big(&self) -> BigUint;

    /// Narrowing conversion; `None` when the value does not fit.
    fn from_big(v: &BigUint) -> Option<Self>;

    /// Widening conversion from a small constant.
    fn nat(v: u64) -> Self;

    /// Number of significant bits.
    fn bit_len(&self) -> u64;
}

macro_rules! impl_native {
    ($t:ty) => {
        impl Natural for $t {
            fn to_big(&self) -> BigUint {
                BigUint::from(*self)
            }

            fn from_big(v: &BigUint) -> Option<Self> {
                <$t>::try_from(v).ok()
            }

            fn nat(v: u64) -> Self {
                v as $t
            }

            fn bit_len(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }
        }
    };
}

impl_native!(u64);
impl_native!(u128);

impl Natural for BigUint {
    fn to_big(&self) -> BigUint {
        self.clone()
    }

    fn from_big(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }

    fn nat(v: u64) -> Self {
        BigUint::from(v)
    }

    fn bit_len(&self) -> u64 {
        self.bits()
    }
}

/// Converts between two `Natural` types, `None` if the value does not fit.
pub fn convert<A: Natural, B: Natural>(a: &A) -> Option<B> {
    if let Some(v) = a.to_u64() {
        return Some(B::nat(v));
    }
    B::from_big(&a.to_big())
}

/// `floor(value^(1/k))`, exact. A floating point guess seeds the search and
/// is then corrected with integer comparisons only.
pub fn integer_root(value: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root degree must be positive");
    if k == 1 || value <= &BigUint::from(1u32) {
        return value.clone();
    }
    if let Some(v) = value.to_u128() {
        return BigUint::from(integer_root_u128(v, k));
    }
    let mut lo = BigUint::from(1u32);
    let mut hi = BigUint::from(1u32) << (value.bits() / k as u64 + 1);
    // invariant: lo^k <= value < hi^k
    while &hi - &lo > BigUint::from(1u32) {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(k) <= *value {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `floor(v^(1/k))` for native values.
pub fn integer_root_u128(v: u128, k: u32) -> u128 {
    assert!(k >= 1, "root degree must be positive");
    if k == 1 || v <= 1 {
        return v;
    }
    let mut r = (v as f64).powf(1.0 / k as f64) as u128;
    let fits = |r: u128| r.checked_pow(k).is_some_and(|p| p <= v);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}
