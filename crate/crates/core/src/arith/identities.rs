//! Closed-form identities used as cross-checks: the gcd-product formula for
//! the lcm of a tuple, and binomial sums over arithmetic progressions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Float, FloatConst, One, Zero};

use crate::scalar::Natural;

/// Least common multiple as `∏_{i odd} G_i / ∏_{j even} G_j`, where `G_i` is
/// the product of the gcds of all `i`-element subsets of `t`.
///
/// Intermediate products are formed in `BigUint`.
pub fn lcm_lebesgue<T: Natural>(t: &[T]) -> T {
    assert!(!t.is_empty() && t.len() <= 20, "tuple arity must be in 1..=20");
    let k = t.len();
    let big: Vec<BigUint> = t.iter().map(|v| v.to_big()).collect();
    let mut odd = BigUint::one();
    let mut even = BigUint::one();
    for mask in 1u32..(1 << k) {
        let g = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| big[i].clone())
            .reduce(|a, b| a.gcd(&b))
            .expect("nonempty subset");
        if mask.count_ones() % 2 == 1 {
            odd *= g;
        } else {
            even *= g;
        }
    }
    let (q, r) = odd.div_rem(&even);
    assert!(r.is_zero(), "gcd-product lcm formula not exact");
    T::from_big(&q).expect("lcm exceeds the scalar type")
}

/// Left fold of the pairwise lcm.
pub fn lcm_fold<T: Natural>(t: &[T]) -> T {
    t.iter().fold(T::one(), |acc, v| acc.lcm(v))
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σ_{i≥0} C(n, i·u)` by direct summation.
pub fn spaced_binomial_sum(n: u32, u: u32) -> BigUint {
    assert!(u >= 1, "spacing must be positive");
    (0..=n / u).map(|i| binomial(n, i * u)).sum()
}

/// `Σ_{i≥0} C(n, i·u + 1)`: the number of subsets of an `n`-set whose size is
/// `1 mod u` (sizes `1, u+1, 2u+1, ..`).
pub fn offset_binomial_sum(n: u32, u: u32) -> BigUint {
    assert!(u >= 1, "spacing must be positive");
    (0..)
        .map(|i| i * u + 1)
        .take_while(|&j| j <= n)
        .map(|j| binomial(n, j))
        .sum()
}

/// Floating evaluation of `(1/u) Σ_{j<u} (1 + ξ^j)^n` with `ξ = e^{2πi/u}`.
///
/// Uses `1 + e^{iθ} = 2cos(θ/2)·e^{iθ/2}`, so only the real part
/// `(2cos(πj/u))^n · cos(πjn/u)` is summed.
pub fn spaced_binomial_sum_via_roots<F: Float + FloatConst>(n: u32, u: u32) -> F {
    assert!(u >= 1, "spacing must be positive");
    let uf = F::from(u).expect("u fits");
    let nf = F::from(n).expect("n fits");
    let two = F::one() + F::one();
    let total = (0..u).fold(F::zero(), |acc, j| {
        let jf = F::from(j).expect("j fits");
        let half = F::PI() * jf / uf;
        acc + (two * half.cos()).powi(n as i32) * (half * nf).cos()
    });
    total / uf
}
