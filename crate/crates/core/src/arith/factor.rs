//! Prime factorization and divisor enumeration.
//!
//! Values that fit in a machine word take a `u64` path (trial division,
//! Miller-Rabin with a deterministic base set, Pollard-Brent with a `u128`
//! product). Larger values go through the same steps on `BigUint`, where the
//! primality test is probabilistic. Randomness only affects how fast a
//! cofactor splits, never the returned factorization.

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Natural;

const TRIAL_BOUND: u64 = 10_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

/// Prime factorization of a positive integer: strictly increasing primes with
/// positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization<T> {
    factors: Vec<(T, u32)>,
    value: T,
}

impl<T: Natural> Factorization<T> {
    pub fn one() -> Self {
        Self {
            factors: Vec::new(),
            value: T::one(),
        }
    }

    /// Builds a factorization from prime powers in any order; repeated primes
    /// are merged and zero exponents dropped. The caller guarantees primality.
    pub fn from_prime_powers(mut factors: Vec<(T, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(T, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        let value = merged
            .iter()
            .fold(T::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize));
        Self { factors: merged, value }
    }

    pub fn factors(&self) -> &[(T, u32)] {
        &self.factors
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    /// p-adic valuation of the value.
    pub fn valuation(&self, p: &T) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64 + 1).product()
    }

    /// Factorization of the product of two values.
    pub fn mul(&self, other: &Self) -> Self {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        Self::from_prime_powers(all)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::from_prime_powers(self.factors.iter().map(|(p, f)| (p.clone(), f * e)).collect())
    }

    /// All divisors of the value, ascending.
    pub fn divisors(&self) -> Vec<T> {
        let mut out = vec![T::one()];
        for (p, e) in &self.factors {
            let len = out.len();
            let mut pk = T::one();
            for _ in 0..*e {
                pk = pk * p.clone();
                for i in 0..len {
                    out.push(out[i].clone() * pk.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Divisors not exceeding `limit`, ascending.
    pub fn divisors_up_to(&self, limit: &T) -> Vec<T> {
        let mut out = vec![T::one()];
        if limit < &T::one() {
            return Vec::new();
        }
        for (p, e) in &self.factors {
            let len = out.len();
            for i in 0..len {
                let mut d = out[i].clone();
                for _ in 0..*e {
                    d = d * p.clone();
                    if &d > limit {
                        break;
                    }
                    out.push(d.clone());
                }
            }
        }
        out.sort();
        out
    }
}

/// All divisors of `f`'s value, ascending.
pub fn divisors<T: Natural>(f: &Factorization<T>) -> Vec<T> {
    f.divisors()
}

/// Factorizes `n`. Rejects zero.
pub fn factorize<T: Natural>(n: &T) -> Result<Factorization<T>> {
    if n.is_zero() {
        return Err(Error::NotPositive("factorization input"));
    }
    let factors: Vec<(T, u32)> = match n.to_u64() {
        Some(v) => factor_u64(v).into_iter().map(|(p, e)| (T::nat(p), e)).collect(),
        None => factor_big(n.to_big())
            .into_iter()
            .map(|(p, e)| (T::from_big(&p).expect("prime factor fits its multiple"), e))
            .collect(),
    };
    Ok(Factorization::from_prime_powers(factors))
}

/// Factorization of a value already known to be positive.
pub(crate) fn factor_positive<T: Natural>(n: &T) -> Factorization<T> {
    factorize(n).expect("positive input")
}

pub fn is_prime<T: Natural>(n: &T) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_prime_big(&n.to_big()),
    }
}

// ---------------------------------------------------------------------------
// u64 path

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &small_primes()[..12] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // deterministic for all n < 3.3e24
    'bases: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn brent_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut rng = rand::thread_rng();
    loop {
        let c = rng.gen_range(1..n);
        let mut y = rng.gen_range(0..n);
        let m = 128u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(v) = stack.pop() {
            if v < TRIAL_BOUND * TRIAL_BOUND || is_prime_u64(v) {
                out.push((v, 1));
            } else {
                let d = brent_u64(v);
                stack.push(d);
                stack.push(v / d);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// BigUint path

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &small_primes()[..50] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut rng = rand::thread_rng();
    let two = BigUint::from(2u32);
    let mut bases: Vec<BigUint> = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .map(|&b| BigUint::from(b))
        .collect();
    for _ in 0..16 {
        bases.push(rng.gen_biguint_range(&two, &n1));
    }
    'bases: for a in bases {
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn brent_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut rng = rand::thread_rng();
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_below(n);
        let m = 128u64;
        let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        let f = |v: &BigUint| (v * v + &c) % n;
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

fn factor_big(mut n: BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    for &p in small_primes() {
        if BigUint::from(p * p) > n {
            break;
        }
        if (&n % p).is_zero() {
            let mut e = 0;
            while (&n % p).is_zero() {
                n /= p;
                e += 1;
            }
            out.push((BigUint::from(p), e));
        }
    }
    let mut stack = vec![n];
    while let Some(v) = stack.pop() {
        if v.is_one() {
            continue;
        }
        if let Some(small) = v.to_u64() {
            out.extend(factor_u64(small).into_iter().map(|(p, e)| (BigUint::from(p), e)));
        } else if is_prime_big(&v) {
            out.push((v, 1));
        } else {
            let d = brent_big(&v);
            stack.push(&v / &d);
            stack.push(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        assert!(factorize(&1u64).unwrap().factors().is_empty());
        assert_eq!(factorize(&12u64).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(&90u64).unwrap().factors(), trial_division(90).as_slice());
        assert_eq!(factorize(&90u64).unwrap().factors(), &[(2, 1), (3, 2), (5, 1)]);
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(factorize(&0u64), Err(Error::NotPositive("factorization input")));
        assert!(factorize(&BigUint::zero()).is_err());
    }

    #[test]
    fn reconstructs_every_value_up_to_1e5() {
        for n in 1..=100_000u64 {
            let f = factorize(&n).unwrap();
            assert_eq!(*f.value(), n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|(p, e)| *e >= 1 && is_prime_u64(*p)));
        }
    }

    #[test]
    fn random_values_up_to_1e12() {
        let mut rng = rand::thread_rng();
        for _ in 0..1000 {
            let n: u64 = rng.gen_range(1..=1_000_000_000_000);
            let f = factorize(&n).unwrap();
            assert_eq!(*f.value(), n);
            assert!(f.factors().iter().all(|(p, _)| is_prime_u64(*p)));
        }
    }

    #[test]
    fn semiprimes_need_rho() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(&(p * q)).unwrap().factors(), &[(q, 1), (p, 1)]);
        let big = BigUint::from(p) * q * 1_000_000_009u64 * 1_000_000_009u64;
        let f = factorize(&big).unwrap();
        assert_eq!(f.value(), &big);
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.valuation(&BigUint::from(1_000_000_009u64)), 2);
        let wide = (p as u128) * (q as u128) * 3;
        assert_eq!(factorize(&wide).unwrap().factors().len(), 3);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(factorize(&1u64).unwrap().divisors(), vec![1]);
        assert_eq!(factorize(&13u64).unwrap().divisors(), vec![1, 13]);
        assert_eq!(factorize(&12u64).unwrap().divisors(), vec![1, 2, 3, 4, 6, 12]);
        let f = factorize(&360u64).unwrap();
        let brute: Vec<u64> = (1..=360).filter(|d| 360 % d == 0).collect();
        assert_eq!(f.divisors(), brute);
        assert_eq!(f.tau(), brute.len() as u64);
        let small: Vec<u64> = brute.iter().copied().filter(|&d| d <= 20).collect();
        assert_eq!(f.divisors_up_to(&20), small);
    }

    #[test]
    fn primality() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000u64 {
            assert_eq!(is_prime(&n), brute(n), "n={n}");
        }
        assert!(is_prime(&(BigUint::from(2u32).pow(127) - 1u32)));
        assert!(!is_prime(&(BigUint::from(2u32).pow(128) + 1u32)));
    }
}
