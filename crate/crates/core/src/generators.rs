//! Explicit solution families with many members.
//!
//! * [`gen_composite`]: `1/n'` for `n'` the product of the first `r` primes,
//!   taking `a1 = n' + d` for every divisor `d` and splitting the remainder
//!   along every coprime divisor pair.
//! * [`gen_shifted_divisor`]: the same split for an arbitrary reduced `m/n`,
//!   using the divisors `d` with `n + d = 0 (mod m)`.
//! * [`gen_prime_family`]: solutions of `m/p` with pattern `(1, p, p)` for a
//!   prime `p` in a prescribed residue class, one per admissible subset of a
//!   set of auxiliary primes.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::factor::{factor_positive, is_prime, is_prime_u64};
use crate::arith::identities::{offset_binomial_sum, spaced_binomial_sum};
use crate::arith::stats::order_mod;
use crate::error::{Error, Result};
use crate::fraction::{Fraction, Solution};
use crate::scalar::Natural;

/// Largest `r` accepted by [`CompositeFamilySpec::new`].
pub const MAX_COMPOSITE_PRIMES: u32 = 12;

/// Largest auxiliary prime count accepted by [`gen_prime_family`].
pub const MAX_FAMILY_PRIMES: usize = 24;

/// The first `r` primes.
pub fn first_primes(r: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime_u64(p)).take(r).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeFamilySpec<T> {
    pub r: u32,
    pub m: T,
    /// product of the first `r` primes
    pub n_prime: T,
    /// `m · n_prime`
    pub n: T,
}

impl<T: Natural> CompositeFamilySpec<T> {
    pub fn new(r: u32, m: T) -> Result<Self> {
        if r > MAX_COMPOSITE_PRIMES {
            return Err(Error::OutOfRange(format!(
                "r = {r} exceeds the supported maximum {MAX_COMPOSITE_PRIMES}"
            )));
        }
        if m.is_zero() {
            return Err(Error::NotPositive("multiplier"));
        }
        let n_prime: BigUint = first_primes(r as usize).into_iter().map(BigUint::from).product();
        // the largest denominator is below n'·(n'+1)·2n'
        let largest = &n_prime * (&n_prime + 1u32) * (&n_prime * 2u32) * m.to_big();
        if T::from_big(&largest).is_none() {
            return Err(Error::OutOfRange(format!(
                "r = {r} needs integers wider than the selected type"
            )));
        }
        let n_prime = T::from_big(&n_prime).expect("checked above");
        Ok(Self {
            r,
            n: m.clone() * n_prime.clone(),
            m,
            n_prime,
        })
    }

    pub fn fraction(&self) -> Fraction<T> {
        Fraction::new(self.m.clone(), self.n.clone()).expect("positive")
    }

    /// `ceil(2^r · 3^r / 2)`, the number of triples the family is guaranteed
    /// to contain.
    pub fn certified_count(&self) -> BigUint {
        let six = BigUint::from(6u32).pow(self.r);
        (six + 1u32) / 2u32
    }

    /// The exact family size: `2^r` shifts times `(3^r + 1)/2` unordered
    /// coprime pairs.
    pub fn family_size(&self) -> BigUint {
        BigUint::from(2u32).pow(self.r) * ((BigUint::from(3u32).pow(self.r) + 1u32) / 2u32)
    }
}

/// Calls `emit` with `(d1, d2)` for every unordered pair `d1 <= d2` of
/// coprime divisors.
fn coprime_pairs<T: Natural>(divisors: &[T], mut emit: impl FnMut(&T, &T)) {
    for (i, d1) in divisors.iter().enumerate() {
        for d2 in &divisors[i..] {
            if d1.gcd(d2).is_one() {
                emit(d1, d2);
            }
        }
    }
}

/// `1/N = 1/(N(d1+d2)/d1) + 1/(N(d1+d2)/d2)` for `d1, d2 | N`.
fn split<T: Natural>(big_n: &T, d1: &T, d2: &T) -> (T, T) {
    let s = d1.clone() + d2.clone();
    (big_n.clone() / d1.clone() * s.clone(), big_n.clone() / d2.clone() * s)
}

/// Streams the composite family for `spec`, one sorted triple at a time.
pub fn for_each_composite<T: Natural>(spec: &CompositeFamilySpec<T>, mut emit: impl FnMut(Solution<T>)) {
    let n1 = &spec.n_prime;
    let divs = factor_positive(n1).divisors();
    for d in &divs {
        let a1 = n1.clone() + d.clone();
        let big_n = n1.clone() * (n1.clone() / d.clone() + T::one());
        coprime_pairs(&divs, |d1, d2| {
            let (a2, a3) = split(&big_n, d1, d2);
            emit(Solution::new(vec![a1.clone(), a2, a3]));
        });
    }
}

#[derive(Debug, Clone)]
pub struct CompositeFamily<T> {
    pub n: T,
    pub solutions: BTreeSet<Solution<T>>,
    pub certified_count: BigUint,
}

/// The whole composite family, every member checked against `m/n`.
pub fn gen_composite<T: Natural>(spec: &CompositeFamilySpec<T>) -> CompositeFamily<T> {
    let target = spec.fraction();
    let mut solutions = BTreeSet::new();
    for_each_composite(spec, |s| {
        assert!(s.sums_to(&target), "composite member {s} does not sum to {target}");
        solutions.insert(s);
    });
    debug_assert_eq!(BigUint::from(solutions.len()), spec.family_size());
    CompositeFamily {
        n: spec.n.clone(),
        solutions,
        certified_count: spec.certified_count(),
    }
}

/// Triples `((n+d)/m, ..)` for the divisors `d | n` with `n + d = 0 (mod m)`,
/// the remainder `1/(n·((n/d+1)/m))` split along every coprime divisor pair
/// of `n`. Works on `f` in lowest terms.
pub fn gen_shifted_divisor<T: Natural>(f: &Fraction<T>) -> Result<BTreeSet<Solution<T>>> {
    let f = f.reduced();
    let (m, n) = (f.m(), f.n());
    let nb = n.to_big();
    let largest = &nb * (&nb + 1u32) * (&nb + 1u32);
    if T::from_big(&largest).is_none() {
        return Err(Error::OutOfRange(format!(
            "{f} needs integers wider than the selected type"
        )));
    }
    let divs = factor_positive(n).divisors();
    let mut out = BTreeSet::new();
    for d in &divs {
        let Some(a1) = exact(n.clone() + d.clone(), m) else {
            continue;
        };
        // gcd(d, m) = 1, so m also divides n/d + 1
        let big_n = n.clone() * exact(n.clone() / d.clone() + T::one(), m).expect("m | n/d + 1");
        coprime_pairs(&divs, |d1, d2| {
            let (a2, a3) = split(&big_n, d1, d2);
            let s = Solution::new(vec![a1.clone(), a2, a3]);
            assert!(s.sums_to(&f), "shifted member {s} does not sum to {f}");
            out.insert(s);
        });
    }
    Ok(out)
}

fn exact<T: Natural>(a: T, b: &T) -> Option<T> {
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFamilySpec {
    pub m: u64,
    pub e: u64,
    pub f: u64,
    /// the index with `k = (f − e) + j·f`
    pub j: u64,
    pub k: u64,
    /// `lcm(m, f)`
    pub big_m: u64,
    pub q_list: Vec<u64>,
    pub q_product: BigUint,
    pub p: BigUint,
    /// order of `−M/m` modulo `k`
    pub ord: u64,
}

#[derive(Debug, Clone)]
pub struct PrimeFamily<T> {
    pub spec: PrimeFamilySpec,
    pub solutions: BTreeSet<Solution<T>>,
    /// `Σ_{i≥0} C(r, i·ord + 1)`
    pub admissible_subsets: BigUint,
}

/// `(j, k)` for the smallest `j` in `0..m/gcd(m,f)` with
/// `k = (f − e) + j·f = 1 (mod m/gcd(m,f))`. Needs `m, f >= 1` and
/// `gcd(e, f) = 1`.
pub fn prime_family_shift(m: u64, e: u64, f: u64) -> (u64, u64) {
    let modulus = m / m.gcd(&f);
    let base = f - e % f;
    let j = (0..modulus)
        .find(|j| (base + j * f) % modulus == 1 % modulus)
        .expect("f is invertible modulo m/gcd(m, f)");
    (j, base + j * f)
}

/// Family of solutions of `m/p` for the smallest prime `p = −k (mod Q·M)`,
/// where `Q` is the product of the first `r` primes `q > M` with
/// `q = −M/m (mod k)`. Each subset `S` of those primes with
/// `|S| = 1 (mod ord)` gives
///
/// ```text
/// x12 = M/m, x13 = ∏S, x23 = (∏S + M/m)/k, x123 = (p + k)/(M·∏S)
/// ```
///
/// and the triple `(x12·x13·x123, p·x12·x23·x123, p·x13·x23·x123)`.
///
/// The prime is searched up to `search_limit`, by default `(Q·M)^3`.
pub fn gen_prime_family<T: Natural>(
    m: u64,
    e: u64,
    f: u64,
    r: usize,
    search_limit: Option<&BigUint>,
) -> Result<PrimeFamily<T>> {
    if m == 0 {
        return Err(Error::NotPositive("numerator"));
    }
    if f == 0 {
        return Err(Error::NotPositive("modulus"));
    }
    if r == 0 {
        return Err(Error::NotPositive("prime count"));
    }
    if r > MAX_FAMILY_PRIMES {
        return Err(Error::OutOfRange(format!(
            "r = {r} exceeds the supported maximum {MAX_FAMILY_PRIMES}"
        )));
    }
    if e.gcd(&f) != 1 {
        return Err(Error::NotCoprime {
            a: e.to_string(),
            q: f.to_string(),
        });
    }
    let big_m = m.lcm(&f);
    let unit = big_m / m;
    let (j, k) = prime_family_shift(m, e, f);
    debug_assert_eq!(big_m.gcd(&k), 1);
    let ord = order_mod(-(unit as i64), k)?;

    let residue = (k - unit % k) % k;
    let q_list: Vec<u64> = (big_m + 1..)
        .filter(|q| q % k == residue && is_prime_u64(*q))
        .take(r)
        .collect();
    let q_product: BigUint = q_list.iter().map(|&q| BigUint::from(q)).product();
    let modulus = &q_product * big_m;
    let limit = search_limit.cloned().unwrap_or_else(|| modulus.pow(3));
    let mut p = &modulus - k;
    while !is_prime(&p) {
        p += &modulus;
        if p > limit {
            return Err(Error::SearchExhausted {
                limit: limit.to_string(),
            });
        }
    }
    if p > limit {
        return Err(Error::SearchExhausted {
            limit: limit.to_string(),
        });
    }
    assert_eq!((&p % f).to_u64(), Some(e % f));

    let target_big = Fraction::new(BigUint::from(m), p.clone()).expect("positive");
    let target = Fraction::new(
        T::from_big(&target_big.m().clone()).expect("small numerator"),
        T::from_big(&p).ok_or_else(|| Error::OutOfRange(format!("p = {p} does not fit")))?,
    )?;
    let unit_b = BigUint::from(unit);
    let pk = &p + k;
    let mut solutions = BTreeSet::new();
    let mut second: HashSet<BigUint> = HashSet::new();
    for mask in 1u32..(1u32 << r) {
        if !(mask.count_ones() as u64 - 1).is_multiple_of(ord) {
            continue;
        }
        let x13: BigUint = q_list
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &q)| BigUint::from(q))
            .product();
        let (x23, rem) = (&x13 + &unit_b).div_rem(&BigUint::from(k));
        assert!(rem.is_zero(), "subset size admissible but k does not divide");
        let (x123, rem) = pk.div_rem(&(&x13 * big_m));
        assert!(rem.is_zero(), "M·∏S does not divide p + k");
        let a = [
            &unit_b * &x13 * &x123,
            &p * &unit_b * &x23 * &x123,
            &p * &x13 * &x23 * &x123,
        ];
        assert!(second.insert(a[1].clone()), "two subsets share a second denominator");
        let s = Solution::new(a.to_vec());
        assert!(s.sums_to(&target_big), "family member {s} does not sum to {target_big}");
        let narrowed: Option<Vec<T>> = s.denominators().iter().map(T::from_big).collect();
        let narrowed = narrowed.ok_or_else(|| Error::OutOfRange(format!("{s} does not fit")))?;
        solutions.insert(Solution::new(narrowed));
    }

    let admissible_subsets = offset_binomial_sum(r as u32, ord as u32);
    let shifted: BigUint = (0..r as u32).map(|s| spaced_binomial_sum(s, ord as u32)).sum();
    assert_eq!(admissible_subsets, shifted);
    assert_eq!(BigUint::from(solutions.len()), admissible_subsets);
    debug_assert!(solutions.iter().all(|s| s.sums_to(&target)));

    Ok(PrimeFamily {
        spec: PrimeFamilySpec {
            m,
            e,
            f,
            j,
            k,
            big_m,
            q_list,
            q_product,
            p,
            ord,
        },
        solutions,
        admissible_subsets,
    })
}
