//! Sums of `k >= 4` unit fractions: fix `a_1 <= .. <= a_{k-3}` one at a time
//! within the range the residual allows, then hand the remaining three terms
//! to [`enumerate3`].

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fraction::{Fraction, Solution};
use crate::scalar::Natural;
use crate::three::{enumerate3, enumerate3_from, solve_two_from};

pub const DEFAULT_MAX_K: usize = 9;

/// `α_1 = k`, `α_i = (k − i + 1)·∏_{j<i} α_j`. Every sorted solution has
/// `a_i <= α_i · n^(2^(i−1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBounds {
    pub k: usize,
    pub alphas: Vec<BigUint>,
}

pub fn alpha_bounds(k: usize) -> Result<AlphaBounds> {
    if k == 0 {
        return Err(Error::KOutOfRange {
            k,
            min: 1,
            max: usize::MAX,
        });
    }
    let mut alphas: Vec<BigUint> = Vec::with_capacity(k);
    let mut product = BigUint::one();
    for i in 1..=k {
        let a = if i == 1 {
            BigUint::from(k)
        } else {
            BigUint::from(k - i + 1) * &product
        };
        product *= &a;
        alphas.push(a);
    }
    Ok(AlphaBounds { k, alphas })
}

impl AlphaBounds {
    /// `α_i · n^(2^(i−1))` for 1-based `i`.
    pub fn limit(&self, i: usize, n: &BigUint) -> BigUint {
        &self.alphas[i - 1] * n.pow(1u32 << (i - 1))
    }

    pub fn admits<T: Natural>(&self, s: &Solution<T>, n: &T) -> bool {
        let n = n.to_big();
        s.denominators()
            .iter()
            .enumerate()
            .all(|(i, a)| a.to_big() <= self.limit(i + 1, &n))
    }
}

pub fn enumerate_k<T: Natural>(f: &Fraction<T>, k: usize) -> Result<BTreeSet<Solution<T>>> {
    enumerate_k_capped(f, k, DEFAULT_MAX_K)
}

/// [`enumerate_k`] with an explicit cap on `k`.
pub fn enumerate_k_capped<T: Natural>(f: &Fraction<T>, k: usize, max_k: usize) -> Result<BTreeSet<Solution<T>>> {
    if k < 2 || k > max_k {
        return Err(Error::KOutOfRange { k, min: 2, max: max_k });
    }
    let f = f.reduced();
    match k {
        2 => Ok(crate::three::solve_two(&f)
            .into_iter()
            .map(|(a, b)| Solution::new(vec![a, b]))
            .collect()),
        3 => Ok(enumerate3(&f)),
        _ => {
            let firsts = term_range(&f, k, &T::one());
            let found: Vec<Vec<Solution<T>>> = firsts
                .into_par_iter()
                .map(|a1| {
                    let mut out = Vec::new();
                    extend(&subtract(&f, &a1), &mut vec![a1], k - 1, &mut out);
                    out
                })
                .collect();
            Ok(found.into_iter().flatten().collect())
        }
    }
}

/// Candidates for the next denominator: `(n/m, remaining·n/m]` from `min` up.
fn term_range<T: Natural>(r: &Fraction<T>, remaining: usize, min: &T) -> Vec<T> {
    let (m, n) = (r.m(), r.n());
    let mut a = n.clone() / m.clone() + T::one();
    if &a < min {
        a = min.clone();
    }
    let hi = T::nat(remaining as u64) * n.clone() / m.clone();
    let mut out = Vec::new();
    while a <= hi {
        out.push(a.clone());
        a = a + T::one();
    }
    out
}

fn subtract<T: Natural>(r: &Fraction<T>, a: &T) -> Fraction<T> {
    let num = r.m().clone() * a.clone() - r.n().clone();
    Fraction::new(num, r.n().clone() * a.clone())
        .expect("denominator above n/m")
        .reduced()
}

fn extend<T: Natural>(r: &Fraction<T>, prefix: &mut Vec<T>, remaining: usize, out: &mut Vec<Solution<T>>) {
    let last = prefix.last().cloned().unwrap_or_else(T::one);
    match remaining {
        2 => {
            for (a, b) in solve_two_from(r, &last) {
                let mut d = prefix.clone();
                d.extend([a, b]);
                out.push(Solution::new(d));
            }
        }
        3 => {
            for s in enumerate3_from(r, &last) {
                if s.denominators()[0] >= last {
                    let mut d = prefix.clone();
                    d.extend(s.into_denominators());
                    out.push(Solution::new(d));
                }
            }
        }
        _ => {
            for a in term_range(r, remaining, &last) {
                let next = subtract(r, &a);
                prefix.push(a);
                extend(&next, prefix, remaining - 1, out);
                prefix.pop();
            }
        }
    }
}
