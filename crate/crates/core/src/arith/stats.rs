//! Multiplicative statistics of a factored integer and multiplicative order.

use num_integer::Integer;
use num_traits::One;

use super::factor::Factorization;
use crate::error::{Error, Result};
use crate::scalar::Natural;

/// Divisor and prime counts of a value, optionally restricted to a residue
/// class `r mod q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeStats<T> {
    pub tau: u64,
    pub omega: u64,
    pub totient: T,
    pub tau_in_class: Option<u64>,
    pub omega_in_class: Option<u64>,
}

/// A reduced residue class `r mod q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueClass {
    pub r: u64,
    pub q: u64,
}

impl ResidueClass {
    pub fn new(r: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::NotPositive("modulus"));
        }
        if r.gcd(&q) != 1 {
            return Err(Error::NotCoprime {
                a: r.to_string(),
                q: q.to_string(),
            });
        }
        Ok(Self { r: r % q, q })
    }

    fn contains<T: Natural>(&self, v: &T) -> bool {
        let q = T::nat(self.q);
        (v.clone() % q).to_u64() == Some(self.r)
    }
}

pub fn multiplicative_stats<T: Natural>(f: &Factorization<T>, residue: Option<ResidueClass>) -> MultiplicativeStats<T> {
    let totient = f.factors().iter().fold(T::one(), |acc, (p, e)| {
        acc * num_traits::pow(p.clone(), *e as usize - 1) * (p.clone() - T::one())
    });
    let (tau_in_class, omega_in_class) = match residue {
        Some(class) => {
            let tau = f.divisors().iter().filter(|d| class.contains(*d)).count() as u64;
            let omega = f.factors().iter().filter(|(p, _)| class.contains(p)).count() as u64;
            (Some(tau), Some(omega))
        }
        None => (None, None),
    };
    MultiplicativeStats {
        tau: f.tau(),
        omega: f.omega() as u64,
        totient,
        tau_in_class,
        omega_in_class,
    }
}

/// Number of divisors of `f`'s value coprime to `q`.
pub fn tau_coprime<T: Natural>(f: &Factorization<T>, q: u64) -> u64 {
    let q = T::nat(q);
    f.factors()
        .iter()
        .filter(|(p, _)| q.clone() % p.clone() != T::zero())
        .map(|(_, e)| *e as u64 + 1)
        .product()
}

/// Smallest `l >= 1` with `a^l = 1 (mod q)`. Negative `a` is taken mod `q`.
pub fn order_mod(a: i64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::NotPositive("modulus"));
    }
    let a = (a as i128).rem_euclid(q as i128) as u64;
    if a.gcd(&q) != 1 {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            q: q.to_string(),
        });
    }
    if q == 1 {
        return Ok(1);
    }
    let q128 = q as u128;
    let mut x = a as u128;
    let mut l = 1;
    while !x.is_one() {
        x = x * a as u128 % q128;
        l += 1;
    }
    Ok(l)
}
