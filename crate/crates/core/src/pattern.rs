//! Solution patterns `(n1, n2, n3)` for three unit fractions and the
//! constants each pattern fixes.
//!
//! A sorted solution `(a1, a2, a3)` of `m/n` has pattern `n_i = gcd(a_i, n)`.
//! Every pattern is a triple of divisors of `n`, so there are at most `τ(n)³`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::factor::{factor_positive, Factorization};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::scalar::{integer_root, integer_root_u128, Natural};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern3<T> {
    pub n1: T,
    pub n2: T,
    pub n3: T,
    /// `gcd(n/n1, n/n2)`
    pub d12: T,
    /// `gcd(n/n1, n/n3)`
    pub d13: T,
    /// `gcd(n/n2, n/n3)`
    pub d23: T,
    /// `36 / (n1²·d23)`
    pub constant: Ratio<BigUint>,
    /// `floor((constant · n³/m²)^(1/5))`
    pub bound: T,
    cofactors: [T; 3],
}

impl<T: Natural> Pattern3<T> {
    pub fn triple(&self) -> (T, T, T) {
        (self.n1.clone(), self.n2.clone(), self.n3.clone())
    }

    /// `(n/n1, n/n2, n/n3)`
    pub fn cofactors(&self) -> &[T; 3] {
        &self.cofactors
    }
}

/// Every ordered triple of divisors of `n`, in lexicographic order.
pub fn enumerate_patterns<T: Natural>(n_fact: &Factorization<T>) -> Vec<(T, T, T)> {
    let divs = n_fact.divisors();
    let mut out = Vec::with_capacity(divs.len().pow(3));
    for a in &divs {
        for b in &divs {
            for c in &divs {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

pub fn derive_constants<T: Natural>(m: &T, n: &T, triple: (T, T, T)) -> Result<Pattern3<T>> {
    if m.is_zero() {
        return Err(Error::NotPositive("numerator"));
    }
    let (n1, n2, n3) = triple;
    for ni in [&n1, &n2, &n3] {
        if ni.is_zero() || !(n.clone() % ni.clone()).is_zero() {
            return Err(Error::OutOfRange(format!("pattern entry {ni} does not divide {n}")));
        }
    }
    let q1 = n.clone() / n1.clone();
    let q2 = n.clone() / n2.clone();
    let q3 = n.clone() / n3.clone();
    let d12 = q1.gcd(&q2);
    let d13 = q1.gcd(&q3);
    let d23 = q2.gcd(&q3);

    let (constant, bound) = match native_constants(m, n, &n1, &d23) {
        Some((num, den, root)) => (Ratio::new_raw(BigUint::from(num), BigUint::from(den)), T::nat(root)),
        None => {
            let n1b = n1.to_big();
            let scale = &n1b * &n1b * d23.to_big();
            let nb = n.to_big();
            let mb = m.to_big();
            let radicand = BigUint::from(36u32) * &nb * &nb * &nb / (&scale * &mb * &mb);
            let bound = T::from_big(&integer_root(&radicand, 5)).expect("branch bound fits");
            (Ratio::new(BigUint::from(36u32), scale), bound)
        }
    };

    Ok(Pattern3 {
        n1,
        n2,
        n3,
        d12,
        d13,
        d23,
        constant,
        bound,
        cofactors: [q1, q2, q3],
    })
}

/// `(36/g, n1²·d23/g, B)` in native arithmetic when everything fits.
fn native_constants<T: Natural>(m: &T, n: &T, n1: &T, d23: &T) -> Option<(u128, u128, u64)> {
    let (m, n, n1, d23) = (m.to_u128()?, n.to_u128()?, n1.to_u128()?, d23.to_u128()?);
    let scale = n1.checked_mul(n1)?.checked_mul(d23)?;
    let radicand = 36u128.checked_mul(n.checked_pow(3)?)? / scale.checked_mul(m.checked_mul(m)?)?;
    let root = u64::try_from(integer_root_u128(radicand, 5)).ok()?;
    let g = 36u128.gcd(&scale);
    Some((36 / g, scale / g, root))
}

/// Patterns that can carry a solution of `f` (assumed reduced): all divisor
/// triples with `m·n1 <= 3n`, since `n1 <= a1 <= 3n/m`.
pub fn candidate_patterns<T: Natural>(f: &Fraction<T>) -> Vec<Pattern3<T>> {
    patterns_where(f, |_, _, _| true)
}

/// Candidates with `lcm(n1, n2, n3) = n`. For reduced `m/n` every prime power
/// of `n` must divide some denominator, so the other triples carry no solutions.
pub(crate) fn covering_patterns<T: Natural>(f: &Fraction<T>) -> Vec<Pattern3<T>> {
    let n = f.n().clone();
    patterns_where(f, move |a, b, c| a.lcm(b).lcm(c) == n)
}

fn patterns_where<T: Natural>(f: &Fraction<T>, keep: impl Fn(&T, &T, &T) -> bool) -> Vec<Pattern3<T>> {
    let (m, n) = (f.m(), f.n());
    let divs = factor_positive(n).divisors();
    let limit = T::nat(3) * n.clone();
    let mut out = Vec::new();
    for n1 in divs.iter().filter(|d| m.clone() * (*d).clone() <= limit) {
        for n2 in &divs {
            for n3 in divs.iter().filter(|n3| keep(n1, n2, n3)) {
                out.push(derive_constants(m, n, (n1.clone(), n2.clone(), n3.clone())).expect("divisor triple"));
            }
        }
    }
    out
}
