use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::scalar::Natural;

/// A positive rational `m/n`, the target of an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction<T> {
    m: T,
    n: T,
}

impl<T: Natural> Fraction<T> {
    pub fn new(m: T, n: T) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::NotPositive("numerator"));
        }
        if n.is_zero() {
            return Err(Error::NotPositive("denominator"));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> &T {
        &self.m
    }

    pub fn n(&self) -> &T {
        &self.n
    }

    pub fn is_reduced(&self) -> bool {
        self.m.gcd(&self.n).is_one()
    }

    /// The same rational in lowest terms; the solution set is unchanged.
    pub fn reduced(&self) -> Self {
        let g = self.m.gcd(&self.n);
        Self {
            m: self.m.clone() / g.clone(),
            n: self.n.clone() / g,
        }
    }
}

impl<T: Natural> fmt::Display for Fraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// A sorted tuple `a_1 <= .. <= a_k` of positive denominators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution<T> {
    denominators: Vec<T>,
}

impl<T: Natural> Solution<T> {
    /// Sorts the given denominators.
    pub fn new(mut denominators: Vec<T>) -> Self {
        denominators.sort();
        Self { denominators }
    }

    pub fn k(&self) -> usize {
        self.denominators.len()
    }

    pub fn denominators(&self) -> &[T] {
        &self.denominators
    }

    pub fn into_denominators(self) -> Vec<T> {
        self.denominators
    }

    /// Exact check of `Σ 1/a_i = m/n`, by cross-multiplication in `BigUint`.
    pub fn sums_to(&self, f: &Fraction<T>) -> bool {
        if self.denominators.iter().any(|a| a.is_zero()) {
            return false;
        }
        let a: Vec<BigUint> = self.denominators.iter().map(|v| v.to_big()).collect();
        let product: BigUint = a.iter().product();
        let numerator: BigUint = a.iter().map(|ai| &product / ai).sum();
        f.n.to_big() * numerator == f.m.to_big() * product
    }
}

impl<T: Natural> fmt::Display for Solution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.denominators.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_display() {
        let f = Fraction::new(4u64, 6).unwrap();
        assert!(!f.is_reduced());
        assert_eq!(f.reduced(), Fraction::new(2, 3).unwrap());
        assert_eq!(f.to_string(), "4/6");
        assert!(Fraction::new(0u64, 3).is_err());
        assert!(Fraction::new(3u64, 0).is_err());
    }

    #[test]
    fn exact_sum_check() {
        let f = Fraction::new(4u64, 5).unwrap();
        assert!(Solution::new(vec![20, 2, 4]).sums_to(&f));
        assert!(!Solution::new(vec![2, 4, 21]).sums_to(&f));
        let s = Solution::new(vec![20u64, 2, 4]);
        assert_eq!(s.denominators(), &[2, 4, 20]);
        assert_eq!(s.to_string(), "(2, 4, 20)");
        assert!(!Solution::new(vec![0u64, 1]).sums_to(&Fraction::new(1, 1).unwrap()));
    }
}
