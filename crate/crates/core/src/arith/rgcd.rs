//! Relative greatest common divisors of a tuple `(t_1, .., t_k)`.
//!
//! For each nonempty `J ⊆ {1..k}`, `x_J` is `gcd(t_j : j ∈ J)` with the parts
//! already assigned to strict supersets of `J` divided out. Subsets are
//! bitmasks: bit `i - 1` set means position `i` is in the subset.

use crate::error::{Error, Result};
use crate::scalar::Natural;

pub const MAX_ARITY: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgcdDecomposition<T> {
    k: usize,
    // indexed by mask, entry 0 unused
    entries: Vec<T>,
}

/// Bitmask for a set of 1-based positions.
pub fn subset_mask(positions: &[usize]) -> u32 {
    positions.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

/// `"12"`, `"123"` for arity below 10, comma separated otherwise.
pub fn subset_label(mask: u32, k: usize) -> String {
    let positions: Vec<String> = (0..k)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    if k < 10 {
        positions.concat()
    } else {
        positions.join(",")
    }
}

impl<T: Natural> RgcdDecomposition<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, mask: u32) -> &T {
        assert!(
            mask != 0 && (mask as usize) < self.entries.len(),
            "invalid subset mask {mask}"
        );
        &self.entries[mask as usize]
    }

    /// `x_J` for 1-based positions, e.g. `x(&[1, 2])` is `x_12`.
    pub fn x(&self, positions: &[usize]) -> &T {
        self.get(subset_mask(positions))
    }

    /// `(mask, x_J)` for every nonempty subset in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &T)> {
        self.entries.iter().enumerate().skip(1).map(|(m, x)| (m as u32, x))
    }

    /// Recomputes `t_i = ∏_{J ∋ i} x_J`.
    pub fn reconstruct(&self) -> Vec<T> {
        (0..self.k)
            .map(|i| {
                self.iter()
                    .filter(|(mask, _)| mask >> i & 1 == 1)
                    .fold(T::one(), |acc, (_, x)| acc * x.clone())
            })
            .collect()
    }
}

pub fn rgcd_decompose<T: Natural>(t: &[T]) -> Result<RgcdDecomposition<T>> {
    let k = t.len();
    if k == 0 || k > MAX_ARITY {
        return Err(Error::Arity(k));
    }
    if t.iter().any(|v| v.is_zero()) {
        return Err(Error::NotPositive("tuple entry"));
    }
    let full: u32 = (1u32 << k) - 1;
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));

    let mut entries = vec![T::one(); full as usize + 1];
    for &mask in &masks {
        let g = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| t[i].clone())
            .reduce(|a, b| a.gcd(&b))
            .expect("nonempty subset");
        let mut above = T::one();
        let mut sup = (mask + 1) | mask;
        while sup <= full {
            above = above * entries[sup as usize].clone();
            sup = (sup + 1) | mask;
        }
        let (q, r) = g.div_rem(&above);
        assert!(
            r.is_zero(),
            "relative gcd division not exact for subset {mask:#b}: {g} / {above}"
        );
        entries[mask as usize] = q;
    }
    Ok(RgcdDecomposition { k, entries })
}
