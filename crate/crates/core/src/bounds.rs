//! Closed-form growth shapes for solution counts, evaluated numerically with
//! every `ε` and `o(1)` term set to zero. These are for orientation only:
//! the implied constants are unknown, so nothing here is compared against a
//! measured count.

use num_bigint::BigInt;
use num_integer::{gcd, lcm};
use num_rational::BigRational;
use num_traits::{Float, FloatConst, Signed};

use crate::arith::factor::factorize;
use crate::arith::stats::multiplicative_stats;
use crate::error::{Error, Result};
use crate::generators::prime_family_shift;

pub const MIN_BOUND_K: usize = 3;
pub const MAX_BOUND_K: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue<F> {
    pub label: &'static str,
    pub formula: &'static str,
    /// natural log of the value, finite even when `value` overflows
    pub ln_value: F,
    pub value: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<F> {
    pub m: u64,
    pub n: u64,
    pub k: usize,
    /// always zero; recorded so printed reports say so
    pub epsilon: F,
    pub values: Vec<BoundValue<F>>,
}

impl<F: Float> BoundReport<F> {
    pub fn get(&self, label: &str) -> Option<&BoundValue<F>> {
        self.values.iter().find(|v| v.label == label)
    }
}

fn c<F: Float>(v: f64) -> F {
    F::from(v).expect("representable constant")
}

fn ratio<F: Float>(p: u64, q: u64) -> F {
    c::<F>(p as f64) / c::<F>(q as f64)
}

fn entry<F: Float>(label: &'static str, formula: &'static str, ln_value: F) -> BoundValue<F> {
    BoundValue {
        label,
        formula,
        ln_value,
        value: ln_value.exp(),
    }
}

/// ln of `a + b` given `ln a` and `ln b`.
fn ln_add<F: Float>(la: F, lb: F) -> F {
    let (hi, lo) = if la > lb { (la, lb) } else { (lb, la) };
    hi + (lo - hi).exp().ln_1p()
}

/// Every upper-bound shape that applies to `f_k(m, n)`.
///
/// * `k = 3`: `(n³/m²)^(1/5)` and the earlier `(n/m)^(2/3)`.
/// * `k = 4`: `n^(4/3)/m^(2/3) + n^(28/17)/m^(8/5)` and the earlier
///   `n^(4/3)/m^(2/3) + (n/m)^(5/3)`.
/// * `k >= 5`: `(k^(4/3)·n²/m)^(c·2^(k−5))` with `c = 28/17`, the earlier
///   `c = 5/3`, and the `k`-free part `(n²/m)^(28/17·2^(k−5))`; for `m = n = 1`
///   also `k^(7/51·2^(k−1))`.
pub fn evaluate_bounds<F: Float>(m: u64, n: u64, k: usize) -> Result<BoundReport<F>> {
    if m == 0 {
        return Err(Error::NotPositive("numerator"));
    }
    if n == 0 {
        return Err(Error::NotPositive("denominator"));
    }
    if !(MIN_BOUND_K..=MAX_BOUND_K).contains(&k) {
        return Err(Error::KOutOfRange {
            k,
            min: MIN_BOUND_K,
            max: MAX_BOUND_K,
        });
    }
    let ln_m = c::<F>(m as f64).ln();
    let ln_n = c::<F>(n as f64).ln();
    let ln_k = c::<F>(k as f64).ln();
    let mut values = Vec::new();
    match k {
        3 => {
            values.push(entry(
                "three_terms",
                "(n^3/m^2)^(1/5)",
                (c::<F>(3.0) * ln_n - c::<F>(2.0) * ln_m) / c(5.0),
            ));
            values.push(entry(
                "three_terms_prior",
                "(n/m)^(2/3)",
                ratio::<F>(2, 3) * (ln_n - ln_m),
            ));
        }
        4 => {
            let head = ratio::<F>(4, 3) * ln_n - ratio::<F>(2, 3) * ln_m;
            let tail = ratio::<F>(28, 17) * ln_n - ratio::<F>(8, 5) * ln_m;
            let prior = ratio::<F>(5, 3) * (ln_n - ln_m);
            values.push(entry(
                "four_terms",
                "n^(4/3)/m^(2/3) + n^(28/17)/m^(8/5)",
                ln_add(head, tail),
            ));
            values.push(entry(
                "four_terms_prior",
                "n^(4/3)/m^(2/3) + (n/m)^(5/3)",
                ln_add(head, prior),
            ));
        }
        _ => {
            let scale = c::<F>((1u64 << (k - 5)) as f64);
            let base = ratio::<F>(4, 3) * ln_k + c::<F>(2.0) * ln_n - ln_m;
            values.push(entry(
                "k_terms",
                "(k^(4/3)·n^2/m)^((28/17)·2^(k-5))",
                ratio::<F>(28, 17) * scale * base,
            ));
            values.push(entry(
                "k_terms_prior",
                "(k^(4/3)·n^2/m)^((5/3)·2^(k-5))",
                ratio::<F>(5, 3) * scale * base,
            ));
            values.push(entry(
                "k_terms_direct",
                "(n^2/m)^((28/17)·2^(k-5))",
                ratio::<F>(28, 17) * scale * (c::<F>(2.0) * ln_n - ln_m),
            ));
            if m == 1 && n == 1 {
                let e = ratio::<F>(7, 51) * c::<F>((1u64 << (k - 1)) as f64);
                values.push(entry("unit_k_terms", "k^((7/51)·2^(k-1))", e * ln_k));
            }
        }
    }
    Ok(BoundReport {
        m,
        n,
        k,
        epsilon: F::zero(),
        values,
    })
}

/// `Θ_5, Θ_6, .., Θ_{k_max}` from `Θ_5 = 4/3`.
pub fn theta_sequence(k_max: usize) -> Result<Vec<BigRational>> {
    theta_sequence_from(BigRational::new(BigInt::from(4), BigInt::from(3)), k_max)
}

/// `Θ_5 = seed`, `Θ_{k+1} = Θ_k/2 + 2/3`.
pub fn theta_sequence_from(seed: BigRational, k_max: usize) -> Result<Vec<BigRational>> {
    if k_max < 5 {
        return Err(Error::KOutOfRange {
            k: k_max,
            min: 5,
            max: usize::MAX,
        });
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
    let mut out = Vec::with_capacity(k_max - 4);
    let mut theta = seed;
    for _ in 5..=k_max {
        out.push(theta.clone());
        theta = &theta * &half + &two_thirds;
    }
    Ok(out)
}

/// `|Θ − 4/3|`
pub fn theta_gap(theta: &BigRational) -> BigRational {
    (theta - BigRational::new(BigInt::from(4), BigInt::from(3))).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundProfile<F> {
    /// `log n / log log n`
    pub exponent_factor: F,
    pub values: Vec<BoundValue<F>>,
}

impl<F: Float> LowerBoundProfile<F> {
    pub fn get(&self, label: &str) -> Option<&BoundValue<F>> {
        self.values.iter().find(|v| v.label == label)
    }

    /// The constant `C` of an entry, `ln(value) / exponent_factor`.
    pub fn coefficient(&self, label: &str) -> Option<F> {
        self.get(label).map(|v| v.ln_value / self.exponent_factor)
    }
}

/// Lower-bound shapes `exp(C · log n / log log n)`:
///
/// * `composite`: `C = log 6`, attained along products of the first primes;
/// * `prime_family`: `C = 5·log 2 / (12·lcm(m, f))`, primes `p = e (mod f)`;
/// * `prime_family_shift` (when `e` is given): `C = 5·log 2 / (12·φ(k))` for
///   the shift `k` of the residue class `e mod f`.
///
/// The value reported under each label is the coefficient `C` applied to
/// `n`; the coefficient itself is in the `formula`-independent field
/// [`LowerBoundProfile::coefficient`].
pub fn lower_bound_profiles<F: Float + FloatConst>(
    n: F,
    m: u64,
    f: u64,
    e: Option<u64>,
) -> Result<LowerBoundProfile<F>> {
    if m == 0 {
        return Err(Error::NotPositive("numerator"));
    }
    if f == 0 {
        return Err(Error::NotPositive("modulus"));
    }
    if n.partial_cmp(&F::E()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::OutOfRange(format!(
            "n = {:?} must exceed e so that log log n is positive",
            n.to_f64()
        )));
    }
    let factor = n.ln() / n.ln().ln();
    let ln2 = F::LN_2();
    let five_twelfths = ratio::<F>(5, 12);
    let mut values = vec![
        entry("composite", "exp(log 6 · log n / log log n)", c::<F>(6.0).ln() * factor),
        entry(
            "prime_family",
            "exp((5 log 2 / (12 lcm(m,f))) · log n / log log n)",
            five_twelfths * ln2 / c(lcm(m, f) as f64) * factor,
        ),
    ];
    if let Some(e) = e {
        if gcd(e, f) != 1 {
            return Err(Error::NotCoprime {
                a: e.to_string(),
                q: f.to_string(),
            });
        }
        let (_, k) = prime_family_shift(m, e, f);
        let phi = multiplicative_stats(&factorize(&k)?, None).totient;
        values.push(entry(
            "prime_family_shift",
            "exp((5 log 2 / (12 φ(k))) · log n / log log n)",
            five_twelfths * ln2 / c(phi as f64) * factor,
        ));
    }
    Ok(LowerBoundProfile {
        exponent_factor: factor,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn three_term_shapes() {
        let r = evaluate_bounds::<f64>(4, 1024, 3).unwrap();
        let v = r.get("three_terms").unwrap().value;
        assert!((v - 2f64.powf(26.0 / 5.0)).abs() < 1e-9);
        assert!((v - 36.758).abs() < 1e-3);
        assert_eq!(r.epsilon, 0.0);

        let r = evaluate_bounds::<f64>(4, 1_000_000, 3).unwrap();
        let prior = r.get("three_terms_prior").unwrap().value;
        assert!((prior - 250_000f64.powf(2.0 / 3.0)).abs() < 1e-6);
        let new = r.get("three_terms").unwrap().value;
        assert!((new - (1e18f64 / 16.0).powf(0.2)).abs() < 1e-6);
    }

    #[test]
    fn many_term_shapes() {
        let r = evaluate_bounds::<f64>(1, 1, 5).unwrap();
        assert_eq!(r.get("k_terms_direct").unwrap().value, 1.0);
        let k5 = r.get("k_terms").unwrap().value;
        assert!((k5 - 5f64.powf(4.0 / 3.0 * 28.0 / 17.0)).abs() < 1e-9);
        assert!(r.get("unit_k_terms").is_some());

        let r = evaluate_bounds::<f64>(2, 50, 4).unwrap();
        let want = 50f64.powf(4.0 / 3.0) / 2f64.powf(2.0 / 3.0) + 50f64.powf(28.0 / 17.0) / 2f64.powf(1.6);
        assert!((r.get("four_terms").unwrap().value / want - 1.0).abs() < 1e-12);

        let r = evaluate_bounds::<f64>(1, 1_000_000, 12).unwrap();
        let top = r.get("k_terms").unwrap();
        assert!(top.value.is_infinite() && top.ln_value.is_finite());
    }

    #[test]
    fn bound_domain() {
        assert!(evaluate_bounds::<f64>(1, 1, 2).is_err());
        assert!(evaluate_bounds::<f64>(1, 1, 13).is_err());
        assert!(evaluate_bounds::<f64>(0, 1, 3).is_err());
        assert!(evaluate_bounds::<f32>(3, 7, 3).is_ok());
    }

    #[test]
    fn theta_iteration() {
        assert_eq!(theta_sequence(5).unwrap(), vec![q(4, 3)]);
        assert!(theta_sequence(9).unwrap().iter().all(|t| *t == q(4, 3)));
        let s = theta_sequence_from(q(1, 1), 8).unwrap();
        assert_eq!(s, vec![q(1, 1), q(7, 6), q(5, 4), q(31, 24)]);
        for w in s.windows(2) {
            assert_eq!(theta_gap(&w[1]) * BigInt::from(2), theta_gap(&w[0]));
        }
        assert!(theta_sequence(4).is_err());
    }

    #[test]
    fn theta_converges() {
        let tol = q(1, 1_000_000);
        for seed in [q(1, 1), q(9, 8), q(5, 4), q(4, 3)] {
            let s = theta_sequence_from(seed, 40).unwrap();
            for (i, t) in s.iter().enumerate() {
                if i + 5 >= 26 {
                    assert!(theta_gap(t) < tol);
                }
            }
        }
    }

    #[test]
    fn lower_bound_coefficients() {
        let ee = std::f64::consts::E.exp();
        let p = lower_bound_profiles(ee, 1, 1, None).unwrap();
        assert!((p.exponent_factor - std::f64::consts::E).abs() < 1e-12);

        let p = lower_bound_profiles(1e9, 4, 4, Some(3)).unwrap();
        let fam = p.coefficient("prime_family").unwrap();
        assert!((fam - 5.0 * 2f64.ln() / 48.0).abs() < 1e-12);
        assert!((fam - 0.0722).abs() < 1e-4);
        assert!((p.coefficient("prime_family_shift").unwrap() - 0.2888).abs() < 1e-4);
        let p = lower_bound_profiles(1e9, 4, 4, Some(1)).unwrap();
        assert!((p.coefficient("prime_family_shift").unwrap() - 0.1444).abs() < 1e-4);
        assert!((p.coefficient("composite").unwrap() - 6f64.ln()).abs() < 1e-12);

        assert!(lower_bound_profiles(2.0, 1, 1, None).is_err());
        assert!(lower_bound_profiles(std::f64::consts::E, 1, 1, None).is_err());
        assert!(lower_bound_profiles(100.0, 4, 4, Some(2)).is_err());
    }
}
