use std::collections::BTreeSet;

use unitfrac_core::*;

fn frac(m: u64, n: u64) -> Fraction64 {
    Fraction::new(m, n).unwrap()
}

fn sub(m: u64, n: u64, a: u64) -> (u64, u64) {
    let (num, den) = (m * a - n, n * a);
    let g = num_integer::gcd(num, den);
    (num / g, den / g)
}

/// Plain descent: every term in `(n/m, k·n/m]`, not below the previous one,
/// with the last two terms from the two-term solver.
fn descend(m: u64, n: u64, k: usize, min: u64, prefix: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
    if k == 2 {
        for (a, b) in solve_two_from(&frac(m, n), &min) {
            let mut v = prefix.clone();
            v.extend([a, b]);
            out.insert(v);
        }
        return;
    }
    let lo = (n / m + 1).max(min);
    let hi = k as u64 * n / m;
    for a in lo..=hi {
        let (m2, n2) = sub(m, n, a);
        prefix.push(a);
        descend(m2, n2, k - 1, a, prefix, out);
        prefix.pop();
    }
}

fn oracle_k(m: u64, n: u64, k: usize) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    descend(m, n, k, 1, &mut Vec::new(), &mut out);
    out
}

#[test]
fn four_terms_match_descent_and_alpha_bounds() {
    let alpha = alpha_bounds(4).unwrap();
    for m in 1..=4u64 {
        for n in 1..=60u64 {
            let f = frac(m, n);
            let fast = enumerate_k(&f, 4).unwrap();
            let got: BTreeSet<Vec<u64>> = fast.iter().map(|s| s.denominators().to_vec()).collect();
            assert_eq!(got, oracle_k(m, n, 4), "{f}");
            for s in &fast {
                assert!(s.sums_to(&f), "{f}: {s}");
                assert!(alpha.admits(s, &n), "{f}: {s} exceeds the alpha bounds");
            }
        }
    }
}

#[test]
fn five_terms_small() {
    assert_eq!(enumerate_k(&frac(1, 1), 5).unwrap().len(), 147);
    for (m, n) in [(2u64, 1u64), (3, 2), (4, 3), (1, 2)] {
        let got: BTreeSet<Vec<u64>> = enumerate_k(&frac(m, n), 5)
            .unwrap()
            .into_iter()
            .map(|s| s.into_denominators())
            .collect();
        assert_eq!(got, oracle_k(m, n, 5), "{m}/{n}");
    }
}

#[test]
fn known_four_term_counts() {
    assert_eq!(oracle_k(1, 1, 4).len(), 14);
    assert_eq!(oracle_k(2, 1, 4).len(), 4);
    assert!(enumerate_k(&frac(9, 2), 4).unwrap().is_empty());
}

#[test]
fn cap_is_configurable() {
    assert!(enumerate_k(&frac(7, 1), 10).is_err());
    assert_eq!(enumerate_k_capped(&frac(10, 1), 10, 10).unwrap().len(), 1);
}
