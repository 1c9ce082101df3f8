//! Sums of three unit fractions.
//!
//! For a pattern `(n1, n2, n3)` write `a_i = n_i·t_i` and decompose the `t_i`
//! into relative gcds. The singleton parts vanish, leaving four parameters
//! `x12, x13, x23, x123` bound by
//!
//! ```text
//! m·x12·x13·x23·x123 = (n/n1)·x23 + (n/n2)·x13 + (n/n3)·x12
//! ```
//!
//! Every solution has one of `y`, `z`, `x12·x13`, `x12·x123` at most the
//! pattern's branch bound `B`, so four bounded searches (one per [`Branch`])
//! find all parameter quadruples. Each candidate is then checked by
//! [`validate_quad`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::arith::factor::factor_positive;
use crate::arith::rgcd::rgcd_decompose;
use crate::fraction::{Fraction, Solution};
use crate::pattern::{covering_patterns, Pattern3};
use crate::scalar::Natural;

/// The four bounded searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `y <= B`, from `m·x13·x23·x123 = d12·y + n/n3`
    Y,
    /// `z <= B`, from `m·x12·x13·x123 = d23·z + n/n1`
    Z,
    /// `x12·x13 <= B`, then `z·x23 = (n/(n2·d23))·x13 + (n/(n3·d23))·x12`
    Product12x13,
    /// `x12·x123 <= B`, then `w·z = (n/(n1·d13))·(n/(n2·d23)) + n·m·x12²·x123/(n3·d13·d23)`
    Product12x123,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::Y, Branch::Z, Branch::Product12x13, Branch::Product12x123];
}

/// Relative gcd parameters of a solution with a fixed pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamQuad<T> {
    pub x12: T,
    pub x13: T,
    pub x23: T,
    pub x123: T,
}

fn exact_div<T: Natural>(a: T, b: &T) -> Option<T> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}

impl<T: Natural> ParamQuad<T> {
    pub fn new(x12: T, x13: T, x23: T, x123: T) -> Self {
        Self { x12, x13, x23, x123 }
    }

    /// `(t1, t2, t3) = (x12·x13·x123, x12·x23·x123, x13·x23·x123)`
    pub fn t(&self) -> [T; 3] {
        let (a, b, c, d) = (&self.x12, &self.x13, &self.x23, &self.x123);
        [
            a.clone() * b.clone() * d.clone(),
            a.clone() * c.clone() * d.clone(),
            b.clone() * c.clone() * d.clone(),
        ]
    }

    pub fn is_balanced(&self, f: &Fraction<T>, p: &Pattern3<T>) -> bool {
        let [q1, q2, q3] = p.cofactors().clone();
        let lhs = f.m().clone() * self.x12.clone() * self.x13.clone() * self.x23.clone() * self.x123.clone();
        lhs == q1 * self.x23.clone() + q2 * self.x13.clone() + q3 * self.x12.clone()
    }

    /// `y = ((n/(n1·d12))·x23 + (n/(n2·d12))·x13) / x12`, when integral.
    pub fn y(&self, p: &Pattern3<T>) -> Option<T> {
        let [q1, q2, _] = p.cofactors().clone();
        let num = exact_div(q1, &p.d12)? * self.x23.clone() + exact_div(q2, &p.d12)? * self.x13.clone();
        exact_div(num, &self.x12)
    }

    /// `z = ((n/(n2·d23))·x13 + (n/(n3·d23))·x12) / x23`, when integral.
    pub fn z(&self, p: &Pattern3<T>) -> Option<T> {
        let [_, q2, q3] = p.cofactors().clone();
        let num = exact_div(q2, &p.d23)? * self.x13.clone() + exact_div(q3, &p.d23)? * self.x12.clone();
        exact_div(num, &self.x23)
    }

    /// `w = ((n/(n1·d13))·x23 + (n/(n3·d13))·x12) / x13`, when integral.
    pub fn w(&self, p: &Pattern3<T>) -> Option<T> {
        let [q1, _, q3] = p.cofactors().clone();
        let num = exact_div(q1, &p.d13)? * self.x23.clone() + exact_div(q3, &p.d13)? * self.x12.clone();
        exact_div(num, &self.x13)
    }

    /// Parameters of a sorted solution under pattern `p`, or `None` if the
    /// solution does not have that pattern or a singleton part is nontrivial.
    pub fn from_solution(s: &Solution<T>, p: &Pattern3<T>) -> Option<Self> {
        let a = s.denominators();
        if a.len() != 3 {
            return None;
        }
        let t1 = exact_div(a[0].clone(), &p.n1)?;
        let t2 = exact_div(a[1].clone(), &p.n2)?;
        let t3 = exact_div(a[2].clone(), &p.n3)?;
        let d = rgcd_decompose(&[t1, t2, t3]).ok()?;
        if [d.x(&[1]), d.x(&[2]), d.x(&[3])].iter().any(|x| !x.is_one()) {
            return None;
        }
        Some(Self::new(
            d.x(&[1, 2]).clone(),
            d.x(&[1, 3]).clone(),
            d.x(&[2, 3]).clone(),
            d.x(&[1, 2, 3]).clone(),
        ))
    }
}

fn range_to<T: Natural>(bound: &T) -> impl Iterator<Item = T> {
    let mut next = T::one();
    let bound = bound.clone();
    std::iter::from_fn(move || {
        if next > bound {
            return None;
        }
        let cur = next.clone();
        next = next.clone() + T::one();
        Some(cur)
    })
}

/// Writes `value` as `a·b·c` in every ordered way with `gcd(a, b) = 1` and
/// `a·c <= cap`.
fn coprime_first_triples<T: Natural>(value: &T, cap: Option<&T>, mut emit: impl FnMut(T, T, T)) {
    let divs = factor_positive(value).divisors();
    for a in &divs {
        if cap.is_some_and(|c| a > c) {
            break;
        }
        let rest = value.clone() / a.clone();
        for c in &divs {
            if c > &rest || cap.is_some_and(|cap| a.clone() * c.clone() > *cap) {
                break;
            }
            let (b, r) = rest.div_rem(c);
            if !r.is_zero() || !a.gcd(&b).is_one() {
                continue;
            }
            emit(a.clone(), b, c.clone());
        }
    }
}

fn ceil_div<T: Natural>(a: T, b: &T) -> T {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + T::one()
    }
}

/// Size limits every sorted solution with a given pattern obeys, used to
/// cut the branch loops short. `a1 in (n/m, 3n/m]` bounds `t1`; `a3 >= 3n/m`
/// bounds `t3` from below; an optional floor on `a1` tightens both.
#[derive(Debug, Clone)]
pub(crate) struct Window<T> {
    t1_lo: T,
    t1_hi: T,
    t3_lo: T,
}

impl<T: Natural> Window<T> {
    /// `None` when no `t1` fits.
    pub(crate) fn new(f: &Fraction<T>, p: &Pattern3<T>, min_first: &T) -> Option<Self> {
        let m = f.m();
        let [q1, _, q3] = p.cofactors();
        let mut t1_lo = q1.clone() / m.clone() + T::one();
        let floor1 = ceil_div(min_first.clone(), &p.n1);
        if floor1 > t1_lo {
            t1_lo = floor1;
        }
        let t1_hi = T::nat(3) * q1.clone() / m.clone();
        let mut t3_lo = ceil_div(T::nat(3) * q3.clone(), m);
        let floor3 = ceil_div(min_first.clone(), &p.n3);
        if floor3 > t3_lo {
            t3_lo = floor3;
        }
        (t1_lo <= t1_hi).then_some(Self { t1_lo, t1_hi, t3_lo })
    }

    /// The cofactors `c` with `prod·c` in the `t1` range, when there are few
    /// enough of them to scan directly.
    fn short_span(&self, prod: &T) -> Option<impl Iterator<Item = T>> {
        const MAX_SCAN: u64 = 48;
        let lo = ceil_div(self.t1_lo.clone(), prod);
        let hi = self.t1_hi.clone() / prod.clone();
        if hi >= lo.clone() + T::nat(MAX_SCAN) {
            return None;
        }
        let mut next = lo;
        Some(std::iter::from_fn(move || {
            if next > hi {
                return None;
            }
            let cur = next.clone();
            next = next.clone() + T::one();
            Some(cur)
        }))
    }

    fn admits_t1(&self, t1: &T) -> bool {
        &self.t1_lo <= t1 && t1 <= &self.t1_hi
    }
}

fn min_of<T: Natural>(a: &T, b: &T) -> T {
    if a < b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Candidate parameter quadruples from one bounded search. Every returned
/// quadruple satisfies the balance equation; the remaining conditions are
/// left to [`validate_quad`].
pub fn enumerate_branch<T: Natural>(f: &Fraction<T>, p: &Pattern3<T>, kind: Branch) -> BTreeSet<ParamQuad<T>> {
    let mut out = BTreeSet::new();
    search_branch(f, p, kind, None, |q| {
        out.insert(q);
    });
    out
}

/// One bounded search. With a window, candidates that cannot lead to a
/// sorted solution inside it are dropped early.
pub(crate) fn search_branch<T: Natural>(
    f: &Fraction<T>,
    p: &Pattern3<T>,
    kind: Branch,
    window: Option<&Window<T>>,
    mut keep: impl FnMut(ParamQuad<T>),
) {
    let m = f.m();
    let [q1, q2, q3] = p.cofactors().clone();
    let mut keep = |quad: ParamQuad<T>| {
        debug_assert!(quad.is_balanced(f, p));
        keep(quad);
    };
    let t1_fits = |t1: &T| window.is_none_or(|w| w.admits_t1(t1));
    let t1_cap = window.map(|w| w.t1_hi.clone());
    match kind {
        Branch::Y => {
            // m·t3 = d12·y + n/n3
            let mut y = T::one();
            if let Some(w) = window {
                let need = m.clone() * w.t3_lo.clone();
                if need > q3 {
                    y = ceil_div(need - q3.clone(), &p.d12);
                }
            }
            while y <= p.bound {
                let d12y = p.d12.clone() * y.clone();
                y = y + T::one();
                let Some(prod) = exact_div(d12y.clone() + q3.clone(), m) else {
                    continue;
                };
                if window.is_some() && !prod.gcd(&q3).is_one() {
                    continue;
                }
                // prod = x13·x23·x123
                coprime_first_triples(&prod, t1_cap.as_ref(), |x13, x23, x123| {
                    let num = q1.clone() * x23.clone() + q2.clone() * x13.clone();
                    if let Some(x12) = exact_div(num, &d12y) {
                        if !x12.is_zero() && t1_fits(&(x12.clone() * x13.clone() * x123.clone())) {
                            keep(ParamQuad::new(x12, x13, x23, x123));
                        }
                    }
                });
            }
        }
        Branch::Z => {
            // m·t1 = d23·z + n/n1
            let mut z = T::one();
            let mut hi = p.bound.clone();
            if let Some(w) = window {
                let lo = m.clone() * w.t1_lo.clone();
                if lo > q1 {
                    z = ceil_div(lo - q1.clone(), &p.d23);
                }
                let top = (m.clone() * w.t1_hi.clone() - q1.clone()) / p.d23.clone();
                hi = min_of(&hi, &top);
            }
            while z <= hi {
                let d23z = p.d23.clone() * z.clone();
                z = z + T::one();
                let Some(prod) = exact_div(d23z.clone() + q1.clone(), m) else {
                    continue;
                };
                if window.is_some() && !prod.gcd(&q1).is_one() {
                    continue;
                }
                // prod = x12·x13·x123
                coprime_first_triples(&prod, None, |x12, x13, x123| {
                    let num = q2.clone() * x13.clone() + q3.clone() * x12.clone();
                    if let Some(x23) = exact_div(num, &d23z) {
                        if !x23.is_zero() {
                            keep(ParamQuad::new(x12, x13, x23, x123));
                        }
                    }
                });
            }
        }
        Branch::Product12x13 => {
            let (Some(c2), Some(c3)) = (exact_div(q2.clone(), &p.d23), exact_div(q3.clone(), &p.d23)) else {
                return;
            };
            let hi = t1_cap.as_ref().map_or(p.bound.clone(), |c| min_of(c, &p.bound));
            for prod in range_to(&hi) {
                if window.is_some() && !prod.gcd(&q1).is_one() {
                    continue;
                }
                for x12 in factor_positive(&prod).divisors() {
                    let x13 = prod.clone() / x12.clone();
                    if !x12.gcd(&x13).is_one() {
                        continue;
                    }
                    let r = c2.clone() * x13.clone() + c3.clone() * x12.clone();
                    let base = q2.clone() * x13.clone() + q3.clone() * x12.clone();
                    let scale = m.clone() * prod.clone();
                    if let Some(span) = window.and_then(|w| w.short_span(&prod)) {
                        // x23·(m·t1 − n/n1) = base, so walk x123 instead of
                        // factoring R
                        for x123 in span {
                            let den = scale.clone() * x123.clone() - q1.clone();
                            if let Some(x23) = exact_div(base.clone(), &den) {
                                if (r.clone() % x23.clone()).is_zero() {
                                    keep(ParamQuad::new(x12.clone(), x13.clone(), x23, x123));
                                }
                            }
                        }
                        continue;
                    }
                    for x23 in factor_positive(&r).divisors() {
                        let num = q1.clone() * x23.clone() + base.clone();
                        if let Some(x123) = exact_div(num, &(scale.clone() * x23.clone())) {
                            if !x123.is_zero() && t1_fits(&(prod.clone() * x123.clone())) {
                                keep(ParamQuad::new(x12.clone(), x13.clone(), x23, x123));
                            }
                        }
                    }
                }
            }
        }
        Branch::Product12x123 => {
            let (Some(c1), Some(c2)) = (exact_div(q1.clone(), &p.d13), exact_div(q2.clone(), &p.d23)) else {
                return;
            };
            let head = c1 * c2;
            let tail_den = p.n3.clone() * p.d13.clone() * p.d23.clone();
            let nm = f.n().clone() * m.clone();
            let hi = t1_cap.as_ref().map_or(p.bound.clone(), |c| min_of(c, &p.bound));
            for prod in range_to(&hi) {
                if window.is_some() && !prod.gcd(&q1).is_one() {
                    continue;
                }
                for x12 in factor_positive(&prod).divisors() {
                    let x123 = prod.clone() / x12.clone();
                    let tail_num = nm.clone() * x12.clone() * x12.clone() * x123.clone();
                    let Some(tail) = exact_div(tail_num, &tail_den) else {
                        continue;
                    };
                    // W = w·z
                    let wz = head.clone() + tail;
                    let scale = m.clone() * prod.clone();
                    if let Some(span) = window.and_then(|w| w.short_span(&prod)) {
                        // d23·z = m·t1 − n/n1, so walk x13 instead of factoring W
                        for x13 in span {
                            let Some(z) = exact_div(scale.clone() * x13.clone() - q1.clone(), &p.d23) else {
                                continue;
                            };
                            if z.is_zero() || !(wz.clone() % z.clone()).is_zero() {
                                continue;
                            }
                            let d23z = p.d23.clone() * z;
                            let num = q2.clone() * x13.clone() + q3.clone() * x12.clone();
                            if let Some(x23) = exact_div(num, &d23z) {
                                if !x23.is_zero() {
                                    keep(ParamQuad::new(x12.clone(), x13, x23, x123.clone()));
                                }
                            }
                        }
                        continue;
                    }
                    for z in factor_positive(&wz).divisors() {
                        let d23z = p.d23.clone() * z;
                        let Some(x13) = exact_div(d23z.clone() + q1.clone(), &scale) else {
                            continue;
                        };
                        let num = q2.clone() * x13.clone() + q3.clone() * x12.clone();
                        if let Some(x23) = exact_div(num, &d23z) {
                            if !x13.is_zero() && !x23.is_zero() && t1_fits(&(prod.clone() * x13.clone())) {
                                keep(ParamQuad::new(x12.clone(), x13, x23, x123.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Accepts a quadruple iff it yields a sorted solution with exactly pattern
/// `p`; returns the solution `(n1·t1, n2·t2, n3·t3)`.
pub fn validate_quad<T: Natural>(f: &Fraction<T>, p: &Pattern3<T>, q: &ParamQuad<T>) -> Option<Solution<T>> {
    let xs = [&q.x12, &q.x13, &q.x23, &q.x123];
    if xs.iter().any(|x| x.is_zero()) || !q.is_balanced(f, p) {
        return None;
    }
    if !q.x12.gcd(&q.x13).is_one() || !q.x12.gcd(&q.x23).is_one() || !q.x13.gcd(&q.x23).is_one() {
        return None;
    }
    if !q.x12.gcd(&p.d12).is_one() || !q.x13.gcd(&p.d13).is_one() || !q.x23.gcd(&p.d23).is_one() {
        return None;
    }
    let t = q.t();
    let cof = p.cofactors();
    if (0..3).any(|i| !t[i].gcd(&cof[i]).is_one()) {
        return None;
    }
    let [t1, t2, t3] = t;
    let a = [p.n1.clone() * t1, p.n2.clone() * t2, p.n3.clone() * t3];
    if a[0] > a[1] || a[1] > a[2] {
        return None;
    }
    Some(Solution::new(a.to_vec()))
}

/// All sorted solutions found under one pattern.
pub fn solutions_for_pattern<T: Natural>(f: &Fraction<T>, p: &Pattern3<T>) -> BTreeSet<Solution<T>> {
    solutions_in_window(f, p, &T::one())
}

fn solutions_in_window<T: Natural>(f: &Fraction<T>, p: &Pattern3<T>, min_first: &T) -> BTreeSet<Solution<T>> {
    let mut out = BTreeSet::new();
    let Some(window) = Window::new(f, p, min_first) else {
        return out;
    };
    for kind in Branch::ALL {
        search_branch(f, p, kind, Some(&window), |q| {
            if let Some(s) = validate_quad(f, p, &q) {
                if &s.denominators()[0] >= min_first {
                    out.insert(s);
                }
            }
        });
    }
    out
}

/// Every sorted `(a1, a2, a3)` with `1/a1 + 1/a2 + 1/a3 = m/n`.
pub fn enumerate3<T: Natural>(f: &Fraction<T>) -> BTreeSet<Solution<T>> {
    enumerate3_from(f, &T::one())
}

/// [`enumerate3`] restricted to `a1 >= min_first`.
pub fn enumerate3_from<T: Natural>(f: &Fraction<T>, min_first: &T) -> BTreeSet<Solution<T>> {
    let f = f.reduced();
    if f.m().clone() > T::nat(3) * f.n().clone() {
        return BTreeSet::new();
    }
    let per_pattern: Vec<(Pattern3<T>, BTreeSet<Solution<T>>)> = covering_patterns(&f)
        .into_par_iter()
        .map(|p| {
            let s = solutions_in_window(&f, &p, min_first);
            (p, s)
        })
        .filter(|(_, s)| !s.is_empty())
        .collect();

    let mut owner: BTreeMap<Solution<T>, (T, T, T)> = BTreeMap::new();
    for (p, sols) in per_pattern {
        for s in sols {
            if let Some(prev) = owner.insert(s.clone(), p.triple()) {
                panic!("solution {s} emitted by patterns {prev:?} and {:?}", p.triple());
            }
        }
    }
    owner.into_keys().collect()
}

pub fn count3<T: Natural>(f: &Fraction<T>) -> usize {
    enumerate3(f).len()
}

/// `(u, a, b)` with `(m·a − n)(m·b − n) = n²`, `u = m·a − n`, ascending in `a`.
fn two_term_candidates<T: Natural>(f: &Fraction<T>) -> impl Iterator<Item = (T, T)> + '_ {
    let (m, n) = (f.m(), f.n());
    let feasible = m.clone() <= T::nat(2) * n.clone();
    let nsq = n.clone() * n.clone();
    let divs = if feasible {
        factor_positive(n).pow(2).divisors_up_to(n)
    } else {
        Vec::new()
    };
    divs.into_iter().filter_map(move |u| {
        let a = exact_div(n.clone() + u.clone(), m)?;
        let b = exact_div(n.clone() + nsq.clone() / u, m)?;
        Some((a, b))
    })
}

/// Every sorted pair `a1 <= a2` with `1/a1 + 1/a2 = m/n`, through the
/// factorization `(m·a1 − n)(m·a2 − n) = n²`.
pub fn solve_two<T: Natural>(f: &Fraction<T>) -> BTreeSet<(T, T)> {
    two_term_candidates(f).collect()
}

/// [`solve_two`] restricted to `a1 >= min_first`.
pub fn solve_two_from<T: Natural>(f: &Fraction<T>, min_first: &T) -> Vec<(T, T)> {
    two_term_candidates(f).filter(|(a, _)| a >= min_first).collect()
}

/// Reference form of [`solve_two`]: scans `a1` over `(n/m, 2n/m]`.
pub fn solve_two_scan<T: Natural>(f: &Fraction<T>) -> BTreeSet<(T, T)> {
    let (m, n) = (f.m(), f.n());
    let lo = n.clone() / m.clone() + T::one();
    let hi = T::nat(2) * n.clone() / m.clone();
    let mut out = BTreeSet::new();
    let mut a = lo;
    while a <= hi {
        let den = m.clone() * a.clone() - n.clone();
        if let Some(b) = exact_div(n.clone() * a.clone(), &den) {
            out.insert((a.clone(), b));
        }
        a = a + T::one();
    }
    out
}

/// Residual `m/n − 1/a1` as a fraction, for `a1 > n/m`.
fn residual<T: Natural>(f: &Fraction<T>, a1: &T) -> Fraction<T> {
    let num = f.m().clone() * a1.clone() - f.n().clone();
    let den = f.n().clone() * a1.clone();
    Fraction::new(num, den).expect("a1 above n/m").reduced()
}

/// Trivial enumeration: scan `a1` over `(n/m, 3n/m]` and solve the two-term
/// residual with `a2 >= a1`.
pub fn oracle3<T: Natural>(f: &Fraction<T>) -> BTreeSet<Solution<T>> {
    let (m, n) = (f.m(), f.n());
    let mut out = BTreeSet::new();
    let mut a1 = n.clone() / m.clone() + T::one();
    let hi = T::nat(3) * n.clone() / m.clone();
    while a1 <= hi {
        let r = residual(f, &a1);
        for (a2, a3) in solve_two_from(&r, &a1) {
            out.insert(Solution::new(vec![a1.clone(), a2, a3]));
        }
        a1 = a1 + T::one();
    }
    out
}

/// The first solution in `(a1, a2)` ascending order, if any.
pub fn first_solution3<T: Natural>(f: &Fraction<T>) -> Option<Solution<T>> {
    let (m, n) = (f.m(), f.n());
    let mut a1 = n.clone() / m.clone() + T::one();
    let hi = T::nat(3) * n.clone() / m.clone();
    while a1 <= hi {
        let r = residual(f, &a1);
        if let Some((a2, a3)) = two_term_candidates(&r).find(|(a, _)| *a >= a1) {
            return Some(Solution::new(vec![a1, a2, a3]));
        }
        a1 = a1 + T::one();
    }
    None
}
