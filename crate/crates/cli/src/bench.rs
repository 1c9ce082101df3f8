//! Wall-clock comparison of the pattern enumerator against the direct scan.
//! Output is informational; nothing is asserted about the timings.

use std::time::Instant;

use unitfrac_core::arith::is_prime;
use unitfrac_core::{enumerate3, oracle3, BigUint, Fraction, Natural};

use crate::error::CliError;
use crate::width::{self, IntChoice};
use crate::with_width;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: u64,
    pub count: usize,
    pub fast_median: f64,
    pub oracle_median: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub m: u64,
    pub reps: usize,
    pub width: &'static str,
    pub rows: Vec<BenchRow>,
    /// least-squares slopes of `ln time` against `ln n`; `None` with fewer
    /// than two distinct `n`
    pub fast_slope: Option<f64>,
    pub oracle_slope: Option<f64>,
}

/// Smallest prime at or above `x`.
pub fn prime_at_least(x: u64) -> u64 {
    (x.max(2)..)
        .find(is_prime)
        .expect("a prime exists above any u64 in range")
}

pub fn median(mut v: Vec<f64>) -> f64 {
    assert!(!v.is_empty(), "median of nothing");
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

fn time_one<T: Natural>(m: u64, n: u64, reps: usize) -> Result<BenchRow, CliError> {
    let f = Fraction::new(T::nat(m), T::nat(n))?;
    let mut fast = Vec::with_capacity(reps);
    let mut slow = Vec::with_capacity(reps);
    let mut count = 0;
    for _ in 0..reps {
        let t = Instant::now();
        let a = enumerate3(&f);
        fast.push(t.elapsed().as_secs_f64());
        let t = Instant::now();
        let b = oracle3(&f);
        slow.push(t.elapsed().as_secs_f64());
        if a != b {
            return Err(CliError::Mismatch(format!("enumerator and oracle disagree on {m}/{n}")));
        }
        count = a.len();
    }
    Ok(BenchRow {
        n,
        count,
        fast_median: median(fast),
        oracle_median: median(slow),
    })
}

pub fn run_bench(m: u64, ns: &[u64], reps: usize, int: IntChoice) -> Result<BenchReport, CliError> {
    if ns.is_empty() {
        return Err(CliError::Usage("no denominators to benchmark".into()));
    }
    if reps == 0 || m == 0 || ns.contains(&0) {
        return Err(CliError::Usage("m, n and reps must be positive".into()));
    }
    let max_n = *ns.iter().max().expect("nonempty");
    let width = width::resolve(int, &BigUint::from(m), &BigUint::from(max_n), 3)?;
    let rows = ns
        .iter()
        .map(|&n| with_width!(width, T => time_one::<T>(m, n, reps)))
        .collect::<Result<Vec<_>, _>>()?;
    let pts = |f: fn(&BenchRow) -> f64| rows.iter().map(|r| (r.n as f64, f(r))).collect::<Vec<_>>();
    Ok(BenchReport {
        m,
        reps,
        width: width.name(),
        fast_slope: log_log_slope(&pts(|r| r.fast_median)),
        oracle_slope: log_log_slope(&pts(|r| r.oracle_median)),
        rows,
    })
}

impl BenchReport {
    pub fn render(&self) -> String {
        let mut out = format!("# m={} reps={} int={}\n", self.m, self.reps, self.width);
        out.push_str("n,count,enumerate3_median_s,oracle3_median_s\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:.6e},{:.6e}\n",
                r.n, r.count, r.fast_median, r.oracle_median
            ));
        }
        match (self.fast_slope, self.oracle_slope) {
            (Some(a), Some(b)) => out.push_str(&format!("slope enumerate3={a:.3} oracle3={b:.3}\n")),
            _ => out.push_str("slopes omitted: fewer than two distinct n\n"),
        }
        out
    }
}
