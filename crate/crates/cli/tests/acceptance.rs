//! Acceptance criteria 1-11. Runs as a plain binary and prints one
//! `criterion N: PASS|FAIL` line per criterion; exits nonzero if any fail.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use unitfrac_core::arith::*;
use unitfrac_core::generators::{gen_composite, gen_prime_family, CompositeFamilySpec};
use unitfrac_core::*;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn unitfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitfrac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

/// Sorted `k`-term splits of `m/n` with every term at least `min`, by direct
/// search over exact fractions.
fn brute_count(m: u128, n: u128, k: usize, min: u128) -> usize {
    let g = m.gcd(&n);
    let (m, n) = (m / g, n / g);
    if k == 1 {
        return usize::from(n % m == 0 && n / m >= min);
    }
    let lo = (n / m + 1).max(min);
    let hi = k as u128 * n / m;
    (lo..=hi).map(|a| brute_count(m * a - n, n * a, k - 1, a)).sum()
}

fn criterion_1() -> Result<String, String> {
    let mut fractions = 0;
    for m in 1..=12u64 {
        for n in 2..=400u64 {
            let f = Fraction::new(m, n).unwrap();
            ensure(enumerate3(&f) == oracle3(&f), || format!("sets differ at {m}/{n}"))?;
            fractions += 1;
        }
    }
    Ok(format!("{fractions} fractions, enumerate3 = oracle3"))
}

fn criterion_2() -> Result<String, String> {
    let cases = [
        (1, 1, 3, 3),
        (2, 1, 3, 1),
        (4, 3, 3, 3),
        (4, 5, 3, 2),
        (1, 1, 4, 14),
        (2, 1, 4, 4),
    ];
    for (m, n, k, want) in cases {
        let brute = brute_count(m, n, k, 1);
        let fast = enumerate_k(&Fraction::new(m as u64, n as u64).unwrap(), k)
            .unwrap()
            .len();
        ensure(brute == want && fast == want, || {
            format!("f_{k}({m},{n}): brute {brute}, enumerator {fast}, expected {want}")
        })?;
    }
    Ok("f3(1,1)=3 f3(2,1)=1 f3(4,3)=3 f3(4,5)=2 f4(1,1)=14 f4(2,1)=4".into())
}

fn criterion_3() -> Result<String, String> {
    let out = unitfrac(&[
        "verify",
        "--m",
        "4",
        "--range",
        "2..100000",
        "--workers",
        "4",
        "--int",
        "u128",
    ]);
    let err = text(&out.stderr);
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}: {err}", out.status.code())
    })?;
    ensure(err.contains("checked=99999") && err.contains("status=complete"), || {
        err.clone()
    })?;
    Ok("4/n has a three-term split for 2 <= n <= 100000".into())
}

fn random_tuple(rng: &mut StdRng, k: usize) -> Vec<u64> {
    let common: u64 = rng.gen_range(1..=30);
    (0..k)
        .map(|_| {
            let v: u64 = rng.gen_range(1..=1_000_000);
            if rng.gen_bool(0.5) && v * common <= 1_000_000 {
                v * common
            } else {
                v
            }
        })
        .collect()
}

fn criterion_4() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=5);
        let t = random_tuple(&mut rng, k);
        let d = rgcd_decompose(&t).map_err(|e| e.to_string())?;
        ensure(d.reconstruct() == t, || format!("reconstruction failed for {t:?}"))?;
        for (i, xi) in d.iter() {
            for (j, xj) in d.iter() {
                if i & j != i && i & j != j {
                    ensure(xi.gcd(xj) == 1, || format!("{t:?}: x_{i:b}, x_{j:b} share a factor"))?;
                }
            }
        }
    }
    let d = rgcd_decompose(&[90u64, 126, 616]).unwrap();
    let got = (*d.x(&[1, 2]), *d.x(&[2, 3]), *d.x(&[1, 2, 3]));
    ensure(got == (9, 7, 2), || format!("(90,126,616) gave {got:?}"))?;
    Ok("10000 random tuples; (90,126,616) -> x12=9 x23=7 x123=2".into())
}

fn criterion_5() -> Result<String, String> {
    let mut solutions = 0;
    for m in 1..=6u64 {
        for n in 2..=400u64 {
            let f = Fraction::new(m, n).unwrap();
            for s in oracle3(&f) {
                let a = s.denominators();
                let triple = (a[0].gcd(&n), a[1].gcd(&n), a[2].gcd(&n));
                let p = derive_constants(&m, &n, triple).map_err(|e| e.to_string())?;
                let q = ParamQuad::from_solution(&s, &p).ok_or_else(|| format!("{f}: {s} did not decompose"))?;
                let short = [q.y(&p), q.z(&p), Some(q.x12 * q.x13), Some(q.x12 * q.x123)]
                    .into_iter()
                    .flatten()
                    .any(|v| v <= p.bound);
                ensure(short, || format!("{f}: {s} exceeds B = {}", p.bound))?;
                solutions += 1;
            }
        }
    }
    Ok(format!("{solutions} oracle solutions each have a parameter <= B"))
}

fn criterion_6() -> Result<String, String> {
    let mut emitted = 0;
    for r in 0..=3 {
        for m in 1u64..=3 {
            let spec = CompositeFamilySpec::new(r, m).map_err(|e| e.to_string())?;
            let f = spec.fraction();
            let family = gen_composite(&spec);
            ensure(family.solutions.iter().all(|s| s.sums_to(&f)), || {
                format!("r={r} m={m}: bad triple")
            })?;
            let need = 6usize.pow(r).div_ceil(2);
            ensure(family.solutions.len() >= need, || {
                format!("r={r} m={m}: {} < {need}", family.solutions.len())
            })?;
            if r <= 2 {
                ensure(family.solutions.is_subset(&enumerate3(&f)), || {
                    format!("r={r} m={m}: not a subset")
                })?;
            }
            emitted += family.solutions.len();
        }
    }
    Ok(format!("{emitted} distinct verified triples over r<=3, m<=3"))
}

fn sums_exactly(m: u128, n: u128, a: &[u64]) -> bool {
    let a: Vec<u128> = a.iter().map(|&v| u128::from(v)).collect();
    let product: u128 = a.iter().product();
    let numerator: u128 = a.iter().map(|v| product / v).sum();
    n * numerator == m * product
}

fn criterion_7() -> Result<String, String> {
    for (e, p, count, member) in [
        (3u64, 139u64, 3usize, [35u64, 5838, 29190]),
        (1, 877, 2, [220, 77176, 385880]),
    ] {
        let fam = gen_prime_family::<u64>(4, e, 4, 2, None).map_err(|err| err.to_string())?;
        ensure(fam.spec.p == BigUint::from(p), || format!("e={e}: p = {}", fam.spec.p))?;
        ensure(p % 4 == e, || format!("{p} != {e} mod 4"))?;
        ensure(fam.solutions.len() == count, || {
            format!("p={p}: {} solutions", fam.solutions.len())
        })?;
        ensure(fam.solutions.contains(&Solution::new(member.to_vec())), || {
            format!("p={p}: missing {member:?}")
        })?;
        for s in &fam.solutions {
            ensure(sums_exactly(4, p.into(), s.denominators()), || {
                format!("{s} does not sum to 4/{p}")
            })?;
        }
    }
    Ok("p=139 with 3 solutions, p=877 with 2".into())
}

fn criterion_8() -> Result<String, String> {
    let mut report = Vec::new();
    for r in 1..=5 {
        let n: u64 = generators::first_primes(r).iter().product();
        let count = count3(&Fraction::new(1u64, n).unwrap());
        let need = 6usize.pow(r as u32).div_ceil(2);
        ensure(count >= need, || format!("1/{n}: {count} < {need}"))?;
        report.push(format!("1/{n}:{count}>={need}"));
    }
    Ok(report.join(" "))
}

fn criterion_9() -> Result<String, String> {
    for u in 1..=8 {
        for n in 0..=40 {
            let direct = spaced_binomial_sum(n, u);
            let roots: f64 = spaced_binomial_sum_via_roots(n, u);
            ensure(BigUint::from(roots.round() as u128) == direct, || {
                format!("n={n} u={u}: roots disagree")
            })?;
            let shifted: BigUint = (0..n).map(|s| spaced_binomial_sum(s, u)).sum();
            ensure(offset_binomial_sum(n, u) == shifted, || {
                format!("n={n} u={u}: offset sum")
            })?;
        }
    }
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=6);
        let t: Vec<BigUint> = random_tuple(&mut rng, k).into_iter().map(BigUint::from).collect();
        ensure(lcm_lebesgue(&t) == lcm_fold(&t), || {
            format!("lcm identity fails on {t:?}")
        })?;
    }
    Ok("binomial sums for n<=40, u<=8; lcm identity on 1000 tuples".into())
}

fn verify_summary(dir: &Path, tag: &str, range: &str, mode: &str, extra: &[&str]) -> Result<(String, String), String> {
    let summary = dir.join(format!("{tag}.summary"));
    let summary = summary.to_str().unwrap();
    let mut args = vec![
        "verify",
        "--m",
        "4",
        "--range",
        range,
        "--mode",
        mode,
        "--block-size",
        "97",
        "--summary",
        summary,
    ];
    args.extend_from_slice(extra);
    let out = unitfrac(&args);
    ensure(out.status.code() == Some(0), || {
        format!("{tag}: exit {:?} {}", out.status.code(), text(&out.stderr))
    })?;
    let line = std::fs::read_to_string(summary).map_err(|e| e.to_string())?;
    Ok((line, text(&out.stdout)))
}

/// Cold runs with 1 and 4 workers, then a run stopped at `mid` and resumed.
fn determinism(range: &str, mode: &str, mid: &str) -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let ck = d.join("run.ckpt");
    let ck = ck.to_str().unwrap();
    let (one, rows_one) = verify_summary(d, "one", range, mode, &["--workers", "1"])?;
    let (four, rows_four) = verify_summary(d, "four", range, mode, &["--workers", "4"])?;
    ensure(one == four && rows_one == rows_four, || {
        format!("workers differ:\n{one}{four}")
    })?;
    let stop = [
        "--workers",
        "4",
        "--checkpoint",
        ck,
        "--checkpoint-every",
        "500",
        "--stop-at",
        mid,
    ];
    let (half, rows_a) = verify_summary(d, "half", range, mode, &stop)?;
    ensure(half.contains("status=interrupted"), || half.clone())?;
    let (resumed, rows_b) = verify_summary(d, "resumed", range, mode, &["--workers", "2", "--checkpoint", ck])?;
    ensure(resumed == one, || format!("resume differs:\n{one}{resumed}"))?;
    ensure(format!("{rows_a}{rows_b}") == rows_one, || "resumed rows differ".into())?;
    Ok(one.trim().to_string())
}

fn criterion_10() -> Result<String, String> {
    let count = determinism("2..1500", "count", "751")?;
    let exists = determinism("2..100000", "exists", "50001")?;
    Ok(format!("byte-identical: {count} | {exists}"))
}

fn criterion_11() -> Result<String, String> {
    let out = unitfrac(&["bench", "--m", "4", "--primes-near", "1000,10000,100000", "--reps", "3"]);
    let report = text(&out.stdout);
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}: {}", out.status.code(), text(&out.stderr))
    })?;
    let slope = report.lines().find(|l| l.starts_with("slope")).ok_or("no slope line")?;
    for line in report.lines() {
        println!("    {line}");
    }
    Ok(format!("report only: {slope}"))
}

fn main() {
    let checks: [(u32, &str, Check); 11] = [
        (1, "oracle equivalence, k=3", criterion_1),
        (2, "known counts", criterion_2),
        (3, "Erdős–Straus range via verify", criterion_3),
        (4, "relative gcd suite", criterion_4),
        (5, "five-parameter coverage", criterion_5),
        (6, "composite generator", criterion_6),
        (7, "prime-family fixtures", criterion_7),
        (8, "growth along primorials", criterion_8),
        (9, "identity suites", criterion_9),
        (10, "determinism across workers and resume", criterion_10),
        (11, "scaling bench", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in checks {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id}: PASS {name} [{secs:.1}s] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL {name} [{secs:.1}s] {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
