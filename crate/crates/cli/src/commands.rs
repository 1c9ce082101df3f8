use std::collections::BTreeSet;
use std::fs;
use std::io::Write;

use unitfrac_core::arith::{rgcd_decompose, subset_label};
use unitfrac_core::generators::{for_each_composite, gen_prime_family, gen_shifted_divisor, CompositeFamilySpec};
use unitfrac_core::{
    enumerate3, enumerate3_from, enumerate_k, evaluate_bounds, lower_bound_profiles, oracle3, theta_sequence, BigUint,
    Fraction, Natural, Solution,
};

use crate::args::*;
use crate::bench::{prime_at_least, run_bench};
use crate::error::{CliError, EXIT_MISMATCH, EXIT_OK};
use crate::records::RecordWriter;
use crate::verify::{run_range, DriverConfig, Mode, RangeSpec, Status};
use crate::width::{narrow, resolve};
use crate::with_width;

/// Runs one command; `Ok` carries the exit code (0, or 1 for a mismatch or
/// counterexample), errors map to their own codes.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let code = match cli.command {
        Command::Enumerate(a) => enumerate(&a, out, err)?,
        Command::Verify(a) => verify(&a, out, err)?,
        Command::Compare(a) => compare(&a, out)?,
        Command::Generate(a) => generate(&a, out, err)?,
        Command::Bench(a) => bench(&a, out)?,
        Command::Bounds(a) => bounds(&a, out)?,
        Command::Rgcd(a) => rgcd(&a, out)?,
    };
    out.flush()?;
    Ok(code)
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let k = a.k as usize;
    let width = resolve(a.int, &a.m, &a.n, k)?;
    let count = with_width!(width, T => enumerate_as::<T>(a, k, out)?);
    writeln!(err, "count={count}")?;
    Ok(EXIT_OK)
}

fn enumerate_as<T: Natural>(a: &EnumerateArgs, k: usize, out: &mut dyn Write) -> Result<u64, CliError> {
    let f = Fraction::new(narrow::<T>(&a.m)?, narrow::<T>(&a.n)?)?;
    let min = a.min_denominator.as_ref().map(narrow::<T>).transpose()?;
    let sols: BTreeSet<Solution<T>> = match (k, &min) {
        (3, Some(lo)) => enumerate3_from(&f, lo),
        (_, None) => enumerate_k(&f, k)?,
        (_, Some(lo)) => enumerate_k(&f, k)?
            .into_iter()
            .filter(|s| &s.denominators()[0] >= lo)
            .collect(),
    };
    let mut w = RecordWriter::new(out, a.format, k)?;
    for s in &sols {
        w.write(&a.m, &a.n, s)?;
    }
    Ok(w.written)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let spec = RangeSpec::new(a.m, a.k as usize, a.range.0, a.range.1, a.mode).map_err(CliError::Usage)?;
    let config = DriverConfig {
        workers: a.workers,
        block_size: a.block_size,
        checkpoint: a.checkpoint.clone(),
        checkpoint_every: a.checkpoint_every,
        stop_at: a.stop_at,
        restart: a.restart,
        fast: a.fast,
        int: a.int,
    };
    let fresh = a.restart || a.checkpoint.as_ref().is_none_or(|p| !p.exists());
    if a.mode == Mode::Count && fresh {
        writeln!(out, "n,count")?;
    }
    let (summary, resumed_from) = run_range(&spec, &config, |n, v| {
        if a.mode == Mode::Count {
            writeln!(out, "{n},{v}")?;
        }
        Ok(())
    })?;
    if let Some(n) = resumed_from {
        writeln!(err, "resumed after n={n}")?;
    }
    let line = summary.render();
    writeln!(err, "{line}")?;
    if let Some(path) = &a.summary {
        fs::write(path, format!("{line}\n"))?;
    }
    Ok(match summary.status {
        Status::Counterexample => {
            let n = summary.tally.counterexample.expect("counterexample status");
            writeln!(err, "no {}-term split of {}/{n}", spec.k, spec.m)?;
            EXIT_MISMATCH
        }
        Status::Complete | Status::Interrupted => EXIT_OK,
    })
}

fn compare(a: &CompareArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let width = resolve(a.int, &a.m, &a.n, 3)?;
    with_width!(width, T => compare_as::<T>(a, out))
}

fn compare_as<T: Natural>(a: &CompareArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let f = Fraction::new(narrow::<T>(&a.m)?, narrow::<T>(&a.n)?)?;
    let fast = enumerate3(&f);
    let slow = oracle3(&f);
    writeln!(
        out,
        "compare m={} n={} enumerate3={} oracle3={}",
        a.m,
        a.n,
        fast.len(),
        slow.len()
    )?;
    for s in fast.difference(&slow) {
        writeln!(out, "only_enumerate3 {s}")?;
    }
    for s in slow.difference(&fast) {
        writeln!(out, "only_oracle3 {s}")?;
    }
    if fast == slow {
        writeln!(out, "equal")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "mismatch")?;
        Ok(EXIT_MISMATCH)
    }
}

fn checked(s: &Solution<BigUint>, f: &Fraction<BigUint>) -> Result<(), CliError> {
    if s.sums_to(f) {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("generated {s} does not sum to {f}")))
    }
}

fn generate(a: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let mut w = RecordWriter::new(out, a.format, 3)?;
    match &a.construction {
        Construction::Composite { r, m } => {
            let spec = CompositeFamilySpec::new(*r, m.clone())?;
            let f = spec.fraction();
            let mut failure = None;
            for_each_composite(&spec, |s| {
                if failure.is_none() {
                    failure = checked(&s, &f).and_then(|_| Ok(w.write(m, &spec.n, &s)?)).err();
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            writeln!(
                err,
                "certificate construction=composite r={r} m={m} n={} count={} bound={} family_size={}",
                spec.n,
                w.written,
                spec.certified_count(),
                spec.family_size()
            )?;
            if BigUint::from(w.written) < spec.certified_count() {
                return Err(CliError::Mismatch("family smaller than its certified count".into()));
            }
        }
        Construction::Shifted { m, n } => {
            let f = Fraction::new(m.clone(), n.clone())?;
            for s in gen_shifted_divisor(&f)? {
                checked(&s, &f)?;
                w.write(m, n, &s)?;
            }
            writeln!(err, "certificate construction=shifted m={m} n={n} count={}", w.written)?;
        }
        Construction::PrimeFamily {
            m,
            e,
            f,
            r,
            search_limit,
        } => {
            let fam = gen_prime_family::<BigUint>(*m, *e, *f, *r, search_limit.as_ref())?;
            let s = &fam.spec;
            let frac = Fraction::new(BigUint::from(*m), s.p.clone())?;
            for sol in &fam.solutions {
                checked(sol, &frac)?;
                w.write(m, &s.p, sol)?;
            }
            let q: Vec<String> = s.q_list.iter().map(u64::to_string).collect();
            writeln!(
                err,
                "certificate construction=prime-family m={m} e={e} f={f} r={r} p={} k={} M={} Q={} q={} j={} ord={} subsets={} count={}",
                s.p,
                s.k,
                s.big_m,
                s.q_product,
                q.join(","),
                s.j,
                s.ord,
                fam.admissible_subsets,
                w.written
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let ns: Vec<u64> =
        a.n.iter()
            .copied()
            .chain(a.primes_near.iter().map(|&x| prime_at_least(x)))
            .collect();
    let report = run_bench(a.m, &ns, a.reps, a.int)?;
    write!(out, "{}", report.render())?;
    Ok(EXIT_OK)
}

fn show(v: f64) -> String {
    if !v.is_finite() {
        "inf".into()
    } else if v == 0.0 || (1e-4..1e9).contains(&v.abs()) {
        format!("{v:.4}")
    } else {
        format!("{v:.4e}")
    }
}

fn bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let report = evaluate_bounds::<f64>(a.m, a.n, a.k)?;
    writeln!(
        out,
        "bounds m={} n={} k={} epsilon={} (shapes only, constants unknown)",
        a.m, a.n, a.k, report.epsilon
    )?;
    for v in &report.values {
        writeln!(
            out,
            "{} ≈ {} ln={:.4} shape={}",
            v.label,
            show(v.value),
            v.ln_value,
            v.formula
        )?;
    }
    if a.k >= 5 {
        let theta = theta_sequence(a.k)?;
        let last = theta.last().expect("k >= 5");
        writeln!(out, "theta_{}={} theta_limit=4/3", a.k, last)?;
    }
    if let Some(f) = a.modulus {
        let p = lower_bound_profiles::<f64>(a.n as f64, a.m, f, a.residue)?;
        writeln!(
            out,
            "lower_bounds n={} log_n_over_log_log_n={:.4}",
            a.n, p.exponent_factor
        )?;
        for v in &p.values {
            let c = p.coefficient(v.label).expect("label from profile");
            writeln!(out, "{} ≈ {} C={:.4} shape={}", v.label, show(v.value), c, v.formula)?;
        }
    }
    Ok(EXIT_OK)
}

fn rgcd(a: &RgcdArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let d = rgcd_decompose(&a.values)?;
    for (mask, x) in d.iter() {
        writeln!(out, "x{}={x}", subset_label(mask, d.k()))?;
    }
    let back: Vec<String> = d.reconstruct().iter().map(|v| v.to_string()).collect();
    writeln!(out, "reconstructed={}", back.join(","))?;
    Ok(EXIT_OK)
}
