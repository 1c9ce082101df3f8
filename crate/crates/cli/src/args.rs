use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use unitfrac_core::BigUint;

use crate::records::Format;
use crate::verify::Mode;
use crate::width::IntChoice;

#[derive(Debug, Parser)]
#[command(name = "unitfrac", version, about = "Unit fraction representations of m/n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every sorted k-term split of m/n
    Enumerate(EnumerateArgs),
    /// Check or count splits of m/n over a range of n, with checkpointing
    Verify(VerifyArgs),
    /// Diff the pattern enumerator against the direct scan for k = 3
    Compare(CompareArgs),
    /// Emit an explicit solution family with a certificate line on stderr
    Generate(GenerateArgs),
    /// Time the pattern enumerator against the direct scan
    Bench(BenchArgs),
    /// Print the growth shapes for f_k(m, n)
    Bounds(BoundsArgs),
    /// Print the relative gcd decomposition of a tuple
    Rgcd(RgcdArgs),
}

pub fn positive(s: &str) -> Result<BigUint, String> {
    let v: BigUint = s.parse().map_err(|_| format!("{s:?} is not a nonnegative integer"))?;
    if v == BigUint::ZERO {
        return Err("must be positive".into());
    }
    Ok(v)
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(_) => Err(format!("{s:?} is not a positive 64-bit integer")),
    }
}

/// `START..END`, both inclusive.
pub fn range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected START..END")?;
    let (a, b) = (positive_u64(a)?, positive_u64(b)?);
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(value_parser = positive)]
    pub m: BigUint,
    #[arg(value_parser = positive)]
    pub n: BigUint,
    /// number of terms, 2..=9
    #[arg(default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=9))]
    pub k: u64,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
    /// only solutions whose smallest denominator is at least this
    #[arg(long, value_parser = positive)]
    pub min_denominator: Option<BigUint>,
    #[arg(long, value_enum, default_value = "auto")]
    pub int: IntChoice,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = positive_u64)]
    pub m: u64,
    #[arg(short, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=9))]
    pub k: u64,
    /// inclusive range of denominators, e.g. 2..100000
    #[arg(long, value_parser = range)]
    pub range: (u64, u64),
    #[arg(long, value_enum, default_value = "exists")]
    pub mode: Mode,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 256, value_parser = positive_u64)]
    pub block_size: u64,
    /// resumed from when present; rewritten atomically as the run advances
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// newly completed n between checkpoint writes
    #[arg(long, default_value_t = 10_000, value_parser = positive_u64)]
    pub checkpoint_every: u64,
    /// stop after this n, leaving a checkpoint
    #[arg(long, value_parser = positive_u64)]
    pub stop_at: Option<u64>,
    /// discard an existing checkpoint instead of resuming
    #[arg(long)]
    pub restart: bool,
    /// in exists mode, use the pattern enumerator rather than the early-exit search
    #[arg(long)]
    pub fast: bool,
    /// also write the summary line to this file
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub int: IntChoice,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(value_parser = positive)]
    pub m: BigUint,
    #[arg(value_parser = positive)]
    pub n: BigUint,
    #[arg(long, value_enum, default_value = "auto")]
    pub int: IntChoice,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub construction: Construction,
    #[arg(long, value_enum, default_value = "jsonl", global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Family for m/n with n built from the first r primes
    Composite {
        #[arg(long)]
        r: u32,
        #[arg(long, value_parser = positive)]
        m: BigUint,
    },
    /// Solutions from divisor pairs shifted to the numerator
    Shifted {
        #[arg(value_parser = positive)]
        m: BigUint,
        #[arg(value_parser = positive)]
        n: BigUint,
    },
    /// Family for m/p at a prime p = e (mod f) built from r auxiliary primes
    PrimeFamily {
        #[arg(long, value_parser = positive_u64)]
        m: u64,
        #[arg(long)]
        e: u64,
        #[arg(long, value_parser = positive_u64)]
        f: u64,
        #[arg(long)]
        r: usize,
        /// largest p to try; defaults to the cube of the modulus
        #[arg(long, value_parser = positive)]
        search_limit: Option<BigUint>,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 4, value_parser = positive_u64)]
    pub m: u64,
    /// denominators to time
    #[arg(long, value_delimiter = ',', value_parser = positive_u64)]
    pub n: Vec<u64>,
    /// time the smallest prime at or above each value
    #[arg(long, value_delimiter = ',', value_parser = positive_u64)]
    pub primes_near: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub int: IntChoice,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(value_parser = positive_u64)]
    pub m: u64,
    #[arg(value_parser = positive_u64)]
    pub n: u64,
    /// number of terms, 3..=12
    #[arg(default_value_t = 3)]
    pub k: usize,
    /// also print lower-bound profiles for primes in a class mod this
    #[arg(long, value_parser = positive_u64)]
    pub modulus: Option<u64>,
    /// residue of that class
    #[arg(long, requires = "modulus")]
    pub residue: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RgcdArgs {
    #[arg(required = true, value_parser = positive)]
    pub values: Vec<BigUint>,
}
