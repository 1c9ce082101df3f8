//! Parallel range verification. The range is cut into contiguous blocks;
//! a wave of blocks is evaluated on the worker pool, then a single merger
//! folds the per-`n` results in ascending `n`, so the summary does not depend
//! on the worker count. Checkpoints are written only by the merger.

use std::path::PathBuf;

use clap::ValueEnum;
use rayon::prelude::*;
use unitfrac_core::{enumerate3, enumerate_k, first_solution3, solve_two, BigUint, Fraction, Natural};

use crate::checkpoint::RunCheckpoint;
use crate::error::CliError;
use crate::width::{self, IntChoice};
use crate::with_width;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// every n must have at least one solution
    Exists,
    /// number of solutions for every n
    Count,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exists => "exists",
            Mode::Count => "count",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "exists" => Some(Mode::Exists),
            "count" => Some(Mode::Count),
            _ => None,
        }
    }
}

pub const MIN_RANGE_K: usize = 2;
pub const MAX_RANGE_K: usize = 9;

/// `m/n` for every `n` in `start..=end`, split into `k` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeSpec {
    pub m: u64,
    pub k: usize,
    pub start: u64,
    pub end: u64,
    pub mode: Mode,
}

impl RangeSpec {
    pub fn new(m: u64, k: usize, start: u64, end: u64, mode: Mode) -> Result<Self, String> {
        if m == 0 {
            return Err("m must be positive".into());
        }
        if !(MIN_RANGE_K..=MAX_RANGE_K).contains(&k) {
            return Err(format!("k must be in {MIN_RANGE_K}..={MAX_RANGE_K}"));
        }
        if start == 0 || start > end {
            return Err(format!("invalid range {start}..{end}"));
        }
        Ok(Self { m, k, start, end, mode })
    }
}

/// Running statistics over the completed prefix of a range. In `exists` mode
/// each `n` contributes 1 or 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub total: u128,
    pub min_count: Option<u64>,
    /// first `n` attaining `min_count`
    pub argmin_n: Option<u64>,
    /// first `n` without a solution (`exists` mode)
    pub counterexample: Option<u64>,
}

impl Tally {
    fn fold(&mut self, mode: Mode, n: u64, value: u64) {
        self.checked += 1;
        self.total += u128::from(value);
        if self.min_count.is_none_or(|m| value < m) {
            self.min_count = Some(value);
            self.argmin_n = Some(n);
        }
        if mode == Mode::Exists && value == 0 && self.counterexample.is_none() {
            self.counterexample = Some(n);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    Counterexample,
    Interrupted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub spec: RangeSpec,
    pub last_completed_n: Option<u64>,
    pub tally: Tally,
    pub status: Status,
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "none".into(), |v| v.to_string())
}

impl RunSummary {
    /// One deterministic line; identical for any worker count or resume history.
    pub fn render(&self) -> String {
        let s = &self.spec;
        let t = &self.tally;
        let status = match self.status {
            Status::Complete => "complete",
            Status::Counterexample => "counterexample",
            Status::Interrupted => "interrupted",
        };
        format!(
            "summary m={} k={} range={}..{} mode={} checked={} total={} min_count={} argmin_n={} counterexample={} last_completed_n={} status={status}",
            s.m,
            s.k,
            s.start,
            s.end,
            s.mode.name(),
            t.checked,
            t.total,
            opt(t.min_count),
            opt(t.argmin_n),
            opt(t.counterexample),
            opt(self.last_completed_n),
        )
    }
}

#[derive(Debug, Clone)]
pub struct DriverConfig {
    pub workers: usize,
    pub block_size: u64,
    pub checkpoint: Option<PathBuf>,
    /// write the checkpoint after at least this many newly completed `n`
    pub checkpoint_every: u64,
    /// stop after completing this `n`, leaving a checkpoint to resume from
    pub stop_at: Option<u64>,
    /// ignore an existing checkpoint
    pub restart: bool,
    /// use the pattern enumerator instead of the early-exit search in `exists` mode
    pub fast: bool,
    pub int: IntChoice,
}

impl Default for DriverConfig {
    fn default() -> Self {
        Self {
            workers: 1,
            block_size: 256,
            checkpoint: None,
            checkpoint_every: 10_000,
            stop_at: None,
            restart: false,
            fast: false,
            int: IntChoice::Auto,
        }
    }
}

/// Workers requested, capped by the environment variable when it is set.
pub fn effective_workers(requested: usize) -> Result<usize, CliError> {
    if requested == 0 {
        return Err(CliError::Usage("workers must be at least 1".into()));
    }
    match std::env::var(crate::MAX_WORKERS_ENV) {
        Ok(v) => {
            let cap: usize = v
                .parse()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| CliError::Usage(format!("{} must be a positive integer", crate::MAX_WORKERS_ENV)))?;
            Ok(requested.min(cap))
        }
        Err(_) => Ok(requested),
    }
}

fn evaluate<T: Natural>(spec: &RangeSpec, n: u64, fast: bool) -> Result<u64, CliError> {
    let f = Fraction::new(T::nat(spec.m), T::nat(n))?;
    let count = |f: &Fraction<T>| -> Result<u64, CliError> {
        Ok(match spec.k {
            2 => solve_two(f).len(),
            3 => enumerate3(f).len(),
            k => enumerate_k(f, k)?.len(),
        } as u64)
    };
    match spec.mode {
        Mode::Count => count(&f),
        Mode::Exists if spec.k == 3 && !fast => Ok(u64::from(first_solution3(&f).is_some())),
        Mode::Exists => Ok(count(&f)?.min(1)),
    }
}

/// Runs (or resumes) `spec`, calling `on_row(n, value)` in ascending `n` for
/// every newly completed `n`.
pub fn run_range(
    spec: &RangeSpec,
    config: &DriverConfig,
    mut on_row: impl FnMut(u64, u64) -> Result<(), CliError>,
) -> Result<(RunSummary, Option<u64>), CliError> {
    let workers = effective_workers(config.workers)?;
    if config.block_size == 0 {
        return Err(CliError::Usage("block size must be at least 1".into()));
    }
    let width = width::resolve(config.int, &BigUint::from(spec.m), &BigUint::from(spec.end), spec.k)?;

    let mut last: Option<u64> = None;
    let mut tally = Tally::default();
    let mut resumed_from = None;
    if let (Some(path), false) = (&config.checkpoint, config.restart) {
        if let Some(c) = RunCheckpoint::load(path)? {
            if &c.spec != spec {
                return Err(CliError::Usage(format!(
                    "checkpoint {} belongs to a different run; pass --restart to discard it",
                    path.display()
                )));
            }
            last = Some(c.last_completed_n);
            tally = c.tally;
            resumed_from = last;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let stop = config.stop_at.map_or(spec.end, |s| s.min(spec.end));
    let wave = config.block_size.saturating_mul(workers as u64 * 2);
    let mut written = last;

    let store = |last: Option<u64>, tally: &Tally| -> Result<(), CliError> {
        if let (Some(path), Some(n)) = (&config.checkpoint, last) {
            RunCheckpoint {
                spec: spec.clone(),
                last_completed_n: n,
                tally: tally.clone(),
            }
            .store(path)?;
        }
        Ok(())
    };

    while tally.counterexample.is_none() {
        let from = last.map_or(spec.start, |n| n + 1);
        if from > stop {
            break;
        }
        let to = from.saturating_add(wave - 1).min(stop);
        let blocks: Vec<(u64, u64)> = (0..)
            .map(|i| from + i * config.block_size)
            .take_while(|&b| b <= to)
            .map(|b| (b, (b + config.block_size - 1).min(to)))
            .collect();
        let results: Vec<Vec<u64>> = pool.install(|| {
            blocks
                .par_iter()
                .map(|&(lo, hi)| {
                    (lo..=hi)
                        .map(|n| with_width!(width, T => evaluate::<T>(spec, n, config.fast)))
                        .collect::<Result<Vec<u64>, CliError>>()
                })
                .collect::<Result<Vec<_>, CliError>>()
        })?;
        for (n, value) in (from..=to).zip(results.into_iter().flatten()) {
            tally.fold(spec.mode, n, value);
            last = Some(n);
            on_row(n, value)?;
            if tally.counterexample.is_some() {
                break;
            }
        }
        let since = last.unwrap_or(0) - written.unwrap_or(spec.start - 1);
        if since >= config.checkpoint_every {
            store(last, &tally)?;
            written = last;
        }
    }
    if written != last {
        store(last, &tally)?;
    }

    let status = if tally.counterexample.is_some() {
        Status::Counterexample
    } else if last == Some(spec.end) {
        Status::Complete
    } else {
        Status::Interrupted
    };
    Ok((
        RunSummary {
            spec: spec.clone(),
            last_completed_n: last,
            tally,
            status,
        },
        resumed_from,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: &RangeSpec, config: &DriverConfig) -> (RunSummary, Vec<(u64, u64)>) {
        let mut rows = Vec::new();
        let (s, _) = run_range(spec, config, |n, v| {
            rows.push((n, v));
            Ok(())
        })
        .unwrap();
        (s, rows)
    }

    #[test]
    fn counts_small_range() {
        let spec = RangeSpec::new(4, 3, 2, 100, Mode::Count).unwrap();
        let (s, rows) = run(
            &spec,
            &DriverConfig {
                block_size: 7,
                ..DriverConfig::default()
            },
        );
        assert_eq!(rows.len(), 99);
        assert_eq!(rows[1], (3, 3));
        assert_eq!(s.status, Status::Complete);
        assert_eq!(s.tally.checked, 99);
        assert_eq!(s.tally.total, rows.iter().map(|r| u128::from(r.1)).sum::<u128>());
    }

    #[test]
    fn worker_count_is_invisible() {
        let spec = RangeSpec::new(5, 3, 2, 300, Mode::Count).unwrap();
        let one = run(
            &spec,
            &DriverConfig {
                block_size: 16,
                ..DriverConfig::default()
            },
        );
        let four = run(
            &spec,
            &DriverConfig {
                workers: 4,
                block_size: 5,
                ..DriverConfig::default()
            },
        );
        assert_eq!(one, four);
    }

    #[test]
    fn exists_stops_at_counterexample() {
        // 7/n has no three-term split for n = 1, 2
        let spec = RangeSpec::new(7, 3, 1, 50, Mode::Exists).unwrap();
        let (s, rows) = run(&spec, &DriverConfig::default());
        assert_eq!(s.status, Status::Counterexample);
        assert_eq!(s.tally.counterexample, Some(1));
        assert_eq!(rows, vec![(1, 0)]);
    }

    #[test]
    fn resume_matches_cold_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck");
        let spec = RangeSpec::new(4, 3, 2, 400, Mode::Count).unwrap();
        let cold = run(&spec, &DriverConfig::default()).0;
        let base = DriverConfig {
            checkpoint: Some(path.clone()),
            checkpoint_every: 50,
            block_size: 9,
            ..DriverConfig::default()
        };
        let (first, rows_a) = run(
            &spec,
            &DriverConfig {
                stop_at: Some(201),
                ..base.clone()
            },
        );
        assert_eq!(first.status, Status::Interrupted);
        assert_eq!(first.last_completed_n, Some(201));
        let (second, rows_b) = run(
            &spec,
            &DriverConfig {
                workers: 3,
                ..base.clone()
            },
        );
        assert_eq!(second.render(), cold.render());
        assert_eq!(rows_a.len() + rows_b.len(), 399);
        assert_eq!(rows_b[0].0, 202);
    }

    #[test]
    fn mismatched_checkpoint_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck");
        let config = DriverConfig {
            checkpoint: Some(path),
            ..DriverConfig::default()
        };
        let a = RangeSpec::new(4, 3, 2, 20, Mode::Count).unwrap();
        run(&a, &config);
        let b = RangeSpec::new(4, 3, 2, 30, Mode::Count).unwrap();
        assert!(matches!(run_range(&b, &config, |_, _| Ok(())), Err(CliError::Usage(_))));
        assert!(run_range(
            &b,
            &DriverConfig {
                restart: true,
                ..config
            },
            |_, _| Ok(())
        )
        .is_ok());
    }
}
