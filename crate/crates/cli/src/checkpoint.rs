//! The range-run checkpoint: a `key=value` text file replaced atomically by
//! writing a sibling temp file and renaming it over the target.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::verify::{Mode, RangeSpec, Tally};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunCheckpoint {
    pub spec: RangeSpec,
    /// every `n` in `start..=last_completed_n` is folded into `tally`
    pub last_completed_n: u64,
    pub tally: Tally,
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn parse_opt(v: &str) -> Result<Option<u64>, String> {
    if v == "none" {
        Ok(None)
    } else {
        v.parse().map(Some).map_err(|_| format!("bad value {v:?}"))
    }
}

impl RunCheckpoint {
    pub fn render(&self) -> String {
        let s = &self.spec;
        let t = &self.tally;
        let mut out = String::new();
        let _ = writeln!(out, "version={CHECKPOINT_VERSION}");
        let _ = writeln!(out, "m={}", s.m);
        let _ = writeln!(out, "k={}", s.k);
        let _ = writeln!(out, "range={}..{}", s.start, s.end);
        let _ = writeln!(out, "mode={}", s.mode.name());
        let _ = writeln!(out, "last_completed_n={}", self.last_completed_n);
        let _ = writeln!(out, "checked={}", t.checked);
        let _ = writeln!(out, "total={}", t.total);
        let _ = writeln!(out, "min_count={}", opt(t.min_count));
        let _ = writeln!(out, "argmin_n={}", opt(t.argmin_n));
        let _ = writeln!(out, "counterexample={}", opt(t.counterexample));
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut kv = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| format!("malformed line {line:?}"))?;
            kv.insert(k, v);
        }
        let get = |key: &str| kv.get(key).copied().ok_or_else(|| format!("missing key {key}"));
        let num = |key: &str| -> Result<u64, String> { get(key)?.parse().map_err(|_| format!("bad value for {key}")) };
        if num("version")? != u64::from(CHECKPOINT_VERSION) {
            return Err(format!("unsupported checkpoint version {}", get("version")?));
        }
        let (start, end) = get("range")?
            .split_once("..")
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or("bad range")?;
        let mode = Mode::from_name(get("mode")?).ok_or("bad mode")?;
        let spec = RangeSpec::new(num("m")?, num("k")? as usize, start, end, mode)?;
        let last_completed_n = num("last_completed_n")?;
        if !(start..=end).contains(&last_completed_n) {
            return Err(format!("last_completed_n={last_completed_n} outside {start}..{end}"));
        }
        let tally = Tally {
            checked: num("checked")?,
            total: get("total")?.parse().map_err(|_| "bad total")?,
            min_count: parse_opt(get("min_count")?)?,
            argmin_n: parse_opt(get("argmin_n")?)?,
            counterexample: parse_opt(get("counterexample")?)?,
        };
        if tally.checked != last_completed_n - start + 1 {
            return Err("checked count does not match last_completed_n".into());
        }
        Ok(Self {
            spec,
            last_completed_n,
            tally,
        })
    }

    pub fn load(path: &Path) -> Result<Option<Self>, CliError> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text)
                .map(Some)
                .map_err(|e| CliError::Usage(format!("checkpoint {}: {e}", path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn store(&self, path: &Path) -> Result<(), CliError> {
        let tmp = temp_path(path);
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunCheckpoint {
        RunCheckpoint {
            spec: RangeSpec::new(4, 3, 2, 1000, Mode::Count).unwrap(),
            last_completed_n: 500,
            tally: Tally {
                checked: 499,
                total: 12345,
                min_count: Some(1),
                argmin_n: Some(2),
                counterexample: None,
            },
        }
    }

    #[test]
    fn round_trip() {
        let c = sample();
        let text = c.render();
        assert!(text.starts_with("version=1\nm=4\nk=3\nrange=2..1000\n"));
        assert!(text.contains("last_completed_n=500\n"));
        assert_eq!(RunCheckpoint::parse(&text).unwrap(), c);
    }

    #[test]
    fn rejects_inconsistent_files() {
        let text = sample().render();
        assert!(RunCheckpoint::parse(&text.replace("version=1", "version=2")).is_err());
        assert!(RunCheckpoint::parse(&text.replace("last_completed_n=500", "last_completed_n=5000")).is_err());
        assert!(RunCheckpoint::parse(&text.replace("checked=499", "checked=10")).is_err());
        assert!(RunCheckpoint::parse(&text.replace("range=2..1000\n", "")).is_err());
    }

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        assert_eq!(RunCheckpoint::load(&path).unwrap(), None);
        sample().store(&path).unwrap();
        assert_eq!(RunCheckpoint::load(&path).unwrap(), Some(sample()));
        assert!(!temp_path(&path).exists());
    }
}
