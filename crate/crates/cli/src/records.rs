//! `SolutionRecord` output: JSON lines `{"m":..,"n":..,"k":..,"denominators":[..]}`
//! or CSV with columns `m,n,k,a1..ak`. Integers are written in full decimal.

use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;
use unitfrac_core::{Natural, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

pub struct RecordWriter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    header_k: Option<usize>,
    pub written: u64,
}

impl<'a> RecordWriter<'a> {
    /// For CSV the header for `k` columns is written immediately, so an empty
    /// result still yields a well-formed file.
    pub fn new(out: &'a mut dyn Write, format: Format, k: usize) -> io::Result<Self> {
        let mut w = Self {
            out,
            format,
            header_k: None,
            written: 0,
        };
        if format == Format::Csv {
            w.header(k)?;
        }
        Ok(w)
    }

    fn header(&mut self, k: usize) -> io::Result<()> {
        let cols: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
        writeln!(self.out, "m,n,k,{}", cols.join(","))?;
        self.header_k = Some(k);
        Ok(())
    }

    pub fn write<M: Display, N: Display, T: Natural>(&mut self, m: &M, n: &N, s: &Solution<T>) -> io::Result<()> {
        let dens: Vec<String> = s.denominators().iter().map(|a| a.to_string()).collect();
        match self.format {
            Format::Jsonl => writeln!(
                self.out,
                "{{\"m\":{m},\"n\":{n},\"k\":{},\"denominators\":[{}]}}",
                s.k(),
                dens.join(",")
            )?,
            Format::Csv => {
                if self.header_k != Some(s.k()) {
                    self.header(s.k())?;
                }
                writeln!(self.out, "{m},{n},{},{}", s.k(), dens.join(","))?
            }
        }
        self.written += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format) -> String {
        let mut buf = Vec::new();
        {
            let mut w = RecordWriter::new(&mut buf, format, 3).unwrap();
            w.write(&4, &3, &Solution::new(vec![12u64, 1, 4])).unwrap();
            w.write(&4, &3, &Solution::new(vec![2u64, 2, 3])).unwrap();
        }
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn jsonl_lines() {
        assert_eq!(
            render(Format::Jsonl),
            "{\"m\":4,\"n\":3,\"k\":3,\"denominators\":[1,4,12]}\n{\"m\":4,\"n\":3,\"k\":3,\"denominators\":[2,2,3]}\n"
        );
    }

    #[test]
    fn csv_rows() {
        assert_eq!(render(Format::Csv), "m,n,k,a1,a2,a3\n4,3,3,1,4,12\n4,3,3,2,2,3\n");
    }

    #[test]
    fn empty_csv_has_header() {
        let mut buf = Vec::new();
        RecordWriter::new(&mut buf, Format::Csv, 2).unwrap();
        assert_eq!(buf, b"m,n,k,a1,a2\n");
    }
}
