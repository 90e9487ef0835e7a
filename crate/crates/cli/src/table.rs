//! Tabular output as CSV or JSON.

use std::collections::BTreeMap;
use std::io::Write;

use discrete_hardy::precision::decimal_digits;
use discrete_hardy::verification::{Verdict, VerificationReport};
use rug::Float;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    Real(Float),
    Small(f64),
    Text(String),
    Empty,
}

impl Cell {
    /// Decimal text with `ceil(bits · log10 2)` significant digits for reals.
    pub fn decimal(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Real(x) => x.to_string_radix(10, Some(decimal_digits(x.prec()))),
            Cell::Small(x) => format!("{x:e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Empty => Value::Null,
            _ => Value::String(self.decimal()),
        }
    }
}

impl From<Float> for Cell {
    fn from(x: Float) -> Self {
        Cell::Real(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

/// Result of one command: a table plus the reports that decide the verdict.
#[derive(Debug, Clone)]
pub struct Output {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub reports: Vec<VerificationReport>,
    pub precision_bits: u32,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    command: &'a str,
    params: &'a BTreeMap<String, String>,
    rows: Vec<Map<String, Value>>,
    verdict: Verdict,
    max_residual: f64,
    precision_bits: u32,
    seed: Option<u64>,
    reports: &'a [VerificationReport],
}

impl Output {
    pub fn new(command: &str, columns: Vec<&'static str>, precision_bits: u32) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            columns,
            rows: Vec::new(),
            reports: Vec::new(),
            precision_bits,
            seed: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }

    pub fn verdict(&self) -> Verdict {
        if self.passed() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.reports
            .iter()
            .map(|r| r.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::decimal))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut m = Map::new();
                        for (col, cell) in self.columns.iter().zip(row) {
                            m.insert((*col).to_string(), cell.json());
                            if let Cell::Real(x) = cell {
                                m.insert(
                                    format!("{col}_hex"),
                                    Value::String(x.to_string_radix(16, None)),
                                );
                            }
                        }
                        m
                    })
                    .collect();
                let doc = JsonOutput {
                    command: &self.command,
                    params: &self.params,
                    rows,
                    verdict: self.verdict(),
                    max_residual: self.max_residual(),
                    precision_bits: self.precision_bits,
                    seed: self.seed,
                    reports: &self.reports,
                };
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }

    /// Failed reports with their witnesses, and flags of every report.
    pub fn write_diagnostics(&self, err: &mut dyn Write) -> std::io::Result<()> {
        for r in &self.reports {
            for f in &r.flags {
                writeln!(err, "note: {}: {f}", r.name)?;
            }
            if r.passed() {
                continue;
            }
            writeln!(
                err,
                "FAIL {} [{}]: {} failures, max residual {:e} (tolerance {:e})",
                r.name, r.range, r.failures, r.max_residual, r.tolerance
            )?;
            for w in &r.witnesses {
                writeln!(err, "  witness n={} lhs={} rhs={}", w.index, w.lhs, w.rhs)?;
            }
        }
        Ok(())
    }
}
