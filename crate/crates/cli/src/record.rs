//! Machine-readable command output and its JSON, CSV and table renderings.

use std::io::{self, Write};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use urnlab::montecarlo::{FrequencyTable, SimulationReport, ORDERED_LABELS};
use urnlab::Rational;

pub const APPROX_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// An exact value with a 12-significant-digit decimal approximation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: Rational,
    pub approx: f64,
}

impl From<Rational> for ExactValue {
    fn from(exact: Rational) -> Self {
        let approx = exact
            .to_significant(APPROX_DIGITS)
            .parse()
            .expect("decimal rendering parses as f64");
        Self { exact, approx }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: IndexMap<String, String>,
    pub results: IndexMap<String, ExactValue>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub checks: IndexMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goodness_of_fit: Option<FrequencyTable>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: IndexMap::new(),
            results: IndexMap::new(),
            checks: IndexMap::new(),
            simulation: None,
            goodness_of_fit: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn result(&mut self, key: impl Into<String>, value: Rational) {
        self.results.insert(key.into(), value.into());
    }

    pub fn check(&mut self, key: &str, passed: bool) {
        self.checks.insert(key.to_string(), passed);
    }

    /// True when every check, simulation verdict and goodness-of-fit verdict passed.
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&c| c)
            && self.simulation.as_ref().is_none_or(|s| s.all_passed())
            && self.goodness_of_fit.as_ref().is_none_or(|g| g.verdict.passed())
    }
}

pub fn to_json(record: &OutputRecord) -> String {
    serde_json::to_string(record).expect("records serialize")
}

pub fn from_json(s: &str) -> serde_json::Result<OutputRecord> {
    serde_json::from_str(s)
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Writes `records` in `format`. For CSV, records sharing a command share one header.
pub fn render<W: Write>(records: &[OutputRecord], format: Format, mut out: W) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", to_json(r))?;
            }
            Ok(())
        }
        Format::Csv => render_csv(records, out),
        Format::Table => {
            for r in records {
                render_table(r, &mut out)?;
            }
            Ok(())
        }
    }
}

fn render_csv<W: Write>(records: &[OutputRecord], out: W) -> io::Result<()> {
    let mut w = csv_writer(out);
    let Some(first) = records.first() else {
        return Ok(());
    };
    if first.simulation.is_some() {
        // Simulation output is one row per record.
        w.write_record([
            "model", "n", "seed", "trials", "conditioning_hits", "successes", "estimate",
            "exact_target", "standard_error", "z_score", "z_threshold", "verdict",
            "chi_square", "chi_square_critical",
        ])
        .map_err(csv_err)?;
        for r in records {
            let s = r.simulation.as_ref().expect("simulate records carry a report");
            let (chi, crit) = r
                .goodness_of_fit
                .as_ref()
                .map(|g| (g.chi_square.to_string(), g.critical_value.to_string()))
                .unwrap_or_default();
            w.write_record([
                s.model.kind.name().to_string(),
                s.model.n.to_string(),
                s.seed.to_string(),
                s.trials.to_string(),
                s.conditioning_hits.to_string(),
                s.successes.to_string(),
                s.estimate.to_string(),
                s.exact_target.to_string(),
                s.standard_error.to_string(),
                s.z_score.to_string(),
                s.z_threshold.to_string(),
                format!("{:?}", s.verdict).to_lowercase(),
                chi,
                crit,
            ])
            .map_err(csv_err)?;
        }
    } else {
        // Leading columns are the record's own parameters, so sweep rows carry n and method.
        let keys: Vec<&String> = first.parameters.keys().collect();
        let mut header: Vec<&str> = keys.iter().map(|k| k.as_str()).collect();
        header.extend(["name", "exact", "approx"]);
        w.write_record(&header).map_err(csv_err)?;
        for r in records {
            for (name, v) in &r.results {
                let mut row: Vec<String> = keys
                    .iter()
                    .map(|k| r.parameters.get(*k).cloned().unwrap_or_default())
                    .collect();
                row.extend([name.clone(), v.exact.to_string(), v.approx.to_string()]);
                w.write_record(&row).map_err(csv_err)?;
            }
        }
    }
    w.flush()
}

fn render_table<W: Write>(r: &OutputRecord, out: &mut W) -> io::Result<()> {
    let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "{} {}", r.command, params.join(" "))?;
    let width = r.results.keys().map(|k| k.len()).max().unwrap_or(0);
    for (name, v) in &r.results {
        writeln!(out, "  {name:<width$}  {:>14}  ≈ {}", v.exact.to_string(), v.approx)?;
    }
    for (name, passed) in &r.checks {
        writeln!(out, "  check {name}: {}", if *passed { "pass" } else { "FAIL" })?;
    }
    if let Some(s) = &r.simulation {
        writeln!(
            out,
            "  simulation {} n={} seed={} trials={}",
            s.model.kind, s.model.n, s.seed, s.trials
        )?;
        writeln!(
            out,
            "    estimate {:.6} (target {} ≈ {:.6}, {} of {} conditioned trials)",
            s.estimate,
            s.exact_target,
            s.exact_target.to_f64(),
            s.successes,
            s.conditioning_hits
        )?;
        writeln!(
            out,
            "    se {:.3e}  z {:+.3}  |z| <= {}: {:?}",
            s.standard_error, s.z_score, s.z_threshold, s.verdict
        )?;
        if let Some(c) = &s.conditioning {
            writeln!(
                out,
                "    first ball red in {:.6} of trials (target {}), z {:+.3}: {:?}",
                c.estimate, c.exact_target, c.z_score, c.verdict
            )?;
        }
    }
    if let Some(g) = &r.goodness_of_fit {
        writeln!(out, "  ordered outcomes over {} trials", g.trials)?;
        let expected = g.expected.entries();
        for (i, label) in ORDERED_LABELS.iter().enumerate() {
            writeln!(
                out,
                "    {label}  {:>9}  {:.6}  (exact {})",
                g.counts[i], g.frequencies[i], expected[i].1
            )?;
        }
        writeln!(
            out,
            "    chi-square {:.3} on {} df, critical {:.3}: {:?}",
            g.chi_square, g.degrees_of_freedom, g.critical_value, g.verdict
        )?;
    }
    Ok(())
}
