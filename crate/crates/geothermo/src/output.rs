//! Deterministic CSV and JSON writers.
//!
//! CSV: header row, `,` separator, `.` decimal point, `\n` line ends, floats in
//! shortest round-trip form. JSON: pretty-printed with a trailing newline.
//! Schemas for every JSON document live in `schemas/`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::experiments::{CheckReport, Fig1Data, Fig2Data};

pub const FIG1_HEADER: [&str; 4] = [
    "T_f_over_omega",
    "minus_dOmega_exact",
    "minus_dOmega_geometric",
    "minus_dOmega_approx",
];

pub const CHECKS_HEADER: [&str; 5] = ["name", "kind", "worst", "tolerance", "pass"];

/// Column names of the wide engine table for the given hot temperatures.
pub fn fig2_header(t_hot: &[f64]) -> Vec<String> {
    let mut header = vec!["g_over_omega".to_string()];
    for &t in t_hot {
        header.push(format!("W_net_T2={}", format_float(t)));
        header.push(format!("kappa_T2={}", format_float(t)));
    }
    header
}

/// Shortest representation that parses back to the same value; `-0` is
/// written as `0`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:?}");
    s.strip_suffix(".0").map(str::to_owned).unwrap_or(s)
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn write_table<W, H>(w: W, header: &[H], rows: &[Vec<f64>]) -> Result<()>
where
    W: Write,
    H: AsRef<str>,
{
    let mut out = csv_writer(w);
    out.write_record(header.iter().map(|h| h.as_ref()))?;
    for row in rows {
        out.write_record(row.iter().map(|&x| format_float(x)))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn write_fig1_csv<W: Write>(w: W, data: &Fig1Data) -> Result<()> {
    let rows: Vec<Vec<f64>> = data
        .rows
        .iter()
        .map(|r| vec![r.t_f_over_omega, r.exact, r.geometric, r.approx])
        .collect();
    write_table(w, &FIG1_HEADER, &rows)
}

pub fn write_fig2_csv<W: Write>(w: W, data: &Fig2Data) -> Result<()> {
    write_table(w, &fig2_header(&data.metadata.t2), &data.wide_rows())
}

pub fn write_checks_csv<W: Write>(w: W, report: &CheckReport) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(CHECKS_HEADER)?;
    for c in &report.checks {
        let kind = match c.kind {
            crate::experiments::CheckKind::Residual => "residual",
            crate::experiments::CheckKind::Slack => "slack",
        };
        out.write_record([
            c.name.as_str(),
            kind,
            &format_float(c.worst),
            &format_float(c.tolerance),
            if c.pass { "true" } else { "false" },
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `<path>.meta.json` next to a CSV file.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Buffered file at `path`, or stdout.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}
