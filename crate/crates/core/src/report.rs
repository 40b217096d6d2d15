//! CSV and JSON encodings of metric tables, PR trials and α intervals.
//!
//! Floats are written in Rust's shortest round-trip form, so identical
//! inputs produce byte-identical files.

use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{MetricReport, METRIC_COLUMNS};
use crate::pareto::AlphaInterval;
use crate::pr_eval::PRResult;

pub const PR_COLUMNS: [&str; 7] = ["seed", "tp", "fp", "fn", "tn", "precision", "recall"];

/// One scored partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricRow {
    pub label: String,
    pub communities: usize,
    #[serde(flatten)]
    pub report: MetricReport,
    /// Set by comparisons; absent from plain metric tables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on_frontier: Option<bool>,
}

pub fn metric_header(with_frontier: bool) -> Vec<&'static str> {
    let mut header = vec!["label", "communities"];
    header.extend(METRIC_COLUMNS);
    header.push("null");
    if with_frontier {
        header.push("on_frontier");
    }
    header
}

pub fn write_metrics_csv<W: Write>(out: W, rows: &[MetricRow]) -> Result<()> {
    let with_frontier = rows.iter().any(|r| r.on_frontier.is_some());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(metric_header(with_frontier))?;
    for row in rows {
        let mut record = vec![row.label.clone(), row.communities.to_string()];
        record.extend(row.report.values().iter().map(f64::to_string));
        record.push(row.report.null_kind.to_string());
        if with_frontier {
            record.push(row.on_frontier.unwrap_or(false).to_string());
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_pr_csv<W: Write>(out: W, results: &[PRResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PR_COLUMNS)?;
    for r in results {
        w.write_record([
            r.seed.to_string(),
            r.tp.to_string(),
            r.fp.to_string(),
            r.fn_.to_string(),
            r.tn.to_string(),
            r.precision.to_string(),
            r.recall.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_intervals_csv<W: Write>(out: W, intervals: &[AlphaInterval]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["id", "lo", "hi"])?;
    for iv in intervals {
        w.write_record([iv.id.clone(), iv.lo.to_string(), iv.hi.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// A CSV table with a header, as read back for `pareto` and `envelope`.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ScoreTable {
    pub fn read<R: Read>(input: R) -> Result<ScoreTable> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(ScoreTable { header, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::InvalidParameter(format!("no column {name:?} in scores file")))
    }

    /// Row identifiers: the `label` or `id` column if present, else the
    /// first column.
    pub fn ids(&self) -> Vec<String> {
        let idx = self.column("label").or_else(|_| self.column("id")).unwrap_or(0);
        self.rows.iter().map(|r| r[idx].clone()).collect()
    }

    pub fn numbers(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self.column(name)?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r[idx].trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: i + 2,
                    message: format!("column {name:?}: {:?} is not a number", r[idx]),
                })
            })
            .collect()
    }

    pub fn write_rows<W: Write>(&self, out: W, keep: &[bool]) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for (row, &k) in self.rows.iter().zip(keep) {
            if k {
                w.write_record(row)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
