//! Tabular and structured reports, and ε-sweep specifications.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed header of delimited reports.
pub const CSV_HEADER: [&str; 8] = ["method", "metric", "eps", "sigma", "depsilon", "risk", "classifier", "degenerate"];

/// One report line. `depsilon` holds `D_ε` or, for bound methods, the
/// quantity the bound is computed from; `risk` holds the risk or its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskRow {
    pub method: String,
    pub metric: String,
    pub eps: f64,
    pub sigma: Option<f64>,
    pub depsilon: Option<f64>,
    pub risk: Option<f64>,
    /// Interval notation or halfspace coefficients.
    pub classifier: String,
    pub degenerate: bool,
    /// Boundary scalars, clamp flags and tolerances; JSON output only.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
}

impl RiskRow {
    pub fn new(method: impl Into<String>, metric: impl Into<String>, eps: f64) -> Self {
        Self {
            method: method.into(),
            metric: metric.into(),
            eps,
            sigma: None,
            depsilon: None,
            risk: None,
            classifier: String::new(),
            degenerate: false,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn diagnostic(mut self, key: impl Into<String>, value: f64) -> Self {
        self.diagnostics.insert(key.into(), value);
        self
    }
}

/// Rows of one command plus optional certificates (couplings, witnesses).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RiskReport {
    pub command: String,
    pub rows: Vec<RiskRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<serde_json::Value>,
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn parse_opt(s: &str, line: usize) -> Result<Option<f64>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::Parse { line, msg: format!("bad number `{s}`") })
}

impl RiskReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    /// Delimited rows under [`CSV_HEADER`]; floats print in shortest
    /// round-trip form.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Format(e.to_string());
        w.write_record(CSV_HEADER).map_err(io)?;
        for r in &self.rows {
            w.write_record([
                r.method.clone(),
                r.metric.clone(),
                r.eps.to_string(),
                opt(r.sigma),
                opt(r.depsilon),
                opt(r.risk),
                r.classifier.clone(),
                r.degenerate.to_string(),
            ])
            .map_err(io)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Format(e.to_string()))?)
            .map_err(|e| Error::Format(e.to_string()))
    }

    /// Rows back from [`RiskReport::to_csv`] output (diagnostics are not
    /// part of the table).
    pub fn rows_from_csv(text: &str) -> Result<Vec<RiskRow>> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?.clone();
        if header.iter().ne(CSV_HEADER) {
            return Err(Error::Parse { line: 1, msg: format!("unexpected header {header:?}") });
        }
        let mut rows = Vec::new();
        for (k, rec) in r.records().enumerate() {
            let line = k + 2;
            let rec = rec.map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            let eps = rec[2].parse().map_err(|_| Error::Parse { line, msg: format!("bad eps `{}`", &rec[2]) })?;
            let degenerate =
                rec[7].parse().map_err(|_| Error::Parse { line, msg: format!("bad flag `{}`", &rec[7]) })?;
            rows.push(RiskRow {
                method: rec[0].to_string(),
                metric: rec[1].to_string(),
                eps,
                sigma: parse_opt(&rec[3], line)?,
                depsilon: parse_opt(&rec[4], line)?,
                risk: parse_opt(&rec[5], line)?,
                classifier: rec[6].to_string(),
                degenerate,
                diagnostics: BTreeMap::new(),
            });
        }
        Ok(rows)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// `start:stop:steps`, inclusive and linearly spaced, or a comma-separated
/// list of values.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::Format(format!("sweep `{spec}`: {msg}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number")));
    let parts: Vec<&str> = spec.split(':').collect();
    let values = match parts.as_slice() {
        [start, stop, steps] => {
            let (a, b) = (num(start)?, num(stop)?);
            let n: usize = steps.trim().parse().map_err(|_| bad(format!("`{steps}` is not a step count")))?;
            match n {
                0 => return Err(bad("needs at least one step".into())),
                1 => vec![a],
                _ => (0..n).map(|k| if k + 1 == n { b } else { a + (b - a) * (k as f64) / ((n - 1) as f64) }).collect(),
            }
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(bad("expected start:stop:steps".into())),
    };
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(bad(format!("non-finite value {v}")));
    }
    Ok(values)
}
