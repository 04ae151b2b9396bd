//! Report rows and their CSV / JSONL forms.
//!
//! Every artifact starts with metadata (tool version, command, seed and the
//! full configuration). CSV carries it as `#` comment lines and JSONL as a
//! first object with `"kind": "meta"`. The `wall_time_s` column is the only
//! field that differs between reruns of the same configuration.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::stats::Estimate;
use crate::error::{Error, Result};

pub const TOOL: &str = "ksnake";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const COLUMNS: [&str; 14] = [
    "statistic",
    "law",
    "d",
    "r",
    "param",
    "param_value",
    "estimate",
    "variance",
    "half_width",
    "ci_low",
    "ci_high",
    "trials",
    "seed",
    "wall_time_s",
];

/// One statistic at one parameter combination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub statistic: String,
    pub law: String,
    pub d: Option<u32>,
    pub r: Option<u32>,
    pub param: Option<String>,
    pub param_value: Option<f64>,
    pub estimate: f64,
    /// Per-trial variance; absent for exact or derived quantities.
    pub variance: Option<f64>,
    pub half_width: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub wall_time_s: f64,
}

impl EstimateReport {
    pub fn new(statistic: &str, law: &str, seed: u64) -> Self {
        EstimateReport {
            statistic: statistic.to_string(),
            law: law.to_string(),
            d: None,
            r: None,
            param: None,
            param_value: None,
            estimate: f64::NAN,
            variance: None,
            half_width: None,
            trials: 0,
            seed,
            wall_time_s: 0.0,
        }
    }

    pub fn dim(mut self, d: u32) -> Self {
        self.d = Some(d);
        self
    }

    pub fn radius(mut self, r: u32) -> Self {
        self.r = Some(r);
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.param = Some(name.to_string());
        self.param_value = Some(value);
        self
    }

    pub fn estimate(mut self, e: Estimate) -> Self {
        self.estimate = e.value;
        self.variance = Some(e.variance);
        self.half_width = Some(e.half_width);
        self.trials = e.trials;
        self
    }

    pub fn exact(mut self, value: f64, trials: u64) -> Self {
        self.estimate = value;
        self.variance = None;
        self.half_width = None;
        self.trials = trials;
        self
    }

    pub fn as_estimate(&self) -> Option<Estimate> {
        Some(Estimate {
            value: self.estimate,
            variance: self.variance?,
            half_width: self.half_width?,
            trials: self.trials,
        })
    }

    pub fn ci(&self) -> Option<(f64, f64)> {
        self.half_width.map(|h| (self.estimate - h, self.estimate + h))
    }
}

/// Rows of one run plus what is needed to reproduce them.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportTable {
    pub command: String,
    pub seed: u64,
    pub config: Vec<(String, String)>,
    pub rows: Vec<EstimateReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(Error::invalid(format!("unknown format '{s}' (csv or jsonl)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        })
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn parse_opt<T: FromStr>(s: &str, what: &str) -> Result<Option<T>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| Error::Parse(format!("bad {what} value '{s}'")))
}

impl ReportTable {
    pub fn new(command: &str, seed: u64, config: Vec<(String, String)>) -> Self {
        ReportTable {
            command: command.to_string(),
            seed,
            config,
            rows: Vec::new(),
        }
    }

    pub fn set_wall_time(&mut self, elapsed: Duration) {
        for row in &mut self.rows {
            row.wall_time_s = elapsed.as_secs_f64();
        }
    }

    pub fn find(&self, statistic: &str) -> impl Iterator<Item = &EstimateReport> + '_ {
        let statistic = statistic.to_string();
        self.rows.iter().filter(move |r| r.statistic == statistic)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Jsonl => Ok(self.to_jsonl()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!("# {TOOL} {VERSION}\n# command={}\n# seed={}\n", self.command, self.seed);
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(COLUMNS).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.statistic.clone(),
                r.law.clone(),
                opt(&r.d),
                opt(&r.r),
                opt(&r.param),
                opt(&r.param_value),
                r.estimate.to_string(),
                opt(&r.variance),
                opt(&r.half_width),
                r.ci().map(|c| c.0.to_string()).unwrap_or_default(),
                r.ci().map(|c| c.1.to_string()).unwrap_or_default(),
                r.trials.to_string(),
                r.seed.to_string(),
                r.wall_time_s.to_string(),
            ])
            .map_err(csv_err)?;
        }
        let body = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        out.push_str(&String::from_utf8_lossy(&body));
        Ok(out)
    }

    pub fn to_jsonl(&self) -> String {
        let config: serde_json::Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
            .collect();
        let meta = serde_json::json!({
            "kind": "meta",
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "config": config,
        });
        let mut out = meta.to_string();
        out.push('\n');
        for r in &self.rows {
            let mut v = serde_json::to_value(r).unwrap_or(Value::Null);
            if let (Value::Object(m), Some((lo, hi))) = (&mut v, r.ci()) {
                m.insert("ci_low".into(), Value::from(lo));
                m.insert("ci_high".into(), Value::from(hi));
            }
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Reads either format back.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_jsonl(text)
        } else {
            Self::from_csv(text)
        }
    }

    fn from_csv(text: &str) -> Result<Self> {
        let mut table = ReportTable::new("", 0, Vec::new());
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let body = line.trim_start_matches('#').trim();
            if let Some((k, v)) = body.split_once('=') {
                match k {
                    "command" => table.command = v.to_string(),
                    "seed" => table.seed = v.parse().map_err(|_| Error::Parse(format!("bad seed '{v}'")))?,
                    _ => table.config.push((k.to_string(), v.to_string())),
                }
            }
        }
        let mut rd = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let header: Vec<String> = rd.headers().map_err(csv_err)?.iter().map(String::from).collect();
        if header != COLUMNS {
            return Err(Error::Parse(format!("unexpected columns {header:?}")));
        }
        for rec in rd.records() {
            let rec = rec.map_err(csv_err)?;
            let f = |i: usize| rec.get(i).unwrap_or("");
            table.rows.push(EstimateReport {
                statistic: f(0).to_string(),
                law: f(1).to_string(),
                d: parse_opt(f(2), "d")?,
                r: parse_opt(f(3), "r")?,
                param: parse_opt(f(4), "param")?,
                param_value: parse_opt(f(5), "param_value")?,
                estimate: parse_opt(f(6), "estimate")?.unwrap_or(f64::NAN),
                variance: parse_opt(f(7), "variance")?,
                half_width: parse_opt(f(8), "half_width")?,
                trials: parse_opt(f(11), "trials")?.unwrap_or(0),
                seed: parse_opt(f(12), "seed")?.unwrap_or(0),
                wall_time_s: parse_opt(f(13), "wall_time_s")?.unwrap_or(0.0),
            });
        }
        Ok(table)
    }

    fn from_jsonl(text: &str) -> Result<Self> {
        let mut table = ReportTable::new("", 0, Vec::new());
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
            if v.get("kind").and_then(Value::as_str) == Some("meta") {
                table.command = v["command"].as_str().unwrap_or_default().to_string();
                table.seed = v["seed"].as_u64().unwrap_or(0);
                if let Some(m) = v["config"].as_object() {
                    table.config = m
                        .iter()
                        .map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string()))
                        .collect();
                }
            } else {
                table
                    .rows
                    .push(serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
        Ok(table)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
