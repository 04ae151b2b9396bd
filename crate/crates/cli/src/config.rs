use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use ksnake_core::estimators::{Format, ReportTable, TOOL};

use crate::error::{CliError, CliResult};

/// Keys accepted in config files, matching the long flag names with `-`
/// replaced by `_`.
pub const KEYS: [&str; 20] = [
    "statistic",
    "dim",
    "law",
    "radius",
    "trials",
    "seed",
    "workers",
    "format",
    "out",
    "budget",
    "n",
    "lambda",
    "c",
    "eta",
    "m",
    "k",
    "function",
    "r_sample",
    "generations",
    "records",
];

/// Settings that never go into a report header: they decide where output
/// goes, not what it contains.
const NOT_RECORDED: [&str; 3] = ["out", "format", "records"];

/// Flat `key=value` settings: config file first, flags on top.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    /// Reads a config file. A ksnake report (CSV or JSONL) is accepted too,
    /// in which case its recorded configuration and seed are used.
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let mut s = Settings::default();
        let is_report = text.starts_with(&format!("# {TOOL} ")) || text.trim_start().starts_with('{');
        if is_report {
            let table = ReportTable::parse(&text)?;
            for (k, v) in table.config {
                s.set(&k, v)?;
            }
            s.set("seed", table.seed.to_string())?;
            return Ok(s);
        }
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
            s.set(k.trim(), v.trim().to_string())?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: String) -> CliResult<()> {
        let key = key.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown setting '{key}'")));
        }
        self.values.insert(key, value);
        Ok(())
    }

    pub fn overlay(&mut self, key: &str, value: Option<&String>) -> CliResult<()> {
        match value {
            Some(v) => self.set(key, v.clone()),
            None => Ok(()),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("bad value for {key}: '{v}'")))
            })
            .transpose()
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Trial counts may be written as `100000` or `1e5`.
    pub fn count(&self, key: &str, default: u64) -> CliResult<u64> {
        let Some(v) = self.raw(key) else {
            return Ok(default);
        };
        if let Ok(n) = v.parse::<u64>() {
            return Ok(n);
        }
        match v.parse::<f64>() {
            Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
            _ => Err(CliError::Usage(format!("bad value for {key}: '{v}'"))),
        }
    }

    pub fn seed(&self) -> CliResult<u64> {
        self.get("seed")?
            .ok_or_else(|| CliError::Usage("a seed is required (--seed or seed= in the config file)".into()))
    }

    pub fn format(&self) -> CliResult<Format> {
        Ok(self
            .get::<String>("format")?
            .as_deref()
            .unwrap_or("csv")
            .parse::<Format>()?)
    }

    pub fn u32_grid(&self, key: &str, default: &str) -> CliResult<Vec<u32>> {
        let text = self.raw(key).unwrap_or(default);
        parse_grid(text).map_err(|e| CliError::Usage(format!("{key}: {e}")))
    }

    pub fn f64_list(&self, key: &str, default: &str) -> CliResult<Vec<f64>> {
        let text = self.raw(key).unwrap_or(default);
        let out: Result<Vec<f64>, _> = text.split(',').map(|x| x.trim().parse::<f64>()).collect();
        match out {
            Ok(v) if !v.is_empty() => Ok(v),
            _ => Err(CliError::Usage(format!(
                "{key}: expected a comma-separated list of numbers, got '{text}'"
            ))),
        }
    }

    /// The single value of a grid setting that must not be a grid.
    pub fn single_u32(&self, key: &str, default: &str) -> CliResult<u32> {
        match self.u32_grid(key, default)?.as_slice() {
            [x] => Ok(*x),
            g => Err(CliError::Usage(format!("{key} takes a single value here, got {g:?}"))),
        }
    }

    /// What gets embedded in a report so that `--config <report>` reruns it.
    pub fn recorded(&self) -> Vec<(String, String)> {
        self.values
            .iter()
            .filter(|(k, _)| k.as_str() != "seed" && !NOT_RECORDED.contains(&k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Records a default so the report shows every value that was used.
    pub fn fill(&mut self, key: &str, default: &str) {
        self.values
            .entry(key.to_string())
            .or_insert_with(|| default.to_string());
    }
}

/// Parses `7`, `1,2,5`, `a:b:step` (arithmetic) or `a:b:xF` (geometric,
/// integer factor). Ranges include `b` when it is hit.
pub fn parse_grid(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let num = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad number '{s}' in '{text}'"))
        };
        let fields: Vec<&str> = part.split(':').collect();
        match fields.as_slice() {
            [x] => out.push(num(x)?),
            [a, b] | [a, b, ""] => out.extend(num(a)?..=num(b)?),
            [a, b, step] => {
                let (a, b) = (num(a)?, num(b)?);
                if let Some(f) = step.strip_prefix('x') {
                    let f = num(f)?;
                    if f < 2 || a == 0 {
                        return Err(format!("geometric grid needs a >= 1 and factor >= 2 in '{part}'"));
                    }
                    let mut x = u64::from(a);
                    while x <= u64::from(b) {
                        out.push(x as u32);
                        x *= u64::from(f);
                    }
                } else {
                    let s = num(step)?;
                    if s == 0 {
                        return Err(format!("zero step in '{part}'"));
                    }
                    out.extend((a..=b).step_by(s as usize));
                }
            }
            _ => return Err(format!("cannot parse grid '{part}'")),
        }
    }
    if out.is_empty() {
        return Err(format!("empty grid '{text}'"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("5").unwrap(), vec![5]);
        assert_eq!(parse_grid("1,3, 4").unwrap(), vec![1, 3, 4]);
        assert_eq!(parse_grid("10:30:10").unwrap(), vec![10, 20, 30]);
        assert_eq!(parse_grid("16:512:x2").unwrap(), vec![16, 32, 64, 128, 256, 512]);
        assert_eq!(parse_grid("1:3").unwrap(), vec![1, 2, 3]);
        assert!(parse_grid("3:1").is_err());
        assert!(parse_grid("1:5:0").is_err());
        assert!(parse_grid("a").is_err());
    }

    #[test]
    fn scientific_counts() {
        let mut s = Settings::default();
        s.set("trials", "1e5".into()).unwrap();
        assert_eq!(s.count("trials", 1).unwrap(), 100_000);
        s.set("trials", "2.5".into()).unwrap();
        assert!(s.count("trials", 1).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Settings::default().set("colour", "red".into()).is_err());
        assert!(Settings::default().set("r-sample", "4".into()).is_ok());
    }
}
