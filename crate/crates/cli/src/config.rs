//! Run configuration: a `key = value` file, then the environment, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

/// Names the cache directory when neither the file nor a flag does.
pub const CACHE_ENV: &str = "UQSP6_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Probe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub bound_uqneg: i32,
    pub bound_module: i32,
    pub bound_branch: i32,
    pub bound_crosscheck: i32,
    pub bound_radical: i32,
    pub lmax: u32,
    pub kmax: u32,
    /// `|i| ≤ scan_range` for branch and radical scans.
    pub scan_range: u32,
    /// `0 ≤ i_s ≤ theta_range` for the θ scans.
    pub theta_range: u32,
    pub i: Option<[u32; 3]>,
    pub mode: Mode,
    pub probes: usize,
    pub seed: u64,
    pub jacobi_count: usize,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    /// When false every `timing_ms` is 0, so reports are byte-identical.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            bound_uqneg: 10,
            bound_module: 8,
            bound_branch: 6,
            bound_crosscheck: 6,
            bound_radical: 5,
            lmax: 4,
            kmax: 4,
            scan_range: 1,
            theta_range: 3,
            i: None,
            mode: Mode::Probe,
            probes: 3,
            seed: 1,
            jacobi_count: 100,
            cache_dir: None,
            format: Format::Json,
            timing: true,
        }
    }
}

pub fn parse_index(s: &str) -> Result<[u32; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!("index must be i1,i2,i3, got `{s}`");
    }
    let mut out = [0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().with_context(|| format!("bad index component `{p}`"))?;
    }
    Ok(out)
}

fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => bail!("expected a boolean, got `{s}`"),
    }
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let int = || v.parse::<i64>().with_context(|| format!("`{key}` expects an integer, got `{v}`"));
        let nonneg = || -> Result<i64> {
            let n = int()?;
            if n < 0 {
                bail!("`{key}` must be ≥ 0");
            }
            Ok(n)
        };
        match key.trim() {
            "bound_uqneg" => self.bound_uqneg = nonneg()? as i32,
            "bound_module" => self.bound_module = nonneg()? as i32,
            "bound_branch" => self.bound_branch = nonneg()? as i32,
            "bound_crosscheck" => self.bound_crosscheck = nonneg()? as i32,
            "bound_radical" => self.bound_radical = nonneg()? as i32,
            "lmax" => self.lmax = nonneg()? as u32,
            "kmax" => self.kmax = nonneg()? as u32,
            "scan_range" => self.scan_range = nonneg()? as u32,
            "theta_range" => self.theta_range = nonneg()? as u32,
            "i" => self.i = Some(parse_index(v)?),
            "mode" => {
                self.mode = match v {
                    "exact" => Mode::Exact,
                    "probe" => Mode::Probe,
                    _ => bail!("mode must be exact or probe"),
                }
            }
            "probes" => self.probes = nonneg()? as usize,
            "seed" => self.seed = nonneg()? as u64,
            "jacobi_count" => self.jacobi_count = nonneg()? as usize,
            "cache_dir" => self.cache_dir = Some(PathBuf::from(v)),
            "format" => {
                self.format = match v {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    "text" => Format::Text,
                    _ => bail!("format must be json, csv or text"),
                }
            }
            "timing" => self.timing = parse_bool(v)?,
            other => bail!("unknown configuration key `{other}`"),
        }
        Ok(())
    }

    pub fn parse_file_contents(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key = value", n + 1);
            };
            self.set(k, v).with_context(|| format!("line {}", n + 1))?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut c = RunConfig::default();
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        c.parse_file_contents(&text)?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Probe && self.probes == 0 {
            bail!("probe mode needs probes ≥ 1");
        }
        Ok(())
    }

    /// The settings that affect results, as strings, for the report echo.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let v = serde_json::to_value(self).expect("config serializes");
        let mut out = BTreeMap::new();
        if let serde_json::Value::Object(m) = v {
            for (k, x) in m {
                out.insert(k, match x {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                });
            }
        }
        out
    }
}
