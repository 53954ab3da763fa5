//! Driver for the `uqsp6` suites: configuration, caching and reports.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::time::Instant;

use anyhow::Result;
use serde_json::{json, Value};

use cache::{Cache, Lookup};
use config::{Format, RunConfig};
use report::{code_version, render_json, Outcome};

/// Runs one command with the cache, returning the rendered output and
/// whether all hard assertions passed.
pub fn run(command: &str, c: &RunConfig) -> Result<(String, bool)> {
    c.validate()?;
    let start = Instant::now();
    let o = if command == "report-all" { report_all(c)? } else { cached(command, c)? };
    let ms = if c.timing { start.elapsed().as_millis() as u64 } else { 0 };
    let body = match c.format {
        Format::Json => render_json(command, &c.echo(), &o, ms),
        Format::Csv => o.csv.clone().unwrap_or_else(|| render_json(command, &c.echo(), &o, ms)),
        Format::Text => o.text.clone().unwrap_or_else(|| text_summary(&o)),
    };
    Ok((body, o.passed()))
}

fn text_summary(o: &Outcome) -> String {
    let mut out = Vec::new();
    for a in &o.assertions {
        out.push(format!("{}\t{}", if a.pass { "pass" } else { "FAIL" }, a.name));
    }
    for f in &o.findings {
        out.push(format!("finding\t{f}"));
    }
    out.join("\n")
}

fn cached(command: &str, c: &RunConfig) -> Result<Outcome> {
    let Some(dir) = &c.cache_dir else {
        return commands::run_named(command, c);
    };
    let cache = Cache::new(dir)?;
    let params = serde_json::to_string(&c.echo())?;
    let key = Cache::key(command, &params, &code_version());
    if let Lookup::Hit(body) = cache.get(&key) {
        if let Ok(o) = serde_json::from_str::<Outcome>(&body) {
            return Ok(o);
        }
    }
    let o = commands::run_named(command, c)?;
    cache.put(&key, &serde_json::to_string(&o)?)?;
    Ok(o)
}

fn report_all(c: &RunConfig) -> Result<Outcome> {
    let mut all = Outcome::default();
    let mut reports = serde_json::Map::new();
    for cmd in commands::COMMANDS.iter().filter(|x| **x != "report-all") {
        let o = cached(cmd, c)?;
        for a in &o.assertions {
            all.assert(format!("{cmd}: {}", a.name), a.pass);
        }
        for f in &o.findings {
            all.finding(json!({"command": cmd, "finding": f}));
        }
        reports.insert(cmd.to_string(), Value::Object(o.data));
    }
    all.set("reports", Value::Object(reports));
    Ok(all)
}
