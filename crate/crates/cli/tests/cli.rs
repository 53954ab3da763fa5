use std::process::Command;

use uqsp6_cli::cache::{Cache, Lookup};
use uqsp6_cli::config::{parse_index, Format, Mode, RunConfig};
use uqsp6_cli::report::Outcome;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uqsp6"))
}

#[test]
fn config_file_and_errors() {
    let mut c = RunConfig::default();
    c.parse_file_contents("# comment\nbound_branch = 4\nmode=exact\nformat = csv  # trailing\ni = 1,0,2\ntiming = off\n").unwrap();
    assert_eq!(c.bound_branch, 4);
    assert_eq!(c.mode, Mode::Exact);
    assert_eq!(c.format, Format::Csv);
    assert_eq!(c.i, Some([1, 0, 2]));
    assert!(!c.timing);
    assert!(RunConfig::default().parse_file_contents("nonsense").is_err());
    assert!(RunConfig::default().parse_file_contents("bogus = 1").is_err());
    assert!(RunConfig::default().parse_file_contents("bound_radical = -1").is_err());
    assert!(parse_index("1,2").is_err());
    let mut p = RunConfig::default();
    p.probes = 0;
    assert!(p.validate().is_err());
    assert_eq!(RunConfig::default().echo()["seed"], "1");
}

#[test]
fn cache_roundtrip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let key = Cache::key("kind", "params", "v1");
    assert_ne!(key, Cache::key("kind", "params", "v2"));
    assert_eq!(cache.get(&key), Lookup::Miss);
    cache.put(&key, "{\"x\":1}").unwrap();
    assert_eq!(cache.get(&key), Lookup::Hit("{\"x\":1}".into()));
    let path = cache.path(&key);
    let text = std::fs::read_to_string(&path).unwrap().replace("\"x\":1", "\"x\":2");
    std::fs::write(&path, text).unwrap();
    assert_eq!(cache.get(&key), Lookup::Corrupt);
    // No temporary files are left behind.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn outcome_assertions() {
    let mut o = Outcome::default();
    o.assert("a", true);
    assert!(o.passed());
    o.assert("b", false);
    assert!(!o.passed());
}

#[test]
fn branch_report_schema() {
    let out = bin().args(["branch", "--i", "0,0,0", "--bound", "6", "--no-timing"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["command", "config_echo", "code_version", "findings", "assertions", "timing_ms", "predicted", "observed", "gram_det_nonzero", "multiplicities"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["observed"], serde_json::json!([[0, 0, 1], [1, 0, 0]]));
    assert_eq!(v["gram_det_nonzero"], true);
    assert_eq!(v["timing_ms"], 0);
}

#[test]
fn cold_and_cached_runs_match() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = bin()
            .args(["crosscheck", "--i", "0,0,0", "--probes", "2", "--bound", "5", "--no-timing"])
            .env("UQSP6_CACHE_DIR", dir.path())
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let cold = run();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = run();
    assert_eq!(cold, warm);
    // A damaged entry is recomputed.
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "0000\n{}").unwrap();
    assert_eq!(run(), cold);
    let v: serde_json::Value = serde_json::from_slice(&cold).unwrap();
    assert_eq!(v["probes"].as_array().unwrap().len(), 2);
    assert_eq!(v["probes"][0]["agrees_up_to_k2rho"], true);
}

#[test]
fn csv_and_text_outputs() {
    let out = bin().args(["character", "--bound", "3", "--format", "csv"]).output().unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("offset_a1,offset_a2,offset_a3,dim"));
    assert_eq!(lines.next(), Some("0,0,0,1"));
    let out = bin().args(["identities", "--format", "text", "--no-timing"]).output().unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(s.lines().count(), uqsp6::uqneg::catalog_keys().len());
    assert!(s.lines().all(|l| l.contains("holds=true") || l.starts_with("f1_delta_theta_section2")));
}

#[test]
fn usage_errors() {
    let out = bin().args(["branch", "--i", "1,2"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["crosscheck", "--probes", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["nope"]).output().unwrap();
    assert!(!out.status.success());
}
