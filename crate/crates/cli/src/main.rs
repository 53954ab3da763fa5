use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uqsp6_cli::config::{parse_index, RunConfig, CACHE_ENV};

#[derive(Parser)]
#[command(name = "uqsp6", about = "Exact checks for U_q(sp(6)) modules, forms and projectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides any configuration key, as key=value. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, global = true, value_parser = ["exact", "probe"])]
    mode: Option<String>,
    #[arg(long, global = true)]
    probes: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_parser = ["json", "csv", "text"])]
    format: Option<String>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Report timing_ms = 0 so output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Index triple i1,i2,i3.
    #[arg(long, global = true, value_parser = parse_index)]
    i: Option<[u32; 3]>,
    /// Height bound for the selected command.
    #[arg(long, global = true)]
    bound: Option<i32>,
    #[arg(long, global = true)]
    lmax: Option<u32>,
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Scan range for index sweeps.
    #[arg(long, global = true)]
    range: Option<u32>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Identity catalogue, one line per entry.
    Identities,
    /// Norm table of f2^l f_theta^k 1.
    Norms,
    /// Weight multiplicities as CSV.
    Character,
    /// Singular vectors of V tensor L(zeta).
    Branch,
    /// Theta eigenvalue table and scans.
    Theta,
    /// Pullback form against the inverse shifted projector.
    Crosscheck,
    /// Radicals of the pseudo-parabolic modules.
    RadicalScan,
    /// Every suite.
    ReportAll,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Identities => "identities",
            Command::Norms => "norms",
            Command::Character => "character",
            Command::Branch => "branch",
            Command::Theta => "theta",
            Command::Crosscheck => "crosscheck",
            Command::RadicalScan => "radical-scan",
            Command::ReportAll => "report-all",
        }
    }
}

fn config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if c.cache_dir.is_none() {
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            c.cache_dir = Some(PathBuf::from(d));
        }
    }
    for kv in &cli.set {
        let Some((k, v)) = kv.split_once('=') else {
            anyhow::bail!("--set expects key=value, got `{kv}`");
        };
        c.set(k, v)?;
    }
    if let Some(m) = &cli.mode {
        c.set("mode", m)?;
    }
    if let Some(p) = cli.probes {
        c.probes = p;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(f) = &cli.format {
        c.set("format", f)?;
    }
    if let Some(d) = &cli.cache_dir {
        c.cache_dir = Some(d.clone());
    }
    if cli.no_timing {
        c.timing = false;
    }
    if cli.i.is_some() {
        c.i = cli.i;
    }
    if let Some(b) = cli.bound {
        anyhow::ensure!(b >= 0, "--bound must be ≥ 0");
        match cli.command {
            Command::Identities => c.bound_uqneg = b,
            Command::Character => c.bound_module = b,
            Command::Branch => c.bound_branch = b,
            Command::Crosscheck => c.bound_crosscheck = b,
            Command::RadicalScan => c.bound_radical = b,
            _ => {}
        }
    }
    if let Some(l) = cli.lmax {
        c.lmax = l;
    }
    if let Some(k) = cli.kmax {
        c.kmax = k;
    }
    if let Some(r) = cli.range {
        match cli.command {
            Command::Theta => c.theta_range = r,
            _ => c.scan_range = r,
        }
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("usage error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match uqsp6_cli::run(cli.command.name(), &c) {
        Ok((out, pass)) => {
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout(), "{}", out.trim_end());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
