//! `opgf`: list, verify and batch-check operational generating-function identities.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use opgf_core::registry::{
    parse_config, parse_point, registry_list, run_all, verify_identity, BatchConfig, BatchOutput,
    Params, Perturbation, Report, Summary,
};

#[derive(Parser)]
#[command(
    name = "opgf",
    version,
    about = "Exact verification of generating-function identities for orthogonal polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered identities.
    List,
    /// Verify one identity at one parameter point.
    Verify {
        /// Identity id, e.g. `H2`.
        #[arg(long)]
        id: String,
        /// Parameter assignment `name=p/q`; repeatable. Missing parameters take defaults.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Highest coefficient index checked.
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Add DELTA to coefficient INDEX of A, R or F before verifying (`A:3:1/2`).
        #[arg(long, hide = true, value_name = "TARGET:INDEX:DELTA")]
        perturb: Option<String>,
    },
    /// Verify every identity over its parameter grid.
    RunAll {
        /// Batch configuration file; defaults to every identity on its default grid.
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        /// Worker threads (overrides the config; 0 = all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Highest coefficient index checked (overrides the config).
        #[arg(long)]
        order: Option<usize>,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
}

/// Errors that are the caller's fault: bad ids, parameters or configuration.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    UsageError(e.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether everything verified.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::List => match list() {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(true),
            r => r.map(|()| true).context("cannot write listing"),
        },
        Command::Verify {
            id,
            params,
            order,
            report,
            perturb,
        } => {
            let params = parse_params(&params)?;
            let perturb = perturb
                .map(|p| p.parse::<Perturbation>().map_err(|e| usage(anyhow!(e))))
                .transpose()?;
            let start = Instant::now();
            let r = verify_identity(&id, &params, order, perturb.as_ref()).map_err(usage)?;
            print_report(&r);
            let passed = r.passed();
            let summary = Summary {
                order,
                total: 1,
                passed: usize::from(passed),
                failed: usize::from(!passed),
                elapsed: start.elapsed(),
            };
            let out = BatchOutput {
                reports: vec![r],
                summary,
            };
            if let Some(path) = report {
                write_report(&path, &out)?;
            }
            Ok(passed)
        }
        Command::RunAll {
            config,
            jobs,
            order,
            report,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("cannot read {}", path.display()))?;
                    parse_config(&text).map_err(usage)?
                }
                None => BatchConfig::default(),
            };
            if let Some(j) = jobs {
                cfg.jobs = j;
            }
            if let Some(n) = order {
                cfg.order = n;
            }
            let out = run_all(&cfg).map_err(usage)?;
            for r in &out.reports {
                print_report(r);
            }
            let s = &out.summary;
            println!(
                "{} of {} passed at order {} in {:.2?}",
                s.passed, s.total, s.order, s.elapsed
            );
            if let Some(path) = report {
                write_report(&path, &out)?;
            }
            Ok(out.all_passed())
        }
    }
}

fn list() -> io::Result<()> {
    let mut out = io::stdout().lock();
    for d in registry_list() {
        let mut tags = Vec::new();
        if d.formal_only {
            tags.push("formal");
        }
        if d.derived {
            tags.push("derived");
        }
        let tags = if tags.is_empty() {
            String::new()
        } else {
            format!(" [{}]", tags.join(", "))
        };
        writeln!(out, "{:<7} ({}){}", d.id, d.params.join(", "), tags)?;
        writeln!(out, "        {}", d.statement)?;
    }
    Ok(())
}

fn parse_params(raw: &[String]) -> Result<Params> {
    let mut params = Params::new();
    for entry in raw {
        for (name, value) in parse_point(entry).map_err(|e| usage(anyhow!(e)))? {
            if params.insert(name.clone(), value).is_some() {
                return Err(usage(anyhow!("parameter `{name}` given twice")));
            }
        }
    }
    Ok(params)
}

fn print_report(r: &Report) {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!(
        "{status} {} [{}] order {} ({:.2?})",
        r.id,
        params.join(", "),
        r.order,
        r.elapsed
    );
    for c in r.checks.iter().filter(|c| !c.passed) {
        println!(
            "     {}: {}",
            c.name,
            c.detail.as_deref().unwrap_or("failed")
        );
    }
}

fn write_report(path: &Path, out: &BatchOutput) -> Result<()> {
    let json = serde_json::to_string_pretty(out)?;
    fs::write(path, json + "\n").with_context(|| format!("cannot write {}", path.display()))
}
