use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use qsphere::suite::{run, ReportFormat, SuiteConfig, SuiteName};
use qsphere::{Cutoff, Error};

/// Run verification suites for the quantum 3-spheres and emit a report.
#[derive(Parser, Debug)]
#[command(name = "qsphere", version)]
struct Args {
    /// relations | basis | identities | iso | fiber | lemma-gen | ktheory | all
    #[arg(long, default_value = "all")]
    suite: String,

    /// Comma-separated grid of p values in [0, 1).
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,

    /// Comma-separated grid of q values in [0, 1).
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<f64>>,

    /// Comma-separated grid of theta values in [0, 1).
    #[arg(long, value_delimiter = ',')]
    theta: Option<Vec<f64>>,

    /// `N` or `N,M`.
    #[arg(long)]
    cutoff: Option<String>,

    /// Series length for the isomorphism maps.
    #[arg(long = "K")]
    k: Option<usize>,

    /// Overrides every numerical threshold.
    #[arg(long)]
    tol: Option<f64>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Six-term preset for the ktheory suite: s3-quantum | s3-classical.
    #[arg(long)]
    preset: Option<String>,

    #[arg(long)]
    /// Write the report to this file instead of stdout
    out: Option<PathBuf>,

    /// json | text
    #[arg(long, default_value = "json")]
    format: String,
}

fn parse_cutoff(text: &str) -> Result<Cutoff, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Config(format!("bad cutoff `{text}`")));
    match parts.as_slice() {
        [n] => {
            let n = num(n)?;
            Cutoff::new(n, n)
        }
        [n, m] => Cutoff::new(num(n)?, num(m)?),
        _ => Err(Error::Config(format!("bad cutoff `{text}`"))),
    }
}

fn config(args: Args) -> Result<SuiteConfig, Error> {
    let defaults = SuiteConfig::default();
    let cfg = SuiteConfig {
        suite: args.suite.parse::<SuiteName>()?,
        p: args.p.unwrap_or(defaults.p),
        q: args.q.unwrap_or(defaults.q),
        theta: args.theta.unwrap_or(defaults.theta),
        cutoff: args.cutoff.as_deref().map(parse_cutoff).transpose()?,
        k: args.k,
        tol: args.tol,
        seed: args.seed,
        preset: args.preset,
        out: args.out,
        format: args.format.parse::<ReportFormat>()?,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cfg = match config(Args::parse()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("qsphere: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("qsphere: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cfg: &SuiteConfig) -> anyhow::Result<bool> {
    let report = run(cfg)?;
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    eprintln!(
        "{}: {} checks, {} passed, {} failed",
        report.suite, report.summary.total, report.summary.passed, report.summary.failed
    );
    Ok(report.all_passed())
}
