use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qfim_core::sweep::{parse_config, parse_config_file, parse_number, point_spec, write_csv, COLUMNS};
use qfim_core::{evaluate_point, run_sweep, Error, GridRecord, SweepConfig};

/// Quantum Fisher information of scattered helicity states over a (p, theta) grid.
#[derive(Parser)]
#[command(name = "qfim-scatter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the (p, theta) grid and write one CSV record per point.
    Sweep(SweepArgs),
    /// Evaluate a single point and print its record as key=value lines.
    Point(PointArgs),
}

/// Options shared by both subcommands. Numbers accept `pi`, `pi/x`, `x*pi`.
#[derive(Args)]
struct Common {
    /// emu or compton.
    #[arg(long)]
    process: Option<String>,
    /// mixed, LL, LR, RL or RR.
    #[arg(long)]
    initial: Option<String>,
    /// Azimuthal angle, rad.
    #[arg(long)]
    phi: Option<String>,
    /// Number of measurements in the Cramér-Rao bound.
    #[arg(long = "N")]
    n: Option<String>,
    /// Finite-difference step in p, MeV.
    #[arg(long)]
    fd_step_p: Option<String>,
    /// Finite-difference step in theta, rad.
    #[arg(long)]
    fd_step_theta: Option<String>,
    /// Plain `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    p_min: Option<String>,
    #[arg(long)]
    p_max: Option<String>,
    #[arg(long)]
    p_step: Option<String>,
    #[arg(long)]
    theta_min: Option<String>,
    #[arg(long)]
    theta_max: Option<String>,
    #[arg(long)]
    theta_step: Option<String>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    workers: Option<String>,
    /// CSV destination; the summary goes next to it. Defaults to stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
    /// Momentum, MeV.
    #[arg(long)]
    p: String,
    /// Polar angle, rad.
    #[arg(long)]
    theta: String,
}

fn push(pairs: &mut Vec<(String, String)>, key: &str, value: &Option<String>) {
    if let Some(v) = value {
        pairs.push((key.to_string(), v.clone()));
    }
}

fn common_pairs(c: &Common) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    push(&mut pairs, "process", &c.process);
    push(&mut pairs, "initial", &c.initial);
    push(&mut pairs, "phi", &c.phi);
    push(&mut pairs, "N", &c.n);
    push(&mut pairs, "fd-step-p", &c.fd_step_p);
    push(&mut pairs, "fd-step-theta", &c.fd_step_theta);
    pairs
}

fn load(common: &Common, flags: &[(String, String)]) -> Result<SweepConfig, Error> {
    let file = match &common.config {
        Some(path) => parse_config_file(&std::fs::read_to_string(path)?)?,
        None => Vec::new(),
    };
    parse_config(&file, flags)
}

fn sweep(args: &SweepArgs) -> Result<(), Error> {
    let mut flags = common_pairs(&args.common);
    for (k, v) in [
        ("p-min", &args.p_min),
        ("p-max", &args.p_max),
        ("p-step", &args.p_step),
        ("theta-min", &args.theta_min),
        ("theta-max", &args.theta_max),
        ("theta-step", &args.theta_step),
        ("workers", &args.workers),
        ("out", &args.out),
    ] {
        push(&mut flags, k, v);
    }
    let cfg = load(&args.common, &flags)?;
    let out = run_sweep(&cfg)?;
    if cfg.out.is_none() {
        let stdout = io::stdout();
        let mut w = io::BufWriter::new(stdout.lock());
        write_csv(&mut w, &out.records)?;
        w.flush()?;
        eprint!("{}", out.summary);
    } else {
        print!("{}", out.summary);
    }
    Ok(())
}

fn point(args: &PointArgs) -> Result<(), Error> {
    let flags = common_pairs(&args.common);
    let cfg = load(&args.common, &flags)?;
    let number = |key: &str, v: &str| {
        parse_number(v).ok_or_else(|| Error::Config {
            token: format!("{key}={v}"),
            reason: "malformed number".into(),
        })
    };
    let p = number("p", &args.p)?;
    let theta = number("theta", &args.theta)?;
    let record = GridRecord::from_report(&evaluate_point(&point_spec(&cfg, p, theta)));
    let stdout = io::stdout();
    let mut w = stdout.lock();
    for (k, v) in COLUMNS.iter().zip(record.fields()) {
        writeln!(w, "{k}={v}")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Point(a) => point(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qfim-scatter: {e}");
            match e {
                Error::Config { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
