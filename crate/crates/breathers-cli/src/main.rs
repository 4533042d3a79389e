use std::path::PathBuf;
use std::process::ExitCode;

use breathers_cli::config::{BasisChoice, Command, ConfigError, Kind, DEFAULT_OUT};
use breathers_cli::{run, ExperimentConfig, OUT_ENV};
use clap::Parser;

/// Breathers on a unit background: exact solutions, Lax spectra, linearized families,
/// split-step evolution and the acceptance report.
#[derive(Parser, Debug)]
#[command(name = "breathers", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory [default: $BREATHERS_OUT, else ./breathers-out].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the resolved configuration and exit.
    #[arg(long)]
    dump_config: bool,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, allow_negative_numbers = true)]
    lambda0: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long, value_enum)]
    basis: Option<BasisChoice>,
    /// Basis size (spectrum) or Fourier modes (evolve); 0 picks a default.
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_end: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    wavenumber: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda0_ab: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda0_kmb: Option<f64>,
    /// Write per-entry field CSVs (family).
    #[arg(long)]
    export: bool,
    #[arg(long)]
    seed: Option<u64>,
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    let mut c = ExperimentConfig::default();
    if let Ok(dir) = std::env::var(OUT_ENV) {
        c.output_dir = PathBuf::from(dir);
    }
    if let Some(p) = &cli.config {
        let text = std::fs::read_to_string(p).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
        c.apply_text(&text)?;
    }
    c.command = cli.command;
    if let Some(k) = cli.kind {
        c.kind = k;
        // a kind switch without lambda0 takes that kind's default
        if cli.lambda0.is_none() {
            c.lambda0 = match k {
                Kind::Ab => Some(0.6),
                Kind::Kmb => Some(1.25),
                _ => None,
            };
        }
    }
    macro_rules! over {
        ($($f:ident),*) => { $( if let Some(v) = cli.$f { c.$f = v; } )* };
    }
    over!(nx, nt, modes, half_width, t, t_start, amplitude, lambda0_ab, lambda0_kmb, seed);
    if cli.lambda0.is_some() {
        c.lambda0 = cli.lambda0;
    }
    if cli.basis.is_some() {
        c.basis = cli.basis;
    }
    if cli.t_end.is_some() {
        c.t_end = cli.t_end;
    }
    if cli.dt.is_some() {
        c.dt = cli.dt;
    }
    if cli.wavenumber.is_some() {
        c.wavenumber = cli.wavenumber;
    }
    if cli.export {
        c.export = true;
    }
    if let Some(o) = &cli.out {
        c.output_dir = o.clone();
    }
    if c.output_dir.as_os_str().is_empty() {
        c.output_dir = PathBuf::from(DEFAULT_OUT);
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve(&cli).and_then(|c| c.validate().map(|_| c)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.dump_config {
        print!("{}", cfg.to_text());
        return ExitCode::SUCCESS;
    }
    match run(&cfg) {
        Ok(outcome) => {
            for p in &outcome.artifacts {
                println!("wrote {}", p.display());
            }
            let failures = outcome.failures();
            for c in &failures {
                eprintln!("FAILED {}: {} (target {})", c.name, c.value, c.target);
            }
            if failures.is_empty() {
                println!("{} checks passed", outcome.checks.len());
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
