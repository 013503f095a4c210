use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eur_cli::campaign::{self, CampaignConfig, Summary};
use eur_cli::commands::{coincidence_report, mub_report, sic_report, StateSource};
use eur_cli::error::{exit, CliResult};
use eur_core::{EntropyOrder, Proposition};

#[derive(Parser)]
#[command(name = "eur", version, about = "Entropic uncertainty bounds for MUBs and SIC-POVMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and verify a set of mutually unbiased bases.
    Mub {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
    },
    /// Construct and verify a SIC-POVM.
    Sic {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        fiducial: Option<PathBuf>,
    },
    /// Run a bound-verification campaign over random states.
    Verify {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
        dim: Vec<usize>,
        /// Proposition labels; all when omitted.
        #[arg(long, value_delimiter = ',')]
        props: Vec<Proposition>,
        /// Entropy orders, `inf` allowed; each proposition's default grid when omitted.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<EntropyOrder<f64>>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = eur_core::tol::BOUND)]
        tolerance: f64,
        /// Number of MUBs; sweeps 2..=d+1 when omitted.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        fiducial: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare the SIC index of coincidence with its closed form.
    Coincidence {
        #[arg(long)]
        dim: usize,
        /// mixed, pure, random-pure, random-mixed, or a density matrix JSON path.
        #[arg(long, default_value = "mixed")]
        state: StateSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        fiducial: Option<PathBuf>,
    },
}

fn print_json<S: serde::Serialize>(value: &S) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn verdict(passed: bool) -> i32 {
    if passed {
        exit::PASS
    } else {
        exit::VIOLATION
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Mub { dim, count } => {
            let report = mub_report(dim, count)?;
            print_json(&report)?;
            Ok(verdict(report.passed))
        }
        Command::Sic { dim, fiducial } => {
            print_json(&sic_report(dim, fiducial.as_deref())?)?;
            Ok(exit::PASS)
        }
        Command::Coincidence { dim, state, seed, fiducial } => {
            let report = coincidence_report(dim, &state, seed, fiducial.as_deref())?;
            print_json(&report)?;
            Ok(verdict(report.passed()))
        }
        Command::Verify { dim, props, alphas, samples, seed, eta, tolerance, count, fiducial, out, format } => {
            let config = CampaignConfig {
                dims: dim,
                props: if props.is_empty() { Proposition::ALL.to_vec() } else { props },
                alphas: (!alphas.is_empty()).then_some(alphas),
                samples,
                seed,
                eta,
                tolerance,
                count,
                fiducial,
            };
            let rows = campaign::run(&config)?;
            let summary = Summary::from_rows(&rows, config.tolerance);
            let write = |w: &mut dyn Write| match format {
                Format::Csv => campaign::write_csv(&rows, w),
                Format::Json => campaign::write_json(&config, &rows, &summary, w),
            };
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    write(&mut w)?;
                    w.flush()?;
                    println!("{}", summary.line());
                }
                None => {
                    let mut w = io::stdout().lock();
                    write(&mut w)?;
                    w.flush()?;
                    eprintln!("{}", summary.line());
                }
            }
            Ok(verdict(summary.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
