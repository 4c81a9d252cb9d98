//! `polspec`: verify spectral invariants of model descriptors from the
//! command line.
//!
//! Exit codes: 0 all checks passed, 1 some check failed, 2 bad input or
//! usage, 3 internal error.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "polspec", version, about = "Exact spectral checks for polarized endomorphisms")]
struct Cli {
    /// Suppress the human-readable summary.
    #[arg(long, global = true)]
    quiet: bool,
    /// Print only JSON on stdout.
    #[arg(long, global = true)]
    json_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and write a verification report.
    Verify {
        input: PathBuf,
        /// Comma-separated primes (default: primes dividing q, then 2 more).
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<String>>,
        /// Working precision in decimal digits for the numeric Weil check.
        #[arg(long, default_value_t = polspec::verify::DEFAULT_PRECISION)]
        precision: u32,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Newton and Hodge polygons of one degree at one prime.
    Polygons {
        input: PathBuf,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        degree: u32,
        /// Also render both polygons to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The dynamical zeta function and its functional equation.
    Zeta {
        input: PathBuf,
        /// Check the series expansion up to this order.
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// Print the JSON schema for model descriptors (or reports).
    Schema {
        #[arg(long)]
        report: bool,
    },
}

pub struct Output {
    pub quiet: bool,
    pub json_only: bool,
}

impl Output {
    pub fn human(&self, text: &str) {
        if !self.quiet && !self.json_only {
            println!("{text}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = Output {
        quiet: cli.quiet,
        json_only: cli.json_only,
    };
    let result = match cli.command {
        Command::Verify {
            input,
            primes,
            precision,
            out: path,
        } => commands::verify(&out, &input, primes.as_deref(), precision, path.as_deref()),
        Command::Polygons {
            input,
            prime,
            degree,
            svg,
        } => commands::polygons(&out, &input, &prime, degree, svg.as_deref()),
        Command::Zeta { input, order } => commands::zeta(&out, &input, order),
        Command::Schema { report } => commands::schema(report),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("polspec: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
