use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use xychain::experiment::Branch;
use xychain::Complex64;
use xychain_cli::{
    cmd_compile, cmd_pst, cmd_sweep, cmd_verify, load_config, parse_angle, CliError, EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "xychain", version, about = "Three-spin XY chain: decomposition, pulse compilation and state transfer")]
struct Cli {
    /// Configuration file of `key = value` lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check analytic, factored and exact propagators agree over the sweep grid
    Verify {
        /// Maximum allowed entrywise deviation (default: tol.verify)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compile U(phi) into a pulse sequence
    Compile {
        /// Phase angle Jt/sqrt(2); accepts multiples of pi such as 0.5pi
        #[arg(long, default_value = "0.5pi", value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        /// Expand three-body and selective blocks into rf pulses and delays
        #[arg(long)]
        expand: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write C1/C3 amplitudes over the sweep grid as CSV
    Sweep {
        #[arg(long, value_enum, default_value = "A")]
        branch: BranchArg,
        /// Append the fitted cos^2/sin^2 amplitudes
        #[arg(long)]
        fit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transfer alpha|0> + beta|1> from spin 1 to spin 3
    Pst {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        alpha_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha_im: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta_im: f64,
        /// Undo the sign flip on |1> with a z rotation of spin 3
        #[arg(long)]
        correct: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = load_config(cli.config.as_deref())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let code = match cli.command {
        Command::Verify { tol } => cmd_verify(&cfg, tol.unwrap_or(cfg.tol_verify), &mut out)?,
        Command::Compile { phi, expand, out: path } => {
            let path = path.or(cfg.out_compile.clone());
            // Keep stdout clean for the sequence when it is printed there.
            let report: &mut dyn Write = if path.is_some() { &mut io::stdout() } else { &mut err };
            cmd_compile(&cfg, phi, expand, path.as_deref(), &mut out, report)?
        }
        Command::Sweep { branch, fit, out: path } => {
            let branch = match branch {
                BranchArg::A => Branch::A,
                BranchArg::B => Branch::B,
            };
            cmd_sweep(&cfg, branch, fit, path.or(cfg.out_sweep.clone()).as_deref(), &mut out)?
        }
        Command::Pst { alpha_re, alpha_im, beta_re, beta_im, correct, out: path } => cmd_pst(
            Complex64::new(alpha_re, alpha_im),
            Complex64::new(beta_re, beta_im),
            correct,
            path.or(cfg.out_pst.clone()).as_deref(),
            &mut out,
            &mut err,
        )?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
