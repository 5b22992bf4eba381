use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quatcomm_core::cli::{run_classes, run_exp, run_parse, run_verify, ClassesCommand, OutputFormat, TupleSource};
use quatcomm_core::{ClaimId, Error, HarnessConfig, Mode};

#[derive(Parser)]
#[command(name = "quatcomm", version, about = "Quaternion commutation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition all n! multiproducts of tuples into similarity classes.
    Classes {
        #[arg(long)]
        n: usize,
        /// One tuple per line, literals separated by `;`.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Number of random tuples to draw.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Check a claim on seeded random inputs.
    Verify {
        #[arg(long)]
        claim: ClaimId,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to exact, or float for the exponential claims.
        #[arg(long)]
        mode: Option<Mode>,
        /// Tuple size (polynomial degree for the exponential claims).
        #[arg(long)]
        n: Option<usize>,
        /// Bound on random numerators and denominators in exact mode.
        #[arg(long, default_value_t = 9)]
        bound: u32,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Evaluate exp(ψ) and optionally the derivative of exp along a path.
    Exp {
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(long, requires = "psi_prime")]
        deriv: bool,
        #[arg(long, allow_hyphen_values = true, requires = "deriv")]
        psi_prime: Option<String>,
    },
    /// Parse a quaternion literal and print its components.
    Parse {
        #[arg(allow_hyphen_values = true)]
        literal: String,
        #[arg(long, default_value = "float")]
        mode: Mode,
    },
}

fn run(cli: Cli) -> Result<(String, i32), Error> {
    match cli.command {
        Command::Classes {
            n,
            input,
            random,
            seed,
            mode,
            format,
        } => {
            let source = match (input, random) {
                (Some(path), _) => TupleSource::Text(
                    std::fs::read_to_string(&path)
                        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?,
                ),
                (None, Some(count)) => TupleSource::Random(count),
                (None, None) => return Err(Error::Usage("one of --input or --random is required".into())),
            };
            let cmd = ClassesCommand {
                n,
                source,
                seed,
                mode,
                format,
            };
            Ok((run_classes(&cmd)?, 0))
        }
        Command::Verify {
            claim,
            trials,
            seed,
            mode,
            n,
            bound,
            format,
        } => {
            let mut config = HarnessConfig::new(claim, trials, seed).with_bound(bound);
            if let Some(mode) = mode {
                config = config.with_mode(mode);
            }
            if let Some(n) = n {
                config = config.with_n(n);
            }
            run_verify(&config, format)
        }
        Command::Exp { psi, psi_prime, .. } => Ok((run_exp(&psi, psi_prime.as_deref())?, 0)),
        Command::Parse { literal, mode } => Ok((run_parse(&literal, mode)?, 0)),
    }
}

fn main() -> ExitCode {
    // clap's own failure code (2) would collide with a refuted verdict
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
