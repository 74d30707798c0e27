use std::path::PathBuf;
use std::process::ExitCode;

use centralizer::cospan::WordSampling;
use centralizer_cli::commands::{self, CommandError, Example, Target, VerifyOptions};
use centralizer_cli::report::Report;
use clap::{Parser, Subcommand};

/// Centers, centralizers and lax functoriality checks for finite-rank rings.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on invalid input.
#[derive(Parser)]
#[command(name = "centralizer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one of the built-in worked examples.
    Example {
        #[arg(value_enum)]
        name: Example,
    },
    /// Check the lax functor laws on a chain of one to three hom files (first map first).
    Verify {
        #[arg(required = true, num_args = 1..=3)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "morita")]
        target: Target,
        /// Maximum word length for the cospan checks.
        #[arg(long, default_value_t = 4)]
        word_len: usize,
        /// Number of sampled words for the cospan checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the center of a ring file.
    Center { ring: PathBuf },
    /// Print the centralizer of a hom file.
    Centralizer { hom: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let outcome: Result<Report, CommandError> = match &cli.command {
        Command::Example { name } => commands::run_example(*name, echo),
        Command::Verify {
            files,
            target,
            word_len,
            samples,
            seed,
        } => commands::verify(
            &VerifyOptions {
                files: files.clone(),
                target: *target,
                sampling: WordSampling {
                    bound: *word_len,
                    samples: *samples,
                    seed: *seed,
                },
            },
            echo,
        ),
        Command::Center { ring } => commands::show_center(ring, echo),
        Command::Centralizer { hom } => commands::show_centralizer(hom, echo),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
