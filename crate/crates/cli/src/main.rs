mod commands;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use secgain_core::Error;

use commands::{Outcome, PlotRange};
use output::Format;

/// Secrecy gain of Construction A lattices from binary codes.
#[derive(Parser)]
#[command(name = "secgain", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Tolerance for the numerical symmetry checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight enumerator of a code file, as `w A_w` lines.
    Enumerate { code: PathBuf },
    /// Enumerator of the dual code via the MacWilliams identity.
    Macwilliams {
        enumerator: PathBuf,
        /// Code length, when the file has no `# n=` header.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Self-dual / formally self-dual classification.
    Classify {
        /// Catalog name, code file or enumerator file.
        source: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Strong and weak secrecy gain.
    Secrecy {
        /// Catalog name, code file or enumerator file.
        source: String,
        #[arg(long)]
        n: Option<usize>,
        /// Only evaluate the secrecy function at its symmetry point; works for
        /// any code.
        #[arg(long)]
        weak_only: bool,
    },
    /// Gleason coefficients of an even formally self-dual enumerator.
    Gleason {
        source: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Recompute the gain of every catalog entry against the printed value.
    Table,
    /// Secrecy function on a log-spaced tau grid.
    PlotData {
        source: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        tau_min: f64,
        #[arg(long, default_value_t = 10.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Tailbiting code from octal generators, e.g. `tailbite 7 5 --k 5`.
    Tailbite {
        g1: Option<String>,
        g2: Option<String>,
        /// Generators as `g1,g2` instead of positionals.
        #[arg(long, conflicts_with_all = ["g1", "g2"])]
        conv: Option<String>,
        #[arg(long)]
        k: usize,
    },
    /// Consistency checks over the embedded catalog.
    ValidateCatalog {
        /// Also compare against a text mirror directory.
        #[arg(long)]
        mirror: Option<PathBuf>,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::LengthLimit { .. } => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let (format, tol) = (cli.format, cli.tolerance);
    match cli.command {
        Command::Enumerate { code } => commands::enumerate(&code, format),
        Command::Macwilliams { enumerator, n } => commands::macwilliams_cmd(&enumerator, n, format),
        Command::Classify { source, n } => commands::classify_cmd(&source, n, format),
        Command::Secrecy {
            source,
            n,
            weak_only,
        } => commands::secrecy(&source, n, weak_only, tol, format),
        Command::Gleason { source, n } => commands::gleason(&source, n, format),
        Command::Table => commands::table_cmd(format),
        Command::PlotData {
            source,
            n,
            tau_min,
            tau_max,
            points,
        } => commands::plot_data(
            &source,
            n,
            &PlotRange {
                tau_min,
                tau_max,
                points,
            },
            format,
        ),
        Command::Tailbite { g1, g2, conv, k } => {
            let (g1, g2) = match (conv, g1, g2) {
                (Some(c), _, _) => {
                    let (a, b) = c
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("--conv expects g1,g2, got `{c}`")))?;
                    (a.to_string(), b.to_string())
                }
                (None, Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Parse("tailbite needs two generators".into())),
            };
            commands::tailbite(&g1, &g2, k, tol, format)
        }
        Command::ValidateCatalog { mirror } => {
            commands::validate_catalog_cmd(mirror.as_deref(), format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            let _ = std::io::stdout().flush();
            ExitCode::from(out.exit as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
