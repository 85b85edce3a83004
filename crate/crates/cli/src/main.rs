use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use holder_lab::budget::Budget;
use holder_lab::classifier::{CubeOptions, Mode};
use holder_lab::cube::TdLimits;
use holder_lab_cli::commands::{self, Outcome, EXIT_INPUT};

/// Exact Lipschitz and strict Hölder classification of fractal cubes and
/// self-similar sets.
///
/// Self-similar instances are described only by their contraction ratios.
/// Every rule assumes the strong separation condition (pairwise disjoint
/// first-level pieces); the tool cannot check it, so it is a promise made
/// by the manifest. Fractal cubes must be totally disconnected; this is
/// certified automatically or asserted with --assume-td.
///
/// Exit codes: 0 success (any verdict), 1 witness verification failed,
/// 2 input error. The enumeration budget for `verify` can be raised with
/// the HOLDER_LAB_MAX_PAIRS environment variable.
#[derive(Parser)]
#[command(name = "holder-lab", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lipschitz,
    Holder,
}

#[derive(Subcommand)]
enum Command {
    /// Classify two instances of a manifest.
    Classify {
        manifest: PathBuf,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "holder")]
        mode: ModeArg,
        /// Accept fractal cubes that could not be certified totally disconnected.
        #[arg(long)]
        assume_td: bool,
    },
    /// Certify total disconnectedness of a fractal cube.
    CheckTd {
        manifest: PathBuf,
        id: String,
        #[arg(long, default_value_t = TdLimits::default().max_depth)]
        max_depth: u32,
        #[arg(long, default_value_t = TdLimits::default().max_component_cells)]
        max_cells: usize,
    },
    /// Check the witness map of a Hölder-equivalent pair on all point pairs.
    Verify {
        manifest: PathBuf,
        a: String,
        b: String,
        /// Enumeration depth; defaults to the deepest level within the pair budget.
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        assume_td: bool,
    },
    /// Write a PBM picture of a depth-k cube approximation (d <= 2).
    Render {
        manifest: PathBuf,
        id: String,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report the Hausdorff dimension of an instance.
    Dimension { manifest: PathBuf, id: String },
}

fn cube_options(assume_td: bool) -> CubeOptions {
    CubeOptions {
        limits: TdLimits::default(),
        assume_td,
    }
}

fn run(cli: Cli) -> Result<Outcome, commands::CliError> {
    match cli.command {
        Command::Classify { manifest, a, b, mode, assume_td } => {
            let mode = match mode {
                ModeArg::Lipschitz => Mode::Lipschitz,
                ModeArg::Holder => Mode::Holder,
            };
            commands::classify(&manifest, &a, &b, mode, &cube_options(assume_td))
        }
        Command::CheckTd { manifest, id, max_depth, max_cells } => {
            let limits = TdLimits {
                max_depth,
                max_component_cells: max_cells,
                ..TdLimits::default()
            };
            commands::check_td(&manifest, &id, &limits)
        }
        Command::Verify { manifest, a, b, depth, assume_td } => commands::verify(
            &manifest,
            &a,
            &b,
            depth,
            &cube_options(assume_td),
            &Budget::from_env(),
        ),
        Command::Render { manifest, id, depth, out } => commands::render(&manifest, &id, depth, &out),
        Command::Dimension { manifest, id } => commands::dimension(&manifest, &id),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
