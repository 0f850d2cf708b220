use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Exact experiments on time-independent point games.
#[derive(Parser, Debug)]
#[command(name = "pointgame", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AsKind {
    Move,
    Tipg,
    Tdpg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Part {
    First,
    Second,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check validity of a game document.
    Validate {
        game: String,
        /// Interpretation; defaults to the document kind. A move read as a
        /// TIPG is paired with its transpose.
        #[arg(long = "as", value_enum)]
        as_kind: Option<AsKind>,
    },
    /// Exact profile values of a move as CSV.
    Profile {
        game: String,
        /// `n=16,hi=1000` (geometric arguments plus inf) or `values=1;3/2;inf`.
        #[arg(long, conflicts_with = "at", required_unless_present = "at")]
        grid: Option<String>,
        /// A single argument pair `alpha,beta`.
        #[arg(long)]
        at: Option<String>,
        /// Which move of a TIPG document to use.
        #[arg(long, value_enum, default_value = "first")]
        part: Part,
        #[arg(long)]
        out: Option<String>,
    },
    /// Print the target move for `tau`, or its profile table.
    Target {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        profile_grid: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Synthesize a verified game for `t_tau` on a grid.
    Synth {
        #[arg(long)]
        tau: String,
        /// `default`, `mandatory`, or `lo=..,hi=..,ratio=..[,den=..][,extra=a;b]`.
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long)]
        out: String,
        #[arg(long, default_value_t = 64)]
        lambda_samples: usize,
        #[arg(long, default_value_t = 50)]
        max_cuts: usize,
    },
    /// Synthesize across several values of `tau` and write a CSV table.
    Scan {
        /// Comma-separated list, e.g. `1,4/5,3/5`.
        #[arg(long)]
        tau_list: String,
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long)]
        out: String,
        #[arg(long, default_value_t = 64)]
        lambda_samples: usize,
        #[arg(long, default_value_t = 50)]
        max_cuts: usize,
    },
    /// Facts, isolating mass and the norm certificate for a game.
    Certify {
        game: String,
        #[arg(long)]
        tau: Option<String>,
    },
    /// The explicit round lower bound chain for a bias.
    Bound {
        #[arg(long)]
        epsilon: String,
    },
    /// Circle samples and concentration certificate.
    Concentration {
        #[arg(long, conflicts_with = "game", required_unless_present = "game")]
        example_h: bool,
        #[arg(long)]
        game: Option<String>,
        #[arg(long)]
        tau: Option<String>,
        /// Defaults to 0 for the example and 4 for a game.
        #[arg(long, allow_negative_numbers = true)]
        center: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
