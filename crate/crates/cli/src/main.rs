use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod server;

#[derive(Parser, Debug)]
#[command(name = "chipfire", version, about = "The dollar game on simplicial complexes")]
struct Cli {
    /// Human-readable output instead of canonical JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads for the solvers.
    #[arg(long, global = true, env = "CHIPFIRE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Complex file (JSON with a "facets" array); `-` reads standard input.
    pub file: PathBuf,

    /// Face dimension; defaults to the dimension of the embedded chain.
    #[arg(short = 'i', long = "dim", allow_negative_numbers = true)]
    pub dim: Option<i32>,
}

#[derive(Args, Debug, Clone)]
pub struct ChainArg {
    /// Chain coefficients as inline JSON or a file; defaults to the chain
    /// embedded in the complex file.
    #[arg(long)]
    pub chain: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HomologyMode {
    Reduced,
    Ordinary,
    Relative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RealizeModeArg {
    Any,
    Effective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ForestModeArg {
    First,
    All,
    Check,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summary of a complex: f-vector, homology, pseudomanifold data and
    /// per-dimension invariants.
    Analyze {
        #[command(flatten)]
        target: Target,
    },
    /// Hilbert basis of the nonnegative Laplacian kernel.
    Hilbert {
        #[command(flatten)]
        target: Target,
        /// Only the elements spanning extreme rays.
        #[arg(long)]
        rays_only: bool,
    },
    /// Degree of a chain, or a chain realizing a given degree.
    Degree {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        rays_only: bool,
        /// Degree vector to realize instead of computing one.
        #[arg(long)]
        realize: Option<String>,
        #[arg(long, value_enum, default_value = "any")]
        mode: RealizeModeArg,
    },
    /// Decide winnability with a certificate.
    Winnable {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long, conflicts_with = "expect_unwinnable")]
        expect_winnable: bool,
        #[arg(long)]
        expect_unwinnable: bool,
    },
    /// Firing vector between two linearly equivalent chains.
    Equivalent {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        chain: ChainArg,
        /// The second chain.
        #[arg(long)]
        to: String,
    },
    /// Critical group structure.
    Critgroup {
        #[command(flatten)]
        target: Target,
        /// Also list one cycle per torsion class.
        #[arg(long)]
        representatives: bool,
    },
    /// Reduced, ordinary or relative homology.
    Homology {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "reduced")]
        mode: HomologyMode,
        /// Faces generating the subcomplex for relative homology, as JSON.
        #[arg(long)]
        relative_to: Option<String>,
    },
    /// Pseudomanifold checks, orientation, incidence graph and cycle basis.
    Pseudo {
        file: PathBuf,
    },
    /// Spanning forests and the forest number.
    Forests {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "all")]
        mode: ForestModeArg,
        /// Faces to check, as JSON.
        #[arg(long)]
        faces: Option<String>,
        /// Refuse full enumeration above this many candidate subsets.
        #[arg(long, default_value_t = chipfire_core::forests::FOREST_LIMIT)]
        limit: u128,
    },
    /// Reduced Laplacian of a spanning forest and its cokernel.
    Reduced {
        #[command(flatten)]
        target: Target,
        /// Forest faces as JSON.
        #[arg(long)]
        faces: String,
    },
    /// Minimal winning degrees within a search bound.
    Mindeg {
        #[command(flatten)]
        target: Target,
        /// Largest degree sum explored.
        #[arg(long, default_value_t = 6)]
        bound: u64,
    },
    /// Whether the boundary of a chain is a nonnegative combination of face
    /// boundaries.
    Xset {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        chain: ChainArg,
    },
    /// Play over line-delimited JSON on standard input and output.
    Play,
    /// Serve the game protocol over HTTP.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8765")]
        addr: String,
    },
}

/// Output of a command: the JSON payload, an optional human rendering, and
/// whether an expectation failed.
pub struct Outcome {
    pub payload: serde_json::Value,
    pub pretty: Option<String>,
    pub negative: bool,
}

impl Outcome {
    pub fn json(payload: serde_json::Value) -> Self {
        Outcome {
            payload,
            pretty: None,
            negative: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("chipfire: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Play => server::play().map(|_| None),
        Command::Serve { addr } => server::serve(&addr).map(|_| None),
        cmd => commands::run(cmd).map(Some),
    };
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(out)) => {
            match (&out.pretty, cli.pretty) {
                (Some(text), true) => print!("{text}"),
                (None, true) => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.payload).expect("serializable")
                ),
                _ => println!("{}", out.payload),
            }
            if out.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("chipfire: {e}");
            ExitCode::from(2)
        }
    }
}
