mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Quivers, tilting modules and cluster dimension vectors.
#[derive(Debug, Parser)]
#[command(name = "qcw", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Knitting depth for catalogs of non-Dynkin quivers.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
    /// Coordinate cap for positive-root searches.
    #[arg(long, global = true, default_value_t = qcw::forms::DEFAULT_ROOT_CAP)]
    pub root_cap: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Coordinate bound for regular module searches over tame quivers.
    #[arg(long, global = true, default_value_t = 3)]
    pub bound: i64,
    /// Seed for random representations.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Run single-threaded.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Ar,
    Re,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Property {
    Separation,
    Lemmas234,
    Prop4,
    Prop5,
    Prop6,
    Thm1,
    Thm2b,
    #[value(name = "thm2c-proxy")]
    Thm2cProxy,
    Prop7,
    RegularWitness,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots of the Tits form.
    Roots { quiver: PathBuf },
    /// All tilting modules, or the F/G/M classification of one.
    Tilt { quiver: PathBuf, spec: Option<String> },
    /// Cluster dimension vectors of a tilting module.
    Cluster {
        quiver: PathBuf,
        spec: Option<String>,
        /// Search every orientation of the underlying graph for the two A4
        /// value patterns instead.
        #[arg(long)]
        seed_search: bool,
    },
    /// Check properties for one tilting module or for all of them.
    Verify {
        quiver: PathBuf,
        spec: Option<String>,
        /// Every tilting module in the catalog; implied when no spec is given.
        #[arg(long)]
        all: bool,
        /// Repeatable; defaults to every property except regular-witness on
        /// Dynkin quivers and to regular-witness otherwise.
        #[arg(long, short, value_enum)]
        property: Vec<Property>,
    },
    /// DOT text for the AR component or the r_E bigraph.
    Graph {
        quiver: PathBuf,
        spec: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphKind::Ar)]
        kind: GraphKind,
    },
}

/// Exit status 0: success; 1: a verification failed; 2: bad input.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}
