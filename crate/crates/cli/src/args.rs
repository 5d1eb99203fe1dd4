use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "slabchrom", version, about = "Chromatic and slab-chromatic numbers of distance graphs on the real line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Comma-separated distances, e.g. "1, 2, s, 2s, 1+s" where s = √m.
    #[arg(short = 'd', long = "distances", global = true)]
    pub distances: Option<String>,

    /// Square-free radicand m for the token `s`.
    #[arg(long, default_value_t = 2, global = true)]
    pub radicand: u64,

    /// Half-width W of the lattice window [−W, W]².
    #[arg(long, default_value_t = 20, global = true, allow_negative_numbers = true)]
    pub window: i64,

    /// Number of colors.
    #[arg(long, global = true)]
    pub t: Option<usize>,

    /// State budget for the integer transfer graph.
    #[arg(long = "budget-states", global = true)]
    pub budget_states: Option<u64>,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// Write a point dump (CSV) here.
    #[arg(long, global = true)]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PointSource {
    Forced,
    Linear,
    Slab,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elements, lattice rank, basis and coordinates of the distance set.
    Analyze,
    /// Chromatic number of G(ℝ, D).
    Chi,
    /// Lower and upper bounds for the slab-chromatic number.
    ChiM,
    /// Search for a t-clique in the lattice graph.
    Clique,
    /// Forced propagation from the canonical clique seed.
    Propagate,
    /// Certificate that no t-color slab coloring exists.
    CertifyNoSlab,
    /// Check a slab coloring (defaults to the unit-slab construction).
    VerifySlab {
        /// Slab coloring in text format.
        #[arg(long)]
        slab: Option<PathBuf>,
    },
    /// Dump a coloring as CSV.
    EmitPoints {
        #[arg(long, value_enum, default_value_t = PointSource::Forced)]
        source: PointSource,
        /// Slab coloring for `--source slab`.
        #[arg(long)]
        slab: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Chi => "chi",
            Command::ChiM => "chi-m",
            Command::Clique => "clique",
            Command::Propagate => "propagate",
            Command::CertifyNoSlab => "certify-no-slab",
            Command::VerifySlab { .. } => "verify-slab",
            Command::EmitPoints { .. } => "emit-points",
        }
    }
}
