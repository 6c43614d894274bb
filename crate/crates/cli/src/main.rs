//! `powergraph`: build power graphs of permutation groups, count their
//! components, check the maps between them, and verify the component
//! tables for `S_n`.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 resource cap exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use powergraph::Caps;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "powergraph", version, about = "Power graphs of permutation groups and their components")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Largest group order for which the explicit graph P_0(G) is built.
    #[arg(long, global = true, env = "POWERGRAPH_MAX_ORDER", value_parser = positive)]
    pub max_order: Option<usize>,

    /// Largest degree n for the S_n graph pipeline (10 needs several GB).
    #[arg(long, global = true, value_parser = positive)]
    pub max_degree: Option<usize>,

    /// Write the output to FILE (atomically) instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count and describe the components of one graph.
    Components {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = GraphArg::Quotient)]
        graph: GraphArg,
    },
    /// Recompute the component tables for S_n and compare.
    VerifyTables {
        /// Rows to check, as `A..B` (inclusive) or a single `n`.
        #[arg(long, default_value = "2..13")]
        rows: String,
        /// Expected values as CSV rows `n,c0,c0_type,c0_order`, replacing
        /// the built-in table.
        #[arg(long, value_name = "FILE")]
        expected: Option<PathBuf>,
    },
    /// Check homomorphism properties of a vertex map.
    CheckHom(CheckHomArgs),
    /// Closed-form component counts for S_n.
    ClosedForm {
        #[arg(long)]
        n: u64,
    },
    /// Closed form, procedure steps and component structure for S_n.
    Report {
        #[arg(long)]
        n: u64,
    },
    /// Write a graph in the exchange format, the maps, or a summary.
    Export {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = GraphArg::Quotient)]
        graph: GraphArg,
        /// Print the maps between the graphs instead.
        #[arg(long, conflicts_with = "summary")]
        maps: bool,
        /// Print vertex, edge and component counts of every graph.
        #[arg(long)]
        summary: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupKindArg {
    Sym,
    Alt,
    Gen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Explicit,
    Quotient,
    Order,
    Type,
}

impl From<GraphArg> for powergraph::powergraphs::GraphKind {
    fn from(g: GraphArg) -> Self {
        use powergraph::powergraphs::GraphKind;
        match g {
            GraphArg::Explicit => GraphKind::Explicit,
            GraphArg::Quotient => GraphKind::Quotient,
            GraphArg::Order => GraphKind::Order,
            GraphArg::Type => GraphKind::Type,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    #[arg(long, value_enum, default_value_t = GroupKindArg::Sym)]
    pub group: GroupKindArg,
    /// Degree of the group.
    #[arg(long, visible_alias = "degree")]
    pub n: Option<usize>,
    /// Comma-separated generators in cycle notation, for `--group gen`.
    #[arg(long)]
    pub gens: Option<String>,
    /// Group file: a `degree n` line, then one generator per line.
    #[arg(long, value_name = "FILE", conflicts_with = "gens")]
    pub gens_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    /// Explicit graph to quotient.
    Pi,
    /// Quotient to type graph.
    Type,
    /// Quotient to order graph.
    Order,
    /// Type graph to order graph.
    OrderType,
}

#[derive(Debug, Clone, Args)]
pub struct CheckHomArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Which bundle map to check.
    #[arg(long, value_enum, conflicts_with_all = ["source", "target", "map_file"])]
    pub map: Option<MapArg>,
    /// Permutations `x` whose induced automorphisms generate the orbit
    /// group (bundle maps from the explicit or quotient graph).
    #[arg(long)]
    pub orbit_gens: Option<String>,
    /// Source graph in the exchange format.
    #[arg(long, value_name = "FILE", requires_all = ["target", "map_file"])]
    pub source: Option<PathBuf>,
    /// Target graph in the exchange format.
    #[arg(long, value_name = "FILE")]
    pub target: Option<PathBuf>,
    /// Vertex map as `i -> j` lines.
    #[arg(long, value_name = "FILE")]
    pub map_file: Option<PathBuf>,
    /// Automorphisms of the source as `i -> j` blocks separated by `---`.
    #[arg(long, value_name = "FILE", requires = "source")]
    pub orbit_file: Option<PathBuf>,
}

impl Cli {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(order) = self.max_order {
            caps.max_explicit_order = order;
        }
        if let Some(degree) = self.max_degree {
            caps.max_pipeline_degree = degree;
            caps.max_enumeration_degree = caps.max_enumeration_degree.max(degree);
        }
        caps
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.max_degree.is_some_and(|d| d >= 10) {
        eprintln!("warning: the S_n pipeline at n >= 10 needs several GB of memory");
    }
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
