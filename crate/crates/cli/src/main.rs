//! `ecc`: generate, solve, bound and verify edge-colored clustering instances.

mod commands;
mod exit;
mod record;
mod scaling;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ecc",
    version,
    about = "Edge-colored hypergraph clustering toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance in the canonical format.
    Gen(GenArgs),
    /// Run one algorithm and report mistakes, bounds and timing.
    Solve(SolveArgs),
    /// Time a linear-time algorithm on doubling instance sizes.
    BenchScaling(ScalingArgs),
    /// Compare the MinECC and node multiway cut relaxations.
    CompareLp(CompareArgs),
    /// Check the embedded dual certificates or the LP invariants.
    Verify(VerifyArgs),
    /// Translate an instance into a related problem.
    Reduce(ReduceArgs),
    /// Write an LP or an LP solution as text.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GenKind {
    /// Planted clustering with color noise.
    Planted,
    /// Members and colors uniform at random.
    Uniform,
    /// The k-color integrality gap instance.
    Gap,
    /// Three edges of distinct colors sharing one node.
    Star,
}

#[derive(Args)]
pub struct GenArgs {
    pub kind: GenKind,
    #[arg(long, default_value_t = 100)]
    pub nodes: usize,
    #[arg(long, default_value_t = 200)]
    pub edges: usize,
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    #[arg(long, short = 'k', default_value_t = 3)]
    pub colors: u32,
    /// Probability that a planted edge gets a random color.
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    /// Where to write the planted coloring.
    #[arg(long)]
    pub truth_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Algo {
    /// LP relaxation followed by threshold rounding.
    Lp,
    /// LP relaxation, each node takes its nearest color.
    LpSimple,
    Pitt,
    Match,
    Hybrid,
    /// Majority vote.
    Mv,
    /// Branch and bound; limited by ECC_ORACLE_CAP.
    Exact,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Lp => "lp",
            Algo::LpSimple => "lp-simple",
            Algo::Pitt => "pitt",
            Algo::Match => "match",
            Algo::Hybrid => "hybrid",
            Algo::Mv => "mv",
            Algo::Exact => "exact",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Where an instance comes from.
#[derive(Args)]
pub struct InstanceArgs {
    /// Canonical instance, or the edge list when --labels is given.
    pub instance: PathBuf,
    /// Edge label file; switches to the benchmark two-file format.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Ground-truth node labels for the benchmark format.
    #[arg(long)]
    pub node_labels: Option<PathBuf>,
}

#[derive(Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Best of N runs with seeds seed, seed+1, ...; node orders are shuffled
    /// when N > 1.
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    /// Rounding interval lo:hi; the best proven interval by default.
    #[arg(long)]
    pub interval: Option<String>,
    /// Visit nodes in a seeded random order even for a single run.
    #[arg(long)]
    pub shuffle: bool,
    /// Also compute the LP lower bound.
    #[arg(long)]
    pub with_lp_bound: bool,
    /// ECC LP primal ("name value" lines) to use instead of solving.
    #[arg(long)]
    pub lp_solution: Option<PathBuf>,
    /// Reference coloring for the accuracy column.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Name for the dataset column; the file stem by default.
    #[arg(long)]
    pub dataset: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub no_header: bool,
    /// Write the chosen coloring here.
    #[arg(long)]
    pub coloring_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingAlgo {
    Pitt,
    Match,
    Hybrid,
    Mv,
}

#[derive(Args)]
pub struct ScalingArgs {
    #[arg(long, value_enum)]
    pub algo: ScalingAlgo,
    /// Target total incidence sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [100_000usize, 200_000, 400_000, 800_000, 1_600_000])]
    pub sizes: Vec<usize>,
    /// Node count of every generated instance; half the edge count when 0.
    #[arg(long, default_value_t = 20_000)]
    pub nodes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Timed repetitions per size; the fastest is kept.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    /// Exit with status 3 when the fitted exponent exceeds this.
    #[arg(long)]
    pub max_slope: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Largest LP, in variables, handed to the built-in simplex.
    #[arg(long, default_value_t = 5000)]
    pub max_vars: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["certs", "invariants"]))]
pub struct VerifyArgs {
    /// Check every embedded dual certificate exactly.
    #[arg(long)]
    pub certs: bool,
    /// Write each auxiliary LP into this directory.
    #[arg(long, requires = "certs")]
    pub emit_lp: Option<PathBuf>,
    /// Check the LP invariants on this instance.
    #[arg(long, value_name = "INSTANCE")]
    pub invariants: Option<PathBuf>,
    /// ECC LP primal to check instead of the computed optimum; taken as is.
    #[arg(long, requires = "invariants")]
    pub solution: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Vertex cover on the bad-pair graph.
    Vc,
    /// Node-weighted multiway cut.
    NodeMc,
    /// Hypergraph multiway cut.
    HyperMc,
    /// Read a vertex cover graph and build the equivalent instance.
    Ecc,
}

#[derive(Args)]
pub struct ReduceArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    EccLp,
    NodemcLp,
    /// Optimal ECC LP primal as "name value" lines.
    EccSolution,
}

#[derive(Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    #[arg(long, value_enum, default_value_t = ExportWhat::EccLp)]
    pub what: ExportWhat,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Solve(a) => solve::cmd_solve(&a),
        Command::BenchScaling(a) => scaling::cmd_bench_scaling(&a),
        Command::CompareLp(a) => commands::compare_lp(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Reduce(a) => commands::reduce(&a),
        Command::Export(a) => commands::export(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::code_for(&e))
        }
    }
}
