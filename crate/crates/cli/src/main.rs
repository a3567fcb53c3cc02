// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

mod detect;
mod gen;
mod io;
mod manifest;
mod score;
mod stats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "nash-overlap", version, about = "Overlapping community detection with graph coordination games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect overlapping communities in an edge list
    Detect(DetectArgs),
    /// Score covers
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Generate benchmark graphs
    #[command(subcommand)]
    Gen(GenCommand),
    /// Edge-closeness analytics
    #[command(subcommand)]
    Stats(StatsCommand),
}

/// How an edge-list file is read.
#[derive(Args, Clone, Copy, Debug)]
pub struct GraphFlags {
    /// Read a third column as the edge weight
    #[arg(long)]
    pub weighted: bool,
    /// Labels are 1..=N (LFR style); every label up to the largest is a vertex
    #[arg(long)]
    pub one_indexed: bool,
}

#[derive(Args, Debug)]
pub struct DetectArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub graph_flags: GraphFlags,
    /// Strategies per player
    #[arg(long, default_value_t = 40)]
    pub r: usize,
    /// Number of phase-1 games
    #[arg(long, default_value_t = 100)]
    pub k: usize,
    /// Overlap parameter in (0, 1]; 1 gives a disjoint cover
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Closeness threshold for the intermediate partition
    #[arg(long, default_value_t = 0.95)]
    pub beta: f64,
    /// Good-enough improvement parameter; 0 is exact best response
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for phase 1 [default: available cores]
    #[arg(long)]
    pub threads: Option<usize>,
    /// Cap on full passes per game and for phase 2
    #[arg(long, default_value_t = 1000)]
    pub max_rounds: usize,
    /// Cover output, one community per line
    #[arg(long)]
    pub out: PathBuf,
    /// Write per-edge closeness as CSV (u,v,w,t,p)
    #[arg(long)]
    pub emit_closeness: Option<PathBuf>,
    /// Write the run manifest here instead of stderr
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Also write one cover per alpha in lo:hi:step to <out>.alpha<value>
    #[arg(long, value_parser = detect::parse_sweep)]
    pub alpha_sweep: Option<detect::Sweep>,
    /// Suppress the per-game convergence report
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Overlapping NMI between two covers
    Nmi(NmiArgs),
    /// Weighted modularity of a disjoint cover
    Modularity(ModularityArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    /// Space-separated members, one community per line
    Communities,
    /// "vertex comm [comm ...]" per line (LFR community.dat)
    Memberships,
}

#[derive(Args, Debug)]
pub struct NmiArgs {
    #[arg(long)]
    pub detected: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, value_enum, default_value = "communities")]
    pub detected_format: FormatArg,
    #[arg(long, value_enum, default_value = "communities")]
    pub truth_format: FormatArg,
    /// Print {"nmi": x} instead of the bare value
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ModularityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub graph_flags: GraphFlags,
    #[arg(long)]
    pub cover: PathBuf,
    #[arg(long, value_enum, default_value = "communities")]
    pub cover_format: FormatArg,
    /// Print {"modularity": q} instead of the bare value
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Planted overlapping partition with uniform community sizes
    Planted(PlantedArgs),
}

#[derive(Args, Debug)]
pub struct PlantedArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub communities: usize,
    /// Nominal community size [default: ceil(n / communities)]
    #[arg(long)]
    pub comm_size: Option<usize>,
    /// Mixing factor in [0, 0.5]
    #[arg(long)]
    pub mu: f64,
    /// Fraction of overlapping vertices in [0, 0.5]
    #[arg(long, default_value_t = 0.0)]
    pub on_fraction: f64,
    /// Memberships per overlapping vertex
    #[arg(long, default_value_t = 2)]
    pub om: usize,
    #[arg(long)]
    pub avg_degree: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_graph: PathBuf,
    #[arg(long)]
    pub out_truth: PathBuf,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Correlation of closeness with tie-strength, and its histogram
    Closeness(ClosenessArgs),
}

#[derive(Args, Debug)]
pub struct ClosenessArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub graph_flags: GraphFlags,
    /// CSV written by detect --emit-closeness
    #[arg(long)]
    pub closeness: PathBuf,
    #[arg(long)]
    pub out_scatter: PathBuf,
    #[arg(long)]
    pub out_hist: PathBuf,
    #[arg(long, default_value_t = nash_overlap::eval::DEFAULT_BIN_WIDTH)]
    pub bin_width: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Detect(args) => detect::run(&args),
        Command::Eval(EvalCommand::Nmi(args)) => score::nmi(&args),
        Command::Eval(EvalCommand::Modularity(args)) => score::modularity(&args),
        Command::Gen(GenCommand::Planted(args)) => gen::planted(&args),
        Command::Stats(StatsCommand::Closeness(args)) => stats::closeness(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
