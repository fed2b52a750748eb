mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mdp_gpi::SolverKind;

/// Exact solvers, geometry checks and benchmarks for tabular discounted MDPs.
///
/// Exit codes: 0 success, 1 input or usage error, 2 non-convergence or a
/// failed check.
#[derive(Parser, Debug)]
#[command(name = "mdp-gpi", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an MDP read from JSON and print or write the report.
    Solve(SolveArgs),
    /// Run the benchmark grid, or the asynchronous comparison with --async.
    Bench(BenchArgs),
    /// Polytope samples, hyperplane arrangement, LP export and checks.
    Geometry {
        #[command(subcommand)]
        action: GeometryCommand,
    },
    /// Check a model file against every invariant.
    Validate {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
    },
    /// Write a random MDP as JSON.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Report destination; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, default_value = "gpi", value_parser = parse_solver)]
    solver: SolverKind,
    /// Replace the model's discount factor.
    #[arg(long)]
    gamma: Option<f64>,
    /// Seed of the random state sequence used by the asynchronous solvers.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stopping tolerance of VI and async VI.
    #[arg(long)]
    tol: Option<f64>,
    /// Length of the asynchronous state sequence (default 2000·|S|).
    #[arg(long)]
    sequence_length: Option<usize>,
    /// GPI: rebuild the resolvent from scratch after this many switches.
    #[arg(long)]
    refresh_every: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,
    /// Print only the summary line, not the full report.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [50usize, 100, 200])]
    states: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [10usize, 50, 100])]
    actions: Vec<usize>,
    /// Number of seeds per cell.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// First seed; seeds are `seed..seed + seeds`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.9)]
    gamma: f64,
    #[arg(long, value_delimiter = ',', value_parser = parse_solver, conflicts_with = "async_mode")]
    solvers: Option<Vec<SolverKind>>,
    /// SPI is skipped for cells with more states than this.
    #[arg(long, default_value_t = 100, conflicts_with = "async_mode")]
    spi_max_states: usize,
    /// Start every solver from a seeded random policy instead of action 0.
    #[arg(long, conflicts_with = "async_mode")]
    random_initial: bool,
    /// Run the asynchronous GPI / VI comparison instead of the grid.
    #[arg(long = "async")]
    async_mode: bool,
    /// Length of the shared random state sequence (default 2000·|S|).
    #[arg(long)]
    sequence_length: Option<usize>,
    #[arg(long, default_value = "bench.csv", value_name = "PATH")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    states: usize,
    #[arg(long)]
    actions: usize,
    #[arg(long, default_value_t = 0.9)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GeometryCommand {
    /// Values of random stochastic policies, as CSV.
    Sample {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, default_value_t = 50_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append every deterministic policy.
        #[arg(long)]
        deterministic: bool,
        /// Append policies that are deterministic at one state (|S| ≤ 2).
        #[arg(long)]
        boundary_family: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The |S||A| hyperplanes, as CSV.
    Arrangement {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The value-function LP in CPLEX LP format.
    Lp {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Objective weights; uniform when omitted.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Line-theorem, boundary and vertex checks as JSON. Runs line and
    /// vertex checks when no check is selected.
    Check {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long)]
        line: bool,
        #[arg(long)]
        boundary: bool,
        #[arg(long)]
        vertex: bool,
        /// Boundary check sample size.
        #[arg(long, default_value_t = 50_000)]
        n: usize,
        /// Mixtures per state for the line check.
        #[arg(long, default_value_t = 50)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Boundary check pass threshold (default: one grid-cell diagonal).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn parse_solver(s: &str) -> Result<SolverKind, String> {
    s.parse().map_err(|e: mdp_gpi::MdpError| e.to_string())
}

/// What a successful command reports back to the shell.
pub enum Status {
    Ok,
    /// Non-convergence or a failed check.
    Numerical,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Numerical) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
