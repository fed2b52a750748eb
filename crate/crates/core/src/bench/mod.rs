//! Random-MDP experiments comparing the solvers.

mod generate;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use generate::generate_random_mdp;

use crate::error::{MdpError, Result};
use crate::mdp::DeterministicPolicy;
use crate::random::stream_rng;
use crate::scalar::Scalar;
use crate::solvers::{
    async_gpi, async_vi, random_state_sequence, run_solver, RunConfig, SolveReport, SolverKind, TracePoint,
};

/// Experiment grid: every `(|S|, |A|)` cell is run for every seed.
#[derive(Clone, Debug)]
pub struct ExperimentGrid {
    pub state_sizes: Vec<usize>,
    pub action_sizes: Vec<usize>,
    pub gamma: f64,
    pub seeds: Vec<u64>,
    pub solvers: Vec<SolverKind>,
    /// Length of the random state sequence given to asynchronous solvers;
    /// `None` means `2000 · |S|`.
    pub async_sequence_length: Option<usize>,
    /// SPI is skipped for cells with more states than this.
    pub spi_max_states: Option<usize>,
    /// Draw the shared initial policy from the seed instead of action 0.
    pub random_initial: bool,
    pub vi_tol: f64,
    /// Run `(cell, seed)` jobs on the rayon pool.
    pub parallel: bool,
}

impl ExperimentGrid {
    /// `|S| ∈ {50, 100, 200}`, `|A| ∈ {10, 50, 100}`, γ = 0.9, 20 seeds,
    /// PI / GPI / SPI with SPI restricted to `|S| ≤ 100`.
    pub fn standard() -> Self {
        Self {
            state_sizes: vec![50, 100, 200],
            action_sizes: vec![10, 50, 100],
            gamma: 0.9,
            seeds: (0..20).collect(),
            solvers: vec![SolverKind::Spi, SolverKind::Pi, SolverKind::Gpi],
            async_sequence_length: None,
            spi_max_states: Some(100),
            random_initial: false,
            vi_tol: 1e-10,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.state_sizes.is_empty() || self.action_sizes.is_empty() || self.seeds.is_empty() {
            return Err(MdpError::InvalidInput("grid lists must be nonempty".into()));
        }
        if self.state_sizes.contains(&0) || self.action_sizes.contains(&0) {
            return Err(MdpError::InvalidInput("grid sizes must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(MdpError::Discount(self.gamma));
        }
        Ok(())
    }

    fn runs_solver(&self, kind: SolverKind, n_states: usize) -> bool {
        !(kind == SolverKind::Spi && self.spi_max_states.is_some_and(|m| n_states > m))
    }
}

/// One CSV row: `n_states,n_actions,seed,solver,iterations,action_switches,wall_time_ms,mean_final_value,converged`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n_states: usize,
    pub n_actions: usize,
    pub seed: u64,
    pub solver: SolverKind,
    pub iterations: usize,
    pub action_switches: usize,
    pub wall_time_ms: f64,
    pub mean_final_value: f64,
    pub converged: bool,
}

impl BenchRecord {
    fn from_report<T: Scalar>(n_states: usize, n_actions: usize, seed: u64, rep: &SolveReport<T>) -> Self {
        Self {
            n_states,
            n_actions,
            seed,
            solver: rep.solver,
            iterations: rep.iterations,
            action_switches: rep.action_switches,
            wall_time_ms: rep.wall_time.as_secs_f64() * 1e3,
            mean_final_value: rep.mean_final_value().as_f64(),
            converged: rep.converged,
        }
    }
}

/// The initial policy shared by all solvers of one `(cell, seed)` job.
pub fn initial_policy(n_states: usize, n_actions: usize, seed: u64, random: bool) -> DeterministicPolicy {
    if !random {
        return DeterministicPolicy::constant(n_states, 0);
    }
    use rand::Rng;
    let mut rng = stream_rng(seed, u64::MAX);
    let actions = (0..n_states).map(|_| rng.gen_range(0..n_actions)).collect();
    DeterministicPolicy::new(actions, n_actions).expect("actions drawn in range")
}

fn run_job(grid: &ExperimentGrid, n_states: usize, n_actions: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    let mdp = generate_random_mdp::<f64>(n_states, n_actions, grid.gamma, seed)?;
    let initial = initial_policy(n_states, n_actions, seed, grid.random_initial);
    let config = RunConfig {
        vi_tol: grid.vi_tol,
        sequence_seed: seed,
        sequence_length: grid.async_sequence_length,
        ..RunConfig::default()
    };
    let mut out = Vec::new();
    for &kind in &grid.solvers {
        if !grid.runs_solver(kind, n_states) {
            continue;
        }
        let record = match run_solver(kind, &mdp, &initial, &config) {
            Ok(rep) => BenchRecord::from_report(n_states, n_actions, seed, &rep),
            // numerical failures are recorded, the grid carries on
            Err(_) => BenchRecord {
                n_states,
                n_actions,
                seed,
                solver: kind,
                iterations: 0,
                action_switches: 0,
                wall_time_ms: 0.0,
                mean_final_value: f64::NAN,
                converged: false,
            },
        };
        out.push(record);
    }
    Ok(out)
}

/// Runs the whole grid; records are sorted by `(n_states, n_actions, seed)`
/// and then by the grid's solver order. Writes CSV to `out` when given.
pub fn run_grid(grid: &ExperimentGrid, out: Option<&Path>) -> Result<Vec<BenchRecord>> {
    grid.validate()?;
    let mut jobs = Vec::new();
    for &n in &grid.state_sizes {
        for &m in &grid.action_sizes {
            for &seed in &grid.seeds {
                jobs.push((n, m, seed));
            }
        }
    }
    let results: Vec<Vec<BenchRecord>> = if grid.parallel {
        jobs.par_iter()
            .map(|&(n, m, seed)| run_job(grid, n, m, seed))
            .collect::<Result<_>>()?
    } else {
        jobs.iter()
            .map(|&(n, m, seed)| run_job(grid, n, m, seed))
            .collect::<Result<_>>()?
    };
    let records: Vec<BenchRecord> = results.into_iter().flatten().collect();
    if let Some(path) = out {
        write_bench_csv(&records, File::create(path)?)?;
    }
    Ok(records)
}

pub fn write_bench_csv<W: Write>(records: &[BenchRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if records.is_empty() {
        w.write_record([
            "n_states",
            "n_actions",
            "seed",
            "solver",
            "iterations",
            "action_switches",
            "wall_time_ms",
            "mean_final_value",
            "converged",
        ])?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_bench_csv(path: impl AsRef<Path>) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Median of a sample (mean of the two middle values for even sizes).
pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty sample");
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Async-GPI and async-VI driven by one shared random state sequence.
#[derive(Clone, Debug)]
pub struct AsyncComparison {
    pub gpi: SolveReport<f64>,
    pub vi: SolveReport<f64>,
}

/// Stopping tolerance of async VI in the comparison.
pub const ASYNC_VI_TOL: f64 = 1e-9;

pub fn run_async_comparison(
    n_states: usize,
    n_actions: usize,
    gamma: f64,
    seed: u64,
    sequence_length: usize,
) -> Result<AsyncComparison> {
    if sequence_length < n_states {
        return Err(MdpError::InvalidInput(format!(
            "sequence length {sequence_length} is shorter than the state count {n_states}"
        )));
    }
    let mdp = generate_random_mdp::<f64>(n_states, n_actions, gamma, seed)?;
    let initial = DeterministicPolicy::constant(n_states, 0);
    let seq = || random_state_sequence(n_states, sequence_length, seed);
    Ok(AsyncComparison {
        gpi: async_gpi(&mdp, &initial, seq())?,
        vi: async_vi(&mdp, seq(), ASYNC_VI_TOL)?,
    })
}

/// First update index after which the trace mean stays within `tol` of the
/// final mean.
pub fn updates_to_reach<T: Scalar>(trace: &[TracePoint<T>], tol: f64) -> usize {
    let Some(last) = trace.last() else { return 0 };
    let target = last.mean.as_f64();
    let mut idx = last.event;
    for p in trace.iter().rev() {
        if (p.mean.as_f64() - target).abs() > tol {
            break;
        }
        idx = p.event;
    }
    idx
}

impl AsyncComparison {
    /// CSV with header `solver,update_index,mean_value`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = BufWriter::new(writer);
        writeln!(w, "solver,update_index,mean_value")?;
        for rep in [&self.gpi, &self.vi] {
            for p in &rep.value_trace {
                writeln!(w, "{},{},{}", rep.solver, p.event, p.mean)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
