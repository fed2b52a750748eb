//! Exact tabular solvers and the report type they share.

mod asynchronous;
mod gpi;
mod pi;
mod spi;
mod vi;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::MdpError;
use crate::mdp::{DeterministicPolicy, Mdp};
use crate::scalar::{mean, sup_distance, Scalar, Tolerances};

pub use asynchronous::{async_gpi, async_gpi_with, async_vi, random_state_sequence, sweep_sequence};
pub use gpi::{
    geometric_policy_iteration, geometric_policy_iteration_with, gpi_apply_switch, gpi_candidate_value,
    RankOneUpdate,
};
pub use pi::{policy_iteration, policy_iteration_with};
pub use spi::{simple_policy_iteration, simple_policy_iteration_with};
pub use vi::value_iteration;

/// Solver identifiers used in reports, CSV files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    Vi,
    Pi,
    Spi,
    Gpi,
    AsyncGpi,
    AsyncVi,
}

impl SolverKind {
    pub const ALL: [SolverKind; 6] = [
        SolverKind::Vi,
        SolverKind::Pi,
        SolverKind::Spi,
        SolverKind::Gpi,
        SolverKind::AsyncGpi,
        SolverKind::AsyncVi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Vi => "vi",
            SolverKind::Pi => "pi",
            SolverKind::Spi => "spi",
            SolverKind::Gpi => "gpi",
            SolverKind::AsyncGpi => "async_gpi",
            SolverKind::AsyncVi => "async_vi",
        }
    }

    pub fn is_async(self) -> bool {
        matches!(self, SolverKind::AsyncGpi | SolverKind::AsyncVi)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = MdpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| MdpError::InvalidInput(format!("unknown solver '{s}'")))
    }
}

impl Serialize for SolverKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for SolverKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Knobs shared by the policy-based solvers.
#[derive(Clone, Debug)]
pub struct SolverOptions<T> {
    pub tolerances: Tolerances<T>,
    /// Safety cap on sweeps (or rounds for SPI).
    pub max_iterations: usize,
    /// GPI: rebuild `Q` from scratch after this many committed switches.
    /// `None` means `|S|`.
    pub refresh_every: Option<usize>,
    /// Collect per-switch invariant diagnostics (costly: O(|S|³) per switch).
    pub audit: bool,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            max_iterations: 100_000,
            refresh_every: None,
            audit: false,
        }
    }
}

/// Settings for [`run_solver`], covering every solver kind.
#[derive(Clone, Debug)]
pub struct RunConfig<T> {
    pub options: SolverOptions<T>,
    /// Stopping tolerance of synchronous and asynchronous VI.
    pub vi_tol: T,
    /// Seed of the random state sequence fed to the asynchronous solvers.
    pub sequence_seed: u64,
    /// Length of that sequence; `None` means `2000 · |S|`.
    pub sequence_length: Option<usize>,
}

impl<T: Scalar> Default for RunConfig<T> {
    fn default() -> Self {
        Self {
            options: SolverOptions::default(),
            vi_tol: T::of(1e-10).max(T::epsilon() * T::of(64.0)),
            sequence_seed: 0,
            sequence_length: None,
        }
    }
}

/// Runs one solver by kind. VI and async VI ignore `initial`.
pub fn run_solver<T: Scalar>(
    kind: SolverKind,
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
    config: &RunConfig<T>,
) -> crate::error::Result<SolveReport<T>> {
    let opts = &config.options;
    let seq_len = config.sequence_length.unwrap_or(2000 * mdp.n_states());
    let sequence = || random_state_sequence(mdp.n_states(), seq_len, config.sequence_seed);
    match kind {
        SolverKind::Vi => Ok(value_iteration(mdp, config.vi_tol, opts.max_iterations)),
        SolverKind::Pi => policy_iteration_with(mdp, initial, opts),
        SolverKind::Spi => simple_policy_iteration_with(mdp, initial, opts),
        SolverKind::Gpi => geometric_policy_iteration_with(mdp, initial, opts),
        SolverKind::AsyncGpi => async_gpi_with(mdp, initial, sequence(), opts),
        SolverKind::AsyncVi => async_vi(mdp, sequence(), config.vi_tol),
    }
}

/// One trace entry: event index, mean of V, and `‖V - V_final‖∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint<T> {
    pub event: usize,
    pub mean: T,
    pub gap: T,
}

/// Invariant diagnostics gathered around every committed GPI switch.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SwitchAudit<T> {
    pub switches_checked: usize,
    /// Switches after which some entry of V dropped by more than the slack.
    pub monotonicity_violations: usize,
    /// Switches after which another action at the switched state still
    /// offered more than the slack of improvement.
    pub endpoint_violations: usize,
    pub max_value_drop: T,
    pub max_endpoint_excess: T,
    /// Worst `‖Q(I - γP^π) - I‖` right after a rank-1 update.
    pub max_inverse_residual: T,
    /// Worst residual right after a from-scratch refresh.
    pub max_refreshed_residual: T,
}

/// Outcome of one solver run.
#[derive(Clone, Debug)]
pub struct SolveReport<T> {
    pub solver: SolverKind,
    /// Full sweeps (VI: operator applications, SPI: rounds, async: sequence
    /// positions processed).
    pub iterations: usize,
    pub action_switches: usize,
    pub wall_time: Duration,
    pub value_trace: Vec<TracePoint<T>>,
    pub final_policy: DeterministicPolicy,
    pub final_value: Vec<T>,
    pub converged: bool,
    pub audit: Option<SwitchAudit<T>>,
}

impl<T: Scalar> SolveReport<T> {
    pub fn mean_final_value(&self) -> T {
        mean(&self.final_value)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "solver": self.solver.name(),
            "iterations": self.iterations,
            "action_switches": self.action_switches,
            "wall_time_ms": self.wall_time.as_secs_f64() * 1e3,
            "converged": self.converged,
            "final_value": self.final_value.iter().map(|v| v.as_f64()).collect::<Vec<_>>(),
            "final_policy": self.final_policy.actions(),
            "value_trace": self
                .value_trace
                .iter()
                .map(|p| serde_json::json!([p.event, p.mean.as_f64(), p.gap.as_f64()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }
}

/// `(|A|/(1-γ)) ln(1/(1-γ)) + |A| + 1`, the sweep bound for GPI.
pub fn iteration_bound(n_actions: usize, gamma: f64) -> f64 {
    let horizon = 1.0 / (1.0 - gamma);
    n_actions as f64 * horizon * horizon.ln() + n_actions as f64 + 1.0
}

/// Whether a GPI run stayed within [`iteration_bound`]. Diagnostic only.
pub fn iteration_bound_check<T: Scalar>(report: &SolveReport<T>, mdp: &Mdp<T>) -> bool {
    report.iterations as f64 <= iteration_bound(mdp.n_actions(), mdp.gamma().as_f64())
}

enum Snapshot<T> {
    Full(Vec<T>),
    Entry(usize, T),
    Same,
}

/// Collects value snapshots cheaply; means and gaps are resolved once the
/// final value is known.
pub(crate) struct TraceRecorder<T> {
    events: Vec<(usize, Snapshot<T>)>,
}

impl<T: Scalar> TraceRecorder<T> {
    pub fn new() -> Self {
        Self { events: Vec::new() }
    }

    pub fn full(&mut self, event: usize, v: &[T]) {
        self.events.push((event, Snapshot::Full(v.to_vec())));
    }

    /// Only entry `s` changed, to `value`.
    pub fn entry(&mut self, event: usize, s: usize, value: T) {
        self.events.push((event, Snapshot::Entry(s, value)));
    }

    pub fn same(&mut self, event: usize) {
        self.events.push((event, Snapshot::Same));
    }

    pub fn finish(self, final_value: &[T]) -> Vec<TracePoint<T>> {
        let mut cur: Vec<T> = Vec::new();
        let mut last = (T::zero(), T::zero());
        let mut out = Vec::with_capacity(self.events.len());
        for (event, snap) in self.events {
            match snap {
                Snapshot::Full(v) => {
                    cur = v;
                    last = (mean(&cur), sup_distance(&cur, final_value));
                }
                Snapshot::Entry(s, value) => {
                    cur[s] = value;
                    last = (mean(&cur), sup_distance(&cur, final_value));
                }
                Snapshot::Same => {}
            }
            out.push(TracePoint {
                event,
                mean: last.0,
                gap: last.1,
            });
        }
        out
    }
}
