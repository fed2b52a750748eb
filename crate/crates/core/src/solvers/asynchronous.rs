//! Order-free variants driven by an externally supplied state sequence.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gpi::GpiEngine;
use super::{SolveReport, SolverKind, SolverOptions, TraceRecorder};
use crate::error::Result;
use crate::mdp::{best_backup, optimality_bellman, optimality_residual, DeterministicPolicy, Mdp};
use crate::scalar::Scalar;

/// Tracks which states were visited since the last change; a complete
/// cover without change means convergence.
struct CoverWindow {
    seen: Vec<bool>,
    count: usize,
}

impl CoverWindow {
    fn new(n: usize) -> Self {
        Self {
            seen: vec![false; n],
            count: 0,
        }
    }

    fn reset(&mut self) {
        self.seen.iter_mut().for_each(|x| *x = false);
        self.count = 0;
    }

    /// Marks `s`; returns true once every state has been seen.
    fn visit(&mut self, s: usize) -> bool {
        if !self.seen[s] {
            self.seen[s] = true;
            self.count += 1;
        }
        self.count == self.seen.len()
    }
}

/// Uniformly random states, reproducible from `seed`.
pub fn random_state_sequence(n_states: usize, len: usize, seed: u64) -> impl Iterator<Item = usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(move |_| rng.gen_range(0..n_states))
}

/// `sweeps` repetitions of `0, 1, ..., n_states - 1`.
pub fn sweep_sequence(n_states: usize, sweeps: usize) -> impl Iterator<Item = usize> {
    (0..sweeps).flat_map(move |_| 0..n_states)
}

pub fn async_gpi<T: Scalar>(
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
    state_sequence: impl IntoIterator<Item = usize>,
) -> Result<SolveReport<T>> {
    async_gpi_with(mdp, initial, state_sequence, &SolverOptions::default())
}

/// GPI's switch rule applied at each visited state in turn.
///
/// Stops as soon as a stretch of the sequence covering every state commits no
/// switch; the run is then marked converged if `‖T*V - V‖∞ ≤ 1e-8`
/// (scaled for the scalar type).
pub fn async_gpi_with<T: Scalar>(
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
    state_sequence: impl IntoIterator<Item = usize>,
    opts: &SolverOptions<T>,
) -> Result<SolveReport<T>> {
    let start = Instant::now();
    let mut engine = GpiEngine::new(mdp, initial, opts)?;
    let mut trace = TraceRecorder::new();
    trace.full(0, &engine.v);
    let mut window = CoverWindow::new(mdp.n_states());
    let mut iterations = 0;
    let mut switches = 0;
    let mut converged = false;
    for s in state_sequence {
        mdp.check_state(s)?;
        iterations += 1;
        if engine.try_improve(s)? {
            switches += 1;
            window.reset();
            trace.full(iterations, &engine.v);
        } else {
            trace.same(iterations);
            if window.visit(s) {
                converged = true;
                break;
            }
        }
    }
    if converged {
        engine.refresh()?;
        converged = optimality_residual(mdp, &engine.v) <= fixed_point_tol::<T>();
    }
    let wall_time = start.elapsed();
    Ok(SolveReport {
        solver: SolverKind::AsyncGpi,
        iterations,
        action_switches: switches,
        wall_time,
        value_trace: trace.finish(&engine.v),
        final_policy: engine.policy,
        final_value: engine.v,
        converged,
        audit: engine.audit,
    })
}

fn fixed_point_tol<T: Scalar>() -> T {
    T::default_tolerances().residual * T::of(10.0)
}

/// Asynchronous (in-place, single-state) value iteration from `V = 0`.
///
/// Converged once a stretch covering every state changes no entry by more
/// than `tol`.
pub fn async_vi<T: Scalar>(
    mdp: &Mdp<T>,
    state_sequence: impl IntoIterator<Item = usize>,
    tol: T,
) -> Result<SolveReport<T>> {
    let start = Instant::now();
    let mut v = vec![T::zero(); mdp.n_states()];
    let mut trace = TraceRecorder::new();
    trace.full(0, &v);
    let mut window = CoverWindow::new(mdp.n_states());
    let mut iterations = 0;
    let mut converged = false;
    for s in state_sequence {
        mdp.check_state(s)?;
        iterations += 1;
        let (new, _) = best_backup(mdp, s, &v);
        let change = (new - v[s]).abs();
        v[s] = new;
        trace.entry(iterations, s, new);
        if change > tol {
            window.reset();
        } else if window.visit(s) {
            converged = true;
            break;
        }
    }
    let (_, policy) = optimality_bellman(mdp, &v)?;
    let wall_time = start.elapsed();
    Ok(SolveReport {
        solver: SolverKind::AsyncVi,
        iterations,
        action_switches: 0,
        wall_time,
        value_trace: trace.finish(&v),
        final_policy: policy,
        final_value: v,
        converged,
        audit: None,
    })
}
