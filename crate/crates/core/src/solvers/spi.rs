use std::time::Instant;

use super::{SolveReport, SolverKind, SolverOptions, TraceRecorder};
use crate::error::Result;
use crate::mdp::{evaluate_policy, DeterministicPolicy, Mdp, Policy};
use crate::scalar::Scalar;

/// Simple policy iteration: one switch per round, at the state-action pair
/// with the largest advantage (ties: smallest state, then smallest action).
pub fn simple_policy_iteration<T: Scalar>(
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
) -> Result<SolveReport<T>> {
    simple_policy_iteration_with(mdp, initial, &SolverOptions::default())
}

pub fn simple_policy_iteration_with<T: Scalar>(
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
    opts: &SolverOptions<T>,
) -> Result<SolveReport<T>> {
    initial.validate_for(mdp)?;
    let start = Instant::now();
    let mut policy = initial.clone();
    let mut trace = TraceRecorder::new();
    let mut iterations = 0;
    let mut switches = 0;
    let mut converged = false;
    let mut v;
    loop {
        v = evaluate_policy(mdp, &policy)?;
        iterations += 1;
        trace.full(iterations - 1, &v);
        let mut best = (T::neg_infinity(), 0, 0);
        for s in 0..mdp.n_states() {
            for a in 0..mdp.n_actions() {
                let adv = mdp.backup(s, a, &v) - v[s];
                if adv > best.0 {
                    best = (adv, s, a);
                }
            }
        }
        let (adv, s, a) = best;
        if adv <= opts.tolerances.improvement {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        policy.set_action(s, a);
        switches += 1;
    }
    let wall_time = start.elapsed();
    Ok(SolveReport {
        solver: SolverKind::Spi,
        iterations,
        action_switches: switches,
        wall_time,
        value_trace: trace.finish(&v),
        final_policy: policy,
        final_value: v,
        converged,
        audit: None,
    })
}
