use std::time::Instant;

use super::{SolveReport, SolverKind, SolverOptions, TraceRecorder};
use crate::error::Result;
use crate::mdp::{best_backup, evaluate_policy, DeterministicPolicy, Mdp, Policy};
use crate::scalar::Scalar;

/// Howard's policy iteration: exact evaluation, then a greedy step at every
/// state against the same value vector.
pub fn policy_iteration<T: Scalar>(mdp: &Mdp<T>, initial: &DeterministicPolicy) -> Result<SolveReport<T>> {
    policy_iteration_with(mdp, initial, &SolverOptions::default())
}

pub fn policy_iteration_with<T: Scalar>(
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
        let mut changed = 0;
        for s in 0..mdp.n_states() {
            let incumbent = policy.action(s);
            let (best, a) = best_backup(mdp, s, &v);
            // the incumbent keeps near-ties so rounding cannot cycle
            if a != incumbent && best > mdp.backup(s, incumbent, &v) + opts.tolerances.improvement {
                policy.set_action(s, a);
                changed += 1;
            }
        }
        switches += changed;
        if changed == 0 {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            v = evaluate_policy(mdp, &policy)?;
            break;
        }
    }
    let wall_time = start.elapsed();
    Ok(SolveReport {
        solver: SolverKind::Pi,
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_action_terminates_immediately() {
        let mdp = Mdp::new(
            0.8,
            vec![vec![1.0], vec![0.0]],
            vec![vec![vec![0.5, 0.5]], vec![vec![0.0, 1.0]]],
        )
        .unwrap();
        let rep = policy_iteration(&mdp, &DeterministicPolicy::constant(2, 0)).unwrap();
        assert!(rep.converged);
        assert_eq!((rep.iterations, rep.action_switches), (1, 0));
    }

    #[test]
    fn invalid_initial_policy_is_rejected() {
        let mdp = Mdp::new(0.8, vec![vec![1.0]], vec![vec![vec![1.0]]]).unwrap();
        assert!(policy_iteration(&mdp, &DeterministicPolicy::constant(2, 0)).is_err());
    }
}
