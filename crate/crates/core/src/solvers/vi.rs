use std::time::Instant;

use super::{SolveReport, SolverKind, TraceRecorder};
use crate::mdp::{optimality_bellman, Mdp};
use crate::scalar::{sup_distance, Scalar};

/// Synchronous value iteration from `V = 0`.
///
/// Stops once a sweep changes no entry by `tol` or more; the reported policy
/// is greedy with respect to the last iterate.
pub fn value_iteration<T: Scalar>(mdp: &Mdp<T>, tol: T, max_iters: usize) -> SolveReport<T> {
    assert!(tol > T::zero(), "value iteration tolerance must be positive");
    let start = Instant::now();
    let mut v = vec![T::zero(); mdp.n_states()];
    let mut trace = TraceRecorder::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters.max(1) {
        let (next, _) = optimality_bellman(mdp, &v).expect("value vector sized to the model");
        iterations += 1;
        let delta = sup_distance(&next, &v);
        v = next;
        trace.full(iterations, &v);
        if delta < tol {
            converged = true;
            break;
        }
    }
    let (_, policy) = optimality_bellman(mdp, &v).expect("value vector sized to the model");
    let wall_time = start.elapsed();
    SolveReport {
        solver: SolverKind::Vi,
        iterations,
        action_switches: 0,
        wall_time,
        value_trace: trace.finish(&v),
        final_policy: policy,
        final_value: v,
        converged,
        audit: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_discount_takes_two_sweeps() {
        let mdp = Mdp::new(
            0.0,
            vec![vec![1.0, 3.0], vec![-1.0, -2.0]],
            vec![vec![vec![0.5, 0.5]; 2], vec![vec![1.0, 0.0]; 2]],
        )
        .unwrap();
        let rep = value_iteration(&mdp, 1e-10, 100);
        assert!(rep.converged);
        assert_eq!(rep.iterations, 2);
        assert_eq!(rep.final_value, vec![3.0, -1.0]);
        assert_eq!(rep.final_policy.actions(), &[1, 0]);
    }

    #[test]
    fn single_state_reaches_ten() {
        let mdp = Mdp::new(0.9f64, vec![vec![1.0, 0.5]], vec![vec![vec![1.0]; 2]]).unwrap();
        let rep = value_iteration(&mdp, 1e-10, 10_000);
        assert!(rep.converged);
        assert!((rep.final_value[0] - 10.0).abs() < 1e-8);
    }

    #[test]
    fn cap_reports_non_convergence() {
        let mdp = Mdp::new(0.99, vec![vec![1.0]], vec![vec![vec![1.0]]]).unwrap();
        let rep = value_iteration(&mdp, 1e-12, 5);
        assert!(!rep.converged);
        assert_eq!(rep.iterations, 5);
    }
}
