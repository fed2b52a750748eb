//! Geometric policy iteration.
//!
//! GPI keeps `Q^π = (I - γP^π)⁻¹` alongside `V^π`. At state `s` the exact
//! value `V^δ(s)` of every single-state deviation `δ` is read off `Q^π` in
//! O(|S|) per action via Sherman–Morrison; the best one is committed with a
//! rank-1 update of `Q` and a full refresh `V = Q r^π`.

use std::time::Instant;

use super::{SolveReport, SolverKind, SolverOptions, SwitchAudit, TraceRecorder};
use crate::error::{MdpError, Result};
use crate::mdp::{evaluate_policy_exact, policy_matrices, DeterministicPolicy, Mdp, Policy, ResolventMatrix};
use crate::scalar::{dot, Scalar, Tolerances};

/// The rank-1 perturbation induced by switching state `state` to `action`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOneUpdate<T> {
    pub state: usize,
    pub action: usize,
    /// `γ (P(s, a, ·) - P(s, π(s), ·))`
    pub w: Vec<T>,
    /// `R(s, a) - R(s, π(s))`
    pub delta_r: T,
    /// `s`-th column of `Q^π`.
    pub q_s: Vec<T>,
}

impl<T: Scalar> RankOneUpdate<T> {
    pub fn new(
        mdp: &Mdp<T>,
        policy: &DeterministicPolicy,
        q: &ResolventMatrix<T>,
        state: usize,
        action: usize,
    ) -> Result<Self> {
        mdp.check_state(state)?;
        mdp.check_action(action)?;
        let current = policy.action(state);
        let g = mdp.gamma();
        let w = mdp
            .transition_row(state, action)
            .iter()
            .zip(mdp.transition_row(state, current))
            .map(|(&pa, &pc)| g * (pa - pc))
            .collect();
        Ok(Self {
            state,
            action,
            w,
            delta_r: mdp.reward(state, action) - mdp.reward(state, current),
            q_s: q.column(state),
        })
    }

    fn denominator(&self, tol: T) -> Result<T> {
        let denom = T::one() - dot(&self.w, &self.q_s);
        check_denominator(denom, self.state, self.action, tol)
    }
}

fn check_denominator<T: Scalar>(denom: T, state: usize, action: usize, tol: T) -> Result<T> {
    if !(denom.abs() >= tol) {
        return Err(MdpError::Degenerate {
            state,
            action,
            denominator: denom.abs().as_f64(),
        });
    }
    Ok(denom)
}

/// `(1_s + Q(s,s)/(1 - wᵀq_s) w)ᵀ (V + Δr q_s)` expanded into scalars:
/// `V(s) + Δr q_s(s) + Q(s,s)/(1 - wᵀq_s) (wᵀV + Δr wᵀq_s)`.
#[inline]
fn switched_value<T: Scalar>(v_s: T, q_ss: T, w_dot_q: T, w_dot_v: T, delta_r: T, denom: T) -> T {
    v_s + delta_r * q_ss + q_ss / denom * (w_dot_v + delta_r * w_dot_q)
}

/// Value at `upd.state` of the policy obtained by applying `upd`.
pub fn gpi_candidate_value<T: Scalar>(q: &ResolventMatrix<T>, v: &[T], upd: &RankOneUpdate<T>) -> Result<T> {
    let s = upd.state;
    let denom = upd.denominator(T::default_tolerances().degeneracy)?;
    Ok(switched_value(
        v[s],
        q.q[(s, s)],
        dot(&upd.w, &upd.q_s),
        dot(&upd.w, v),
        upd.delta_r,
        denom,
    ))
}

/// `Q ← Q + q_s (wᵀQ) / (1 - wᵀq_s)`.
pub fn gpi_apply_switch<T: Scalar>(mut q: ResolventMatrix<T>, upd: &RankOneUpdate<T>) -> Result<ResolventMatrix<T>> {
    apply_in_place(&mut q, upd, T::default_tolerances().degeneracy)?;
    Ok(q)
}

fn apply_in_place<T: Scalar>(q: &mut ResolventMatrix<T>, upd: &RankOneUpdate<T>, tol: T) -> Result<()> {
    let denom = upd.denominator(tol)?;
    let w_q = q.q.vec_mul(&upd.w);
    q.q.add_outer(T::one() / denom, &upd.q_s, &w_q);
    Ok(())
}

/// Mutable state shared by synchronous and asynchronous GPI.
pub(crate) struct GpiEngine<'a, T> {
    mdp: &'a Mdp<T>,
    pub policy: DeterministicPolicy,
    pub q: ResolventMatrix<T>,
    pub v: Vec<T>,
    r_pi: Vec<T>,
    tol: Tolerances<T>,
    refresh_every: usize,
    since_refresh: usize,
    pub audit: Option<SwitchAudit<T>>,
}

impl<'a, T: Scalar> GpiEngine<'a, T> {
    pub fn new(mdp: &'a Mdp<T>, initial: &DeterministicPolicy, opts: &SolverOptions<T>) -> Result<Self> {
        initial.validate_for(mdp)?;
        let (v, q) = evaluate_policy_exact(mdp, initial)?;
        let r_pi = (0..mdp.n_states()).map(|s| mdp.reward(s, initial.action(s))).collect();
        Ok(Self {
            mdp,
            policy: initial.clone(),
            q,
            v,
            r_pi,
            tol: opts.tolerances,
            refresh_every: opts.refresh_every.unwrap_or(mdp.n_states()).max(1),
            since_refresh: 0,
            audit: opts.audit.then(SwitchAudit::default),
        })
    }

    /// Switched-policy values `V^δ(s)` for every action at `s`; the entry for
    /// the incumbent is `V(s)` itself.
    pub fn candidate_values(&self, s: usize) -> Result<Vec<T>> {
        let mdp = self.mdp;
        let g = mdp.gamma();
        let current = self.policy.action(s);
        let q_s = self.q.column(s);
        let q_ss = q_s[s];
        let base_row = mdp.transition_row(s, current);
        let base_pq = dot(base_row, &q_s);
        let base_pv = dot(base_row, &self.v);
        let base_r = mdp.reward(s, current);
        (0..mdp.n_actions())
            .map(|a| {
                if a == current {
                    return Ok(self.v[s]);
                }
                let row = mdp.transition_row(s, a);
                let w_dot_q = g * (dot(row, &q_s) - base_pq);
                let w_dot_v = g * (dot(row, &self.v) - base_pv);
                let denom = check_denominator(T::one() - w_dot_q, s, a, self.tol.degeneracy)?;
                Ok(switched_value(self.v[s], q_ss, w_dot_q, w_dot_v, mdp.reward(s, a) - base_r, denom))
            })
            .collect()
    }

    /// Argmax of the candidate values; the incumbent wins exact ties,
    /// otherwise the smallest index.
    pub fn best_action(&self, s: usize) -> Result<(usize, T)> {
        let current = self.policy.action(s);
        let mut best = (current, self.v[s]);
        for (a, c) in self.candidate_values(s)?.into_iter().enumerate() {
            if c > best.1 {
                best = (a, c);
            }
        }
        Ok(best)
    }

    /// Commits the best switch at `s` if it strictly improves `V(s)`.
    pub fn try_improve(&mut self, s: usize) -> Result<bool> {
        let (a, value) = self.best_action(s)?;
        if a == self.policy.action(s) || !(value > self.v[s] + self.tol.improvement) {
            return Ok(false);
        }
        let before = self.audit.as_ref().map(|_| self.v.clone());
        let upd = RankOneUpdate::new(self.mdp, &self.policy, &self.q, s, a)?;
        apply_in_place(&mut self.q, &upd, self.tol.degeneracy)?;
        self.policy.set_action(s, a);
        self.r_pi[s] = self.mdp.reward(s, a);
        self.v = self.q.q.mul_vec(&self.r_pi);
        if let Some(before) = before {
            self.audit_switch(s, &before)?;
        }
        self.since_refresh += 1;
        if self.since_refresh >= self.refresh_every {
            self.refresh()?;
        }
        Ok(true)
    }

    /// Recomputes `Q` and `V` from scratch if any switch happened since the
    /// last refresh.
    pub fn refresh(&mut self) -> Result<()> {
        if self.since_refresh == 0 {
            return Ok(());
        }
        let (v, q) = evaluate_policy_exact(self.mdp, &self.policy)?;
        self.v = v;
        self.q = q;
        self.since_refresh = 0;
        if self.audit.is_some() {
            let res = self.inverse_residual()?;
            if let Some(audit) = self.audit.as_mut() {
                audit.max_refreshed_residual = audit.max_refreshed_residual.max(res);
            }
        }
        Ok(())
    }

    fn inverse_residual(&self) -> Result<T> {
        let pm = policy_matrices(self.mdp, &self.policy)?;
        Ok(self.q.inverse_residual(self.mdp.gamma(), &pm.p_pi))
    }

    fn audit_switch(&mut self, s: usize, before: &[T]) -> Result<()> {
        let slack = self.tol.residual;
        let drop = before
            .iter()
            .zip(&self.v)
            .map(|(&b, &a)| b - a)
            .fold(T::neg_infinity(), T::max);
        let excess = self
            .candidate_values(s)?
            .into_iter()
            .map(|c| c - self.v[s])
            .fold(T::neg_infinity(), T::max);
        let residual = self.inverse_residual()?;
        let audit = self.audit.as_mut().expect("audit enabled");
        audit.switches_checked += 1;
        if drop > slack {
            audit.monotonicity_violations += 1;
        }
        if excess > slack {
            audit.endpoint_violations += 1;
        }
        audit.max_value_drop = audit.max_value_drop.max(drop);
        audit.max_endpoint_excess = audit.max_endpoint_excess.max(excess);
        audit.max_inverse_residual = audit.max_inverse_residual.max(residual);
        Ok(())
    }
}

/// GPI with the default options and the given refresh period.
pub fn geometric_policy_iteration<T: Scalar>(
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
    refresh_every: usize,
) -> Result<SolveReport<T>> {
    let opts = SolverOptions {
        refresh_every: Some(refresh_every),
        ..SolverOptions::default()
    };
    geometric_policy_iteration_with(mdp, initial, &opts)
}

/// Sweeps states in ascending order, committing the best switch at each one,
/// until a full sweep commits nothing.
pub fn geometric_policy_iteration_with<T: Scalar>(
    mdp: &Mdp<T>,
    initial: &DeterministicPolicy,
    opts: &SolverOptions<T>,
) -> Result<SolveReport<T>> {
    let start = Instant::now();
    let mut engine = GpiEngine::new(mdp, initial, opts)?;
    let mut trace = TraceRecorder::new();
    trace.full(0, &engine.v);
    let mut iterations = 0;
    let mut switches = 0;
    let mut converged = false;
    loop {
        iterations += 1;
        let mut switched = false;
        for s in 0..mdp.n_states() {
            if engine.try_improve(s)? {
                switched = true;
                switches += 1;
                trace.full(switches, &engine.v);
            }
        }
        if !switched {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        engine.refresh()?;
    }
    let wall_time = start.elapsed();
    Ok(SolveReport {
        solver: SolverKind::Gpi,
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

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Mdp<f64> {
        Mdp::new(
            0.9,
            vec![vec![0.0, 1.0, 0.2], vec![0.3, 0.0, 0.6]],
            vec![
                vec![vec![0.9, 0.1], vec![0.2, 0.8], vec![0.5, 0.5]],
                vec![vec![0.4, 0.6], vec![1.0, 0.0], vec![0.0, 1.0]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn incumbent_candidate_is_current_value() {
        let mdp = small();
        let pi = DeterministicPolicy::new(vec![2, 1], 3).unwrap();
        let (v, q) = evaluate_policy_exact(&mdp, &pi).unwrap();
        let upd = RankOneUpdate::new(&mdp, &pi, &q, 0, 2).unwrap();
        assert!(upd.w.iter().all(|&x| x == 0.0));
        assert_eq!(upd.delta_r, 0.0);
        assert_eq!(gpi_candidate_value(&q, &v, &upd).unwrap(), v[0]);
        let q2 = gpi_apply_switch(q.clone(), &upd).unwrap();
        assert_eq!(q2, q);
    }

    #[test]
    fn zero_discount_candidate_is_reward() {
        let mut mdp = small();
        mdp = Mdp::from_flat(2, 3, 0.0, mdp.rewards_flat().to_vec(), mdp.transitions_flat().to_vec()).unwrap();
        let pi = DeterministicPolicy::constant(2, 0);
        let (v, q) = evaluate_policy_exact(&mdp, &pi).unwrap();
        for s in 0..2 {
            for a in 0..3 {
                let upd = RankOneUpdate::new(&mdp, &pi, &q, s, a).unwrap();
                assert_eq!(gpi_candidate_value(&q, &v, &upd).unwrap(), mdp.reward(s, a));
            }
        }
    }

    #[test]
    fn degenerate_denominator_is_an_error() {
        let upd = RankOneUpdate {
            state: 0,
            action: 1,
            w: vec![1.0],
            delta_r: 0.0,
            q_s: vec![1.0],
        };
        let q = ResolventMatrix {
            q: crate::linalg::Matrix::identity(1),
        };
        assert!(matches!(
            gpi_candidate_value(&q, &[0.0], &upd),
            Err(MdpError::Degenerate { .. })
        ));
        assert!(gpi_apply_switch(q, &upd).is_err());
    }

    #[test]
    fn optimal_start_is_a_fixed_point() {
        let mdp = small();
        let first = geometric_policy_iteration(&mdp, &DeterministicPolicy::constant(2, 0), 2).unwrap();
        assert!(first.converged);
        let again = geometric_policy_iteration(&mdp, &first.final_policy, 2).unwrap();
        assert_eq!((again.iterations, again.action_switches), (1, 0));
        assert_eq!(again.final_value, first.final_value);
    }
}
