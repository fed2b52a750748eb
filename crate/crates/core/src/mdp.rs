//! The MDP model, policies and the Bellman machinery shared by all solvers.

use crate::error::{MdpError, Result};
use crate::linalg::{Lu, Matrix};
use crate::scalar::{dot, Scalar};

/// Finite discounted MDP with a uniform action set.
///
/// Immutable after construction. Rewards are stored row-major by `(s, a)`,
/// transitions by `(s, a, s')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mdp<T> {
    n_states: usize,
    n_actions: usize,
    gamma: T,
    rewards: Vec<T>,
    transitions: Vec<T>,
}

impl<T: Scalar> Mdp<T> {
    /// Builds and validates an MDP from nested `rewards[s][a]` and
    /// `transitions[s][a][s']` tables.
    pub fn new(gamma: T, rewards: Vec<Vec<T>>, transitions: Vec<Vec<Vec<T>>>) -> Result<Self> {
        Self::with_tolerance(gamma, rewards, transitions, T::default_tolerances().stochastic)
    }

    pub fn with_tolerance(
        gamma: T,
        rewards: Vec<Vec<T>>,
        transitions: Vec<Vec<Vec<T>>>,
        stochastic_tol: T,
    ) -> Result<Self> {
        let n_states = rewards.len();
        let n_actions = rewards.first().map_or(0, Vec::len);
        if transitions.len() != n_states {
            return Err(MdpError::DimensionMismatch {
                what: "transition table states",
                expected: n_states,
                got: transitions.len(),
            });
        }
        let mut flat_r = Vec::with_capacity(n_states * n_actions);
        for row in &rewards {
            if row.len() != n_actions {
                return Err(MdpError::DimensionMismatch {
                    what: "reward row actions",
                    expected: n_actions,
                    got: row.len(),
                });
            }
            flat_r.extend_from_slice(row);
        }
        let mut flat_p = Vec::with_capacity(n_states * n_actions * n_states);
        for per_state in &transitions {
            if per_state.len() != n_actions {
                return Err(MdpError::DimensionMismatch {
                    what: "transition actions",
                    expected: n_actions,
                    got: per_state.len(),
                });
            }
            for row in per_state {
                if row.len() != n_states {
                    return Err(MdpError::DimensionMismatch {
                        what: "transition row length",
                        expected: n_states,
                        got: row.len(),
                    });
                }
                flat_p.extend_from_slice(row);
            }
        }
        Self::from_flat_with_tolerance(n_states, n_actions, gamma, flat_r, flat_p, stochastic_tol)
    }

    /// Builds from flat row-major storage.
    pub fn from_flat(
        n_states: usize,
        n_actions: usize,
        gamma: T,
        rewards: Vec<T>,
        transitions: Vec<T>,
    ) -> Result<Self> {
        Self::from_flat_with_tolerance(
            n_states,
            n_actions,
            gamma,
            rewards,
            transitions,
            T::default_tolerances().stochastic,
        )
    }

    pub fn from_flat_with_tolerance(
        n_states: usize,
        n_actions: usize,
        gamma: T,
        rewards: Vec<T>,
        transitions: Vec<T>,
        stochastic_tol: T,
    ) -> Result<Self> {
        if n_states == 0 || n_actions == 0 {
            return Err(MdpError::InvalidInput(format!(
                "n_states and n_actions must be positive (got {n_states}, {n_actions})"
            )));
        }
        if rewards.len() != n_states * n_actions {
            return Err(MdpError::DimensionMismatch {
                what: "reward entries",
                expected: n_states * n_actions,
                got: rewards.len(),
            });
        }
        if transitions.len() != n_states * n_actions * n_states {
            return Err(MdpError::DimensionMismatch {
                what: "transition entries",
                expected: n_states * n_actions * n_states,
                got: transitions.len(),
            });
        }
        if !(gamma >= T::zero() && gamma < T::one()) {
            return Err(MdpError::Discount(gamma.as_f64()));
        }
        for (i, r) in rewards.iter().enumerate() {
            if !r.is_finite() {
                return Err(MdpError::NonFinite(format!(
                    "reward R({}, {}) = {}",
                    i / n_actions,
                    i % n_actions,
                    r
                )));
            }
        }
        for (i, row) in transitions.chunks(n_states).enumerate() {
            let (s, a) = (i / n_actions, i % n_actions);
            if let Some((sp, p)) = row.iter().enumerate().find(|(_, p)| !p.is_finite()) {
                return Err(MdpError::NonFinite(format!("transition P({s}, {a}, {sp}) = {p}")));
            }
            if let Some((sp, p)) = row.iter().enumerate().find(|(_, &p)| p < T::zero()) {
                return Err(MdpError::Negative(format!("transition P({s}, {a}, {sp}) = {p} < 0")));
            }
            let sum: T = row.iter().copied().sum();
            if (sum - T::one()).abs() > stochastic_tol {
                return Err(MdpError::Stochasticity(format!(
                    "row P({s}, {a}, ·) sums to {sum}, not 1"
                )));
            }
        }
        Ok(Self {
            n_states,
            n_actions,
            gamma,
            rewards,
            transitions,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn reward(&self, s: usize, a: usize) -> T {
        self.rewards[s * self.n_actions + a]
    }

    /// The distribution `P(s, a, ·)`.
    pub fn transition_row(&self, s: usize, a: usize) -> &[T] {
        let start = (s * self.n_actions + a) * self.n_states;
        &self.transitions[start..start + self.n_states]
    }

    pub fn rewards_flat(&self) -> &[T] {
        &self.rewards
    }

    pub fn transitions_flat(&self) -> &[T] {
        &self.transitions
    }

    /// `R(s, a) + γ Σ P(s'|s,a) V(s')`.
    pub fn backup(&self, s: usize, a: usize, v: &[T]) -> T {
        self.reward(s, a) + self.gamma * dot(self.transition_row(s, a), v)
    }

    /// `(min R / (1-γ), max R / (1-γ))`, the range of any policy value.
    pub fn value_bounds(&self) -> (T, T) {
        let scale = T::one() / (T::one() - self.gamma);
        let lo = self.rewards.iter().copied().fold(T::infinity(), T::min);
        let hi = self.rewards.iter().copied().fold(T::neg_infinity(), T::max);
        (lo * scale, hi * scale)
    }

    pub(crate) fn check_state(&self, s: usize) -> Result<()> {
        if s >= self.n_states {
            return Err(MdpError::IndexOutOfRange {
                what: "state",
                index: s,
                size: self.n_states,
            });
        }
        Ok(())
    }

    pub(crate) fn check_action(&self, a: usize) -> Result<()> {
        if a >= self.n_actions {
            return Err(MdpError::IndexOutOfRange {
                what: "action",
                index: a,
                size: self.n_actions,
            });
        }
        Ok(())
    }

    pub(crate) fn check_values(&self, v: &[T]) -> Result<()> {
        if v.len() != self.n_states {
            return Err(MdpError::DimensionMismatch {
                what: "value vector length",
                expected: self.n_states,
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// Anything that assigns each state a distribution over actions.
pub trait Policy<T: Scalar> {
    fn n_states(&self) -> usize;

    /// Smallest action count the policy is compatible with.
    fn min_actions(&self) -> usize;

    /// Visits `(action, probability)` for every action with nonzero mass at `s`.
    fn for_each_action(&self, s: usize, f: impl FnMut(usize, T));

    fn validate_for(&self, mdp: &Mdp<T>) -> Result<()> {
        if self.n_states() != mdp.n_states() {
            return Err(MdpError::DimensionMismatch {
                what: "policy states",
                expected: mdp.n_states(),
                got: self.n_states(),
            });
        }
        if self.min_actions() > mdp.n_actions() {
            return Err(MdpError::DimensionMismatch {
                what: "policy actions",
                expected: mdp.n_actions(),
                got: self.min_actions(),
            });
        }
        Ok(())
    }
}

/// State → action map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeterministicPolicy {
    actions: Vec<usize>,
}

impl DeterministicPolicy {
    pub fn new(actions: Vec<usize>, n_actions: usize) -> Result<Self> {
        if let Some((s, &a)) = actions.iter().enumerate().find(|(_, &a)| a >= n_actions) {
            return Err(MdpError::InvalidInput(format!(
                "policy action {a} at state {s} is outside [0, {n_actions})"
            )));
        }
        Ok(Self { actions })
    }

    /// The same action at every state.
    pub fn constant(n_states: usize, action: usize) -> Self {
        Self {
            actions: vec![action; n_states],
        }
    }

    pub fn action(&self, s: usize) -> usize {
        self.actions[s]
    }

    pub fn set_action(&mut self, s: usize, a: usize) {
        self.actions[s] = a;
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Number of states where `self` and `other` choose different actions.
    pub fn hamming(&self, other: &DeterministicPolicy) -> usize {
        self.actions
            .iter()
            .zip(&other.actions)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Enumerates all `n_actions^n_states` deterministic policies in
    /// lexicographic order (state 0 varies slowest).
    pub fn enumerate(n_states: usize, n_actions: usize) -> impl Iterator<Item = DeterministicPolicy> {
        let total = (n_actions as u64).checked_pow(n_states as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut actions = vec![0; n_states];
            for s in (0..n_states).rev() {
                actions[s] = (idx % n_actions as u64) as usize;
                idx /= n_actions as u64;
            }
            DeterministicPolicy { actions }
        })
    }
}

impl<T: Scalar> Policy<T> for DeterministicPolicy {
    fn n_states(&self) -> usize {
        self.actions.len()
    }

    fn min_actions(&self) -> usize {
        self.actions.iter().max().map_or(0, |&a| a + 1)
    }

    fn for_each_action(&self, s: usize, mut f: impl FnMut(usize, T)) {
        f(self.actions[s], T::one());
    }
}

/// State → distribution over actions, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticPolicy<T> {
    n_actions: usize,
    probs: Vec<T>,
}

impl<T: Scalar> StochasticPolicy<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::with_tolerance(rows, T::default_tolerances().stochastic)
    }

    pub fn with_tolerance(rows: Vec<Vec<T>>, tol: T) -> Result<Self> {
        let n_actions = rows.first().map_or(0, Vec::len);
        let mut probs = Vec::with_capacity(rows.len() * n_actions);
        for (s, row) in rows.iter().enumerate() {
            if row.len() != n_actions {
                return Err(MdpError::DimensionMismatch {
                    what: "policy row actions",
                    expected: n_actions,
                    got: row.len(),
                });
            }
            if row.iter().any(|&p| !(p >= T::zero())) {
                return Err(MdpError::Negative(format!("policy row {s} has a negative or NaN entry")));
            }
            let sum: T = row.iter().copied().sum();
            if (sum - T::one()).abs() > tol {
                return Err(MdpError::Stochasticity(format!("policy row {s} sums to {sum}, not 1")));
            }
            probs.extend_from_slice(row);
        }
        Ok(Self { n_actions, probs })
    }

    pub fn uniform(n_states: usize, n_actions: usize) -> Self {
        let p = T::one() / T::from_usize(n_actions).unwrap();
        Self {
            n_actions,
            probs: vec![p; n_states * n_actions],
        }
    }

    /// One-hot embedding of a deterministic policy.
    pub fn from_deterministic(pi: &DeterministicPolicy, n_actions: usize) -> Self {
        let mut probs = vec![T::zero(); pi.len() * n_actions];
        for (s, &a) in pi.actions().iter().enumerate() {
            probs[s * n_actions + a] = T::one();
        }
        Self { n_actions, probs }
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn row(&self, s: usize) -> &[T] {
        &self.probs[s * self.n_actions..(s + 1) * self.n_actions]
    }

    /// Replaces the distribution at state `s` (not re-validated; callers
    /// pass simplex points).
    pub fn set_row(&mut self, s: usize, row: &[T]) {
        assert_eq!(row.len(), self.n_actions);
        self.probs[s * self.n_actions..(s + 1) * self.n_actions].copy_from_slice(row);
    }

    /// True when every row is one-hot.
    pub fn is_deterministic(&self) -> bool {
        self.probs
            .chunks(self.n_actions.max(1))
            .all(|row| row.iter().all(|&p| p == T::zero() || p == T::one()))
    }
}

impl<T: Scalar> Policy<T> for StochasticPolicy<T> {
    fn n_states(&self) -> usize {
        self.probs.len().checked_div(self.n_actions).unwrap_or(0)
    }

    fn min_actions(&self) -> usize {
        self.n_actions
    }

    fn for_each_action(&self, s: usize, mut f: impl FnMut(usize, T)) {
        for (a, &p) in self.row(s).iter().enumerate() {
            if p != T::zero() {
                f(a, p);
            }
        }
    }

    fn validate_for(&self, mdp: &Mdp<T>) -> Result<()> {
        if self.n_actions != mdp.n_actions() {
            return Err(MdpError::DimensionMismatch {
                what: "policy actions",
                expected: mdp.n_actions(),
                got: self.n_actions,
            });
        }
        if Policy::<T>::n_states(self) != mdp.n_states() {
            return Err(MdpError::DimensionMismatch {
                what: "policy states",
                expected: mdp.n_states(),
                got: Policy::<T>::n_states(self),
            });
        }
        Ok(())
    }
}

/// `P^π` and `r^π` for a fixed policy.
#[derive(Clone, Debug, PartialEq)]
pub struct PolicyMatrices<T> {
    pub p_pi: Matrix<T>,
    pub r_pi: Vec<T>,
}

/// `Q^π = (I - γP^π)⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventMatrix<T> {
    pub q: Matrix<T>,
}

impl<T: Scalar> ResolventMatrix<T> {
    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    /// The `s`-th column `q_s`.
    pub fn column(&self, s: usize) -> Vec<T> {
        self.q.column(s)
    }

    /// `max |Q(I - γP^π) - I|` entrywise.
    pub fn inverse_residual(&self, gamma: T, p_pi: &Matrix<T>) -> T {
        let n = self.dim();
        let mut a = Matrix::identity(n);
        for i in 0..n {
            for (x, &p) in a.row_mut(i).iter_mut().zip(p_pi.row(i)) {
                *x = *x - gamma * p;
            }
        }
        self.q.matmul(&a).max_abs_diff(&Matrix::identity(n))
    }

    /// Largest deviation of a row sum from `1/(1-γ)`.
    pub fn row_sum_error(&self, gamma: T) -> T {
        let target = T::one() / (T::one() - gamma);
        (0..self.dim())
            .map(|i| (self.q.row(i).iter().copied().sum::<T>() - target).abs())
            .fold(T::zero(), T::max)
    }

    pub fn min_entry(&self) -> T {
        self.q.as_slice().iter().copied().fold(T::infinity(), T::min)
    }
}

pub fn policy_matrices<T: Scalar>(mdp: &Mdp<T>, pi: &impl Policy<T>) -> Result<PolicyMatrices<T>> {
    pi.validate_for(mdp)?;
    let n = mdp.n_states();
    let mut p_pi = Matrix::zeros(n, n);
    let mut r_pi = vec![T::zero(); n];
    for s in 0..n {
        let mut r = T::zero();
        let row = p_pi.row_mut(s);
        pi.for_each_action(s, |a, w| {
            r = r + w * mdp.reward(s, a);
            for (x, &p) in row.iter_mut().zip(mdp.transition_row(s, a)) {
                *x = *x + w * p;
            }
        });
        r_pi[s] = r;
    }
    Ok(PolicyMatrices { p_pi, r_pi })
}

fn evaluation_lu<T: Scalar>(mdp: &Mdp<T>, pm: &PolicyMatrices<T>) -> Result<Lu<T>> {
    let n = mdp.n_states();
    let g = mdp.gamma();
    let mut a = Matrix::identity(n);
    for i in 0..n {
        for (x, &p) in a.row_mut(i).iter_mut().zip(pm.p_pi.row(i)) {
            *x = *x - g * p;
        }
    }
    Lu::factor(a)
}

/// Solves `(I - γP^π)V = r^π`, returning `V^π` and `Q^π`.
pub fn evaluate_policy_exact<T: Scalar>(
    mdp: &Mdp<T>,
    pi: &impl Policy<T>,
) -> Result<(Vec<T>, ResolventMatrix<T>)> {
    let pm = policy_matrices(mdp, pi)?;
    let lu = evaluation_lu(mdp, &pm)?;
    let v = lu.solve(&pm.r_pi);
    Ok((v, ResolventMatrix { q: lu.inverse() }))
}

/// `V^π` only; skips forming the resolvent.
pub fn evaluate_policy<T: Scalar>(mdp: &Mdp<T>, pi: &impl Policy<T>) -> Result<Vec<T>> {
    let pm = policy_matrices(mdp, pi)?;
    Ok(evaluation_lu(mdp, &pm)?.solve(&pm.r_pi))
}

/// `T^π V = r^π + γP^π V`.
pub fn bellman_operator<T: Scalar>(mdp: &Mdp<T>, pi: &impl Policy<T>, v: &[T]) -> Result<Vec<T>> {
    pi.validate_for(mdp)?;
    mdp.check_values(v)?;
    Ok((0..mdp.n_states())
        .map(|s| {
            let mut acc = T::zero();
            pi.for_each_action(s, |a, w| acc = acc + w * mdp.backup(s, a, v));
            acc
        })
        .collect())
}

/// Best backup at `s` and its action; ties go to the smallest index.
pub fn best_backup<T: Scalar>(mdp: &Mdp<T>, s: usize, v: &[T]) -> (T, usize) {
    let mut best = (mdp.backup(s, 0, v), 0);
    for a in 1..mdp.n_actions() {
        let q = mdp.backup(s, a, v);
        if q > best.0 {
            best = (q, a);
        }
    }
    best
}

/// `T* V` together with a greedy policy.
pub fn optimality_bellman<T: Scalar>(mdp: &Mdp<T>, v: &[T]) -> Result<(Vec<T>, DeterministicPolicy)> {
    mdp.check_values(v)?;
    let (values, actions) = (0..mdp.n_states()).map(|s| best_backup(mdp, s, v)).unzip();
    Ok((values, DeterministicPolicy { actions }))
}

/// `Ã(s, a) = R(s,a) + γ Σ P(s'|s,a) V(s') - V(s)`.
pub fn advantage<T: Scalar>(mdp: &Mdp<T>, v: &[T], s: usize, a: usize) -> Result<T> {
    mdp.check_values(v)?;
    mdp.check_state(s)?;
    mdp.check_action(a)?;
    Ok(mdp.backup(s, a, v) - v[s])
}

/// `‖T*V - V‖∞`.
pub fn optimality_residual<T: Scalar>(mdp: &Mdp<T>, v: &[T]) -> T {
    (0..mdp.n_states())
        .map(|s| (best_backup(mdp, s, v).0 - v[s]).abs())
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> Mdp<f64> {
        Mdp::new(
            0.9,
            vec![vec![1.0, 0.0], vec![0.5, 2.0]],
            vec![
                vec![vec![0.3, 0.7], vec![1.0, 0.0]],
                vec![vec![0.5, 0.5], vec![0.2, 0.8]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_invariant_violations() {
        let bad_gamma = Mdp::new(1.0, vec![vec![0.0]], vec![vec![vec![1.0]]]);
        assert!(matches!(bad_gamma, Err(MdpError::Discount(_))));
        let bad_row = Mdp::new(0.5, vec![vec![0.0]], vec![vec![vec![0.9]]]);
        assert!(matches!(bad_row, Err(MdpError::Stochasticity(_))));
        let negative = Mdp::new(
            0.5,
            vec![vec![0.0], vec![0.0]],
            vec![vec![vec![1.5, -0.5]], vec![vec![0.5, 0.5]]],
        );
        assert!(matches!(negative, Err(MdpError::Negative(_))));
        let nan_reward = Mdp::new(0.5, vec![vec![f64::NAN]], vec![vec![vec![1.0]]]);
        assert!(matches!(nan_reward, Err(MdpError::NonFinite(_))));
        let ragged = Mdp::new(0.5, vec![vec![0.0]], vec![vec![vec![0.5, 0.5]]]);
        assert!(matches!(ragged, Err(MdpError::DimensionMismatch { .. })));
        assert!(Mdp::<f64>::from_flat(0, 1, 0.5, vec![], vec![]).is_err());
    }

    #[test]
    fn deterministic_selection_and_uniform_averaging() {
        let mdp = two_state();
        let pi = DeterministicPolicy::new(vec![1, 0], 2).unwrap();
        let pm = policy_matrices(&mdp, &pi).unwrap();
        assert_eq!(pm.r_pi, vec![0.0, 0.5]);
        assert_eq!(pm.p_pi.row(0), &[1.0, 0.0]);
        assert_eq!(pm.p_pi.row(1), &[0.5, 0.5]);

        let uni = StochasticPolicy::uniform(2, 2);
        let pm = policy_matrices(&mdp, &uni).unwrap();
        assert_eq!(pm.r_pi, vec![0.5, 1.25]);
    }

    #[test]
    fn policy_dimension_mismatch() {
        let mdp = two_state();
        let pi = DeterministicPolicy::constant(3, 0);
        assert!(policy_matrices(&mdp, &pi).is_err());
        let wide = StochasticPolicy::<f64>::uniform(2, 3);
        assert!(policy_matrices(&mdp, &wide).is_err());
        assert!(DeterministicPolicy::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn single_state_geometric_series() {
        let mdp = Mdp::new(0.9f64, vec![vec![1.0]], vec![vec![vec![1.0]]]).unwrap();
        let (v, q) = evaluate_policy_exact(&mdp, &DeterministicPolicy::constant(1, 0)).unwrap();
        assert!((v[0] - 10.0).abs() < 1e-12);
        assert!((q.q[(0, 0)] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn zero_discount_values_are_rewards() {
        let mut mdp = two_state();
        mdp.gamma = 0.0;
        let pi = DeterministicPolicy::new(vec![0, 1], 2).unwrap();
        let (v, _) = evaluate_policy_exact(&mdp, &pi).unwrap();
        assert_eq!(v, vec![1.0, 2.0]);
        let t = bellman_operator(&mdp, &pi, &[100.0, -3.0]).unwrap();
        assert_eq!(t, vec![1.0, 2.0]);
        assert_eq!(advantage(&mdp, &[0.25, 0.0], 1, 0).unwrap(), 0.5);
    }

    #[test]
    fn advantage_index_errors() {
        let mdp = two_state();
        assert!(advantage(&mdp, &[0.0, 0.0], 2, 0).is_err());
        assert!(advantage(&mdp, &[0.0, 0.0], 0, 2).is_err());
        assert!(advantage(&mdp, &[0.0], 0, 0).is_err());
    }

    #[test]
    fn resolvent_invariants() {
        let mdp = two_state();
        let pi = DeterministicPolicy::new(vec![0, 1], 2).unwrap();
        let (v, q) = evaluate_policy_exact(&mdp, &pi).unwrap();
        let pm = policy_matrices(&mdp, &pi).unwrap();
        assert!(q.inverse_residual(0.9, &pm.p_pi) < 1e-12);
        assert!(q.row_sum_error(0.9) < 1e-12);
        assert!(q.min_entry() >= 0.0);
        let qr = q.q.mul_vec(&pm.r_pi);
        for (a, b) in qr.iter().zip(&v) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn tie_breaks_to_smallest_action() {
        let mdp = Mdp::new(0.5, vec![vec![1.0, 1.0, 0.0]], vec![vec![vec![1.0]; 3]]).unwrap();
        let (_, pi) = optimality_bellman(&mdp, &[0.0]).unwrap();
        assert_eq!(pi.actions(), &[0]);
    }

    #[test]
    fn enumeration_is_complete() {
        let all: Vec<_> = DeterministicPolicy::enumerate(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].actions(), &[0, 0]);
        assert_eq!(all[5].actions(), &[1, 2]);
    }
}
