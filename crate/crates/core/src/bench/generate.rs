use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mdp::Mdp;
use crate::random::flat_simplex;
use crate::scalar::Scalar;

/// Random dense MDP, reproducible from `seed`.
///
/// Draw order is fixed: all rewards (uniform on `[0, 1)`) by `(s, a)`, then
/// every transition row (flat simplex) by `(s, a)`, from one ChaCha8 stream.
pub fn generate_random_mdp<T: Scalar>(n_states: usize, n_actions: usize, gamma: T, seed: u64) -> Result<Mdp<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rewards: Vec<T> = (0..n_states * n_actions).map(|_| T::of(rng.gen::<f64>())).collect();
    let mut transitions = Vec::with_capacity(n_states * n_actions * n_states);
    for _ in 0..n_states * n_actions {
        transitions.extend(flat_simplex(&mut rng, n_states).into_iter().map(T::of));
    }
    let tol = T::default_tolerances()
        .stochastic
        .max(T::epsilon() * T::of(4.0 * n_states as f64));
    Mdp::from_flat_with_tolerance(n_states, n_actions, gamma, rewards, transitions, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_stochastic() {
        let a = generate_random_mdp::<f64>(6, 3, 0.9, 11).unwrap();
        let b = generate_random_mdp::<f64>(6, 3, 0.9, 11).unwrap();
        let c = generate_random_mdp::<f64>(6, 3, 0.9, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.transitions_flat(), c.transitions_flat());
        for s in 0..6 {
            for act in 0..3 {
                let row = a.transition_row(s, act);
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(row.iter().all(|&p| p > 0.0));
                assert!((0.0..1.0).contains(&a.reward(s, act)));
            }
        }
    }

    #[test]
    fn invalid_discount_rejected() {
        assert!(generate_random_mdp::<f64>(2, 2, 1.0, 0).is_err());
    }

    #[test]
    fn single_precision_generation() {
        let m = generate_random_mdp::<f32>(200, 2, 0.9, 5).unwrap();
        assert_eq!(m.n_states(), 200);
    }
}
