//! Exact solvers for finite discounted Markov decision processes, built
//! around geometric policy iteration: state-wise policy improvement driven by
//! closed-form rank-1 updates of the policy resolvent `(I - γP^π)⁻¹`.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` / `*32` aliases at the crate root pin the precision.

pub mod bench;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod mdp;
pub mod random;
pub mod scalar;
pub mod solvers;

pub use error::{MdpError, Result};
pub use mdp::{
    advantage, bellman_operator, best_backup, evaluate_policy, evaluate_policy_exact, optimality_bellman,
    optimality_residual, policy_matrices, DeterministicPolicy, Mdp, Policy, PolicyMatrices, ResolventMatrix,
    StochasticPolicy,
};
pub use scalar::{Scalar, Tolerances};
pub use solvers::{
    async_gpi, async_vi, geometric_policy_iteration, gpi_apply_switch, gpi_candidate_value, iteration_bound,
    policy_iteration, run_solver, simple_policy_iteration, value_iteration, RankOneUpdate, RunConfig, SolveReport,
    SolverKind, SolverOptions, TracePoint,
};

pub type Mdp64 = Mdp<f64>;
pub type Mdp32 = Mdp<f32>;
pub type StochasticPolicy64 = StochasticPolicy<f64>;
pub type StochasticPolicy32 = StochasticPolicy<f32>;
pub type ResolventMatrix64 = ResolventMatrix<f64>;
pub type ResolventMatrix32 = ResolventMatrix<f32>;
pub type SolveReport64 = SolveReport<f64>;
pub type SolveReport32 = SolveReport<f32>;
pub type Arrangement64 = geometry::Arrangement<f64>;
pub type PolytopeSample64 = geometry::PolytopeSample<f64>;
