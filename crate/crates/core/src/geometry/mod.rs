//! Value-function polytope, its hyperplane arrangement and the MDP linear
//! program, with executable checks of their structural relations.

mod arrangement;
mod boundary;
mod line;
mod lp;
mod polytope;

pub use arrangement::{build_arrangement, Arrangement, Hyperplane};
pub use boundary::{
    verify_boundary_membership, verify_boundary_membership_with, BoundaryOptions, BoundaryPoint, BoundaryReport,
};
pub use line::{line_theorem_check, mixture_value, LineCheckReport, BRACKET_SLACK, LINE_DISTANCE_TOL};
pub use lp::{export_lp, Alpha, LpSystem};
pub use polytope::{
    convex_hull_2d, hull_containment_excess, hull_margin, sample_polytope, sample_polytope_with_cap, add_boundary_family,
    BOUNDARY_FAMILY_PER_SEGMENT,
    sample_stochastic_policy, PolytopeSample, DEFAULT_DETERMINISTIC_CAP,
};

use serde::Serialize;

use crate::error::Result;
use crate::mdp::{evaluate_policy, DeterministicPolicy, Mdp};
use crate::scalar::Scalar;

/// Agreement between arrangement vertices and deterministic policy values.
#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub policies_checked: usize,
    /// Worst `|normalᵀV^π - offset|` over the chosen-action hyperplanes.
    pub max_chosen_residual: f64,
    /// Worst sup-distance between the intersection point and `V^π`.
    pub max_vertex_error: f64,
    pub passed: bool,
}

pub const VERTEX_TOL: f64 = 1e-8;

/// For every deterministic policy (up to `cap` of them): intersects the
/// hyperplanes `(s, π(s))` and compares with the policy's value.
pub fn vertex_check<T: Scalar>(mdp: &Mdp<T>, cap: usize) -> Result<VertexReport> {
    let arr = build_arrangement(mdp);
    let mut checked = 0;
    let mut max_res = 0.0f64;
    let mut max_err = 0.0f64;
    for pi in DeterministicPolicy::enumerate(mdp.n_states(), mdp.n_actions()).take(cap) {
        let v = evaluate_policy(mdp, &pi)?;
        for s in 0..mdp.n_states() {
            max_res = max_res.max(arr.get(s, pi.action(s)).residual(&v).abs().as_f64());
        }
        let x = arr.vertex(&pi)?;
        max_err = max_err.max(crate::scalar::sup_distance(&x, &v).as_f64());
        checked += 1;
    }
    Ok(VertexReport {
        policies_checked: checked,
        max_chosen_residual: max_res,
        max_vertex_error: max_err,
        passed: max_res < 1e-9 && max_err < VERTEX_TOL,
    })
}
