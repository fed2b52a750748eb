use serde::Serialize;

use crate::error::{MdpError, Result};
use crate::mdp::{evaluate_policy, Mdp, Policy, StochasticPolicy};
use crate::random::{flat_simplex, stream_rng};
use crate::scalar::Scalar;

/// Outcome of probing one state's line segment in value space.
#[derive(Clone, Debug, Serialize)]
pub struct LineCheckReport {
    pub state: usize,
    /// Action of the `s`-deterministic policy with the smallest `V(s)`.
    pub lower_action: usize,
    /// Action of the `s`-deterministic policy with the largest `V(s)`.
    pub upper_action: usize,
    pub lower_value: Vec<f64>,
    pub upper_value: Vec<f64>,
    /// Distance of each mixture's image from the line through the endpoints.
    pub distances: Vec<f64>,
    pub max_distance: f64,
    /// Mixtures whose image is not bracketed elementwise by the endpoints.
    pub bracketing_violations: usize,
    /// Largest amount by which any coordinate leaves the bracket.
    pub max_bracket_excess: f64,
    pub passed: bool,
}

pub const LINE_DISTANCE_TOL: f64 = 1e-8;
pub const BRACKET_SLACK: f64 = 1e-9;

/// Value of `pi` with its row at `s` replaced by `weights`.
pub fn mixture_value<T: Scalar>(mdp: &Mdp<T>, pi: &StochasticPolicy<T>, s: usize, weights: &[T]) -> Result<Vec<T>> {
    mdp.check_state(s)?;
    let mut p = pi.clone();
    p.set_row(s, weights);
    evaluate_policy(mdp, &p)
}

fn distance_to_line(x: &[f64], l: &[f64], u: &[f64]) -> f64 {
    let d: Vec<f64> = u.iter().zip(l).map(|(a, b)| a - b).collect();
    let r: Vec<f64> = x.iter().zip(l).map(|(a, b)| a - b).collect();
    let dd: f64 = d.iter().map(|v| v * v).sum();
    if dd <= f64::EPSILON * f64::EPSILON {
        return r.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    let t = r.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>() / dd;
    r.iter()
        .zip(&d)
        .map(|(a, b)| (a - t * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Evaluates `k` random mixtures at state `s` of policies otherwise equal to
/// `pi`, and checks they lie on the segment spanned by the two extreme
/// `s`-deterministic policies and are bracketed by them.
pub fn line_theorem_check<T: Scalar>(
    mdp: &Mdp<T>,
    pi: &StochasticPolicy<T>,
    s: usize,
    k: usize,
    seed: u64,
) -> Result<LineCheckReport> {
    if k < 3 {
        return Err(MdpError::InvalidInput(format!("line check needs k >= 3, got {k}")));
    }
    pi.validate_for(mdp)?;
    mdp.check_state(s)?;
    let na = mdp.n_actions();
    let to64 = |v: Vec<T>| v.into_iter().map(T::as_f64).collect::<Vec<_>>();

    let mut ends = Vec::with_capacity(na);
    for a in 0..na {
        let mut w = vec![T::zero(); na];
        w[a] = T::one();
        ends.push(to64(mixture_value(mdp, pi, s, &w)?));
    }
    let mut lower = 0;
    let mut upper = 0;
    for a in 1..na {
        if ends[a][s] < ends[lower][s] {
            lower = a;
        }
        if ends[a][s] > ends[upper][s] {
            upper = a;
        }
    }
    let (lo, hi) = (&ends[lower], &ends[upper]);

    let mut distances = Vec::with_capacity(k);
    let mut violations = 0;
    let mut max_excess = 0.0f64;
    for i in 0..k {
        let mut rng = stream_rng(seed, i as u64);
        let w: Vec<T> = flat_simplex(&mut rng, na).into_iter().map(T::of).collect();
        let x = to64(mixture_value(mdp, pi, s, &w)?);
        distances.push(distance_to_line(&x, lo, hi));
        let excess = x
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(&xv, (&l, &h))| (l - xv).max(xv - h))
            .fold(f64::NEG_INFINITY, f64::max);
        if excess > BRACKET_SLACK {
            violations += 1;
        }
        max_excess = max_excess.max(excess);
    }
    let max_distance = distances.iter().copied().fold(0.0, f64::max);
    Ok(LineCheckReport {
        state: s,
        lower_action: lower,
        upper_action: upper,
        lower_value: lo.clone(),
        upper_value: hi.clone(),
        distances,
        max_distance,
        bracketing_violations: violations,
        max_bracket_excess: max_excess,
        passed: max_distance < LINE_DISTANCE_TOL && violations == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_line_distance() {
        assert!((distance_to_line(&[0.0, 1.0], &[0.0, 0.0], &[2.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((distance_to_line(&[3.0, 4.0], &[0.0, 0.0], &[0.0, 0.0]) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn small_k_rejected() {
        let mdp = Mdp::new(0.5, vec![vec![0.0, 1.0]], vec![vec![vec![1.0]; 2]]).unwrap();
        let pi = StochasticPolicy::uniform(1, 2);
        assert!(line_theorem_check(&mdp, &pi, 0, 2, 0).is_err());
        assert!(line_theorem_check(&mdp, &pi, 1, 3, 0).is_err());
    }
}
