use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{MdpError, Result};
use crate::mdp::{evaluate_policy, DeterministicPolicy, Mdp, StochasticPolicy};
use crate::random::{flat_simplex, stream_rng};
use crate::scalar::Scalar;

/// Default limit on `|A|^|S|` when enumerating deterministic policies.
pub const DEFAULT_DETERMINISTIC_CAP: usize = 4096;

/// Images of policies under the value map `π ↦ (I - γP^π)⁻¹ r^π`.
#[derive(Clone, Debug)]
pub struct PolytopeSample<T> {
    pub points: Vec<Vec<T>>,
    pub policies: Vec<StochasticPolicy<T>>,
    pub deterministic_flags: Vec<bool>,
}

impl<T: Scalar> PolytopeSample<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn deterministic_points(&self) -> impl Iterator<Item = &Vec<T>> {
        self.points
            .iter()
            .zip(&self.deterministic_flags)
            .filter_map(|(p, &d)| d.then_some(p))
    }

    /// CSV with header `v_0,...,v_{|S|-1},is_deterministic`.
    pub fn to_csv(&self) -> String {
        let n = self.points.first().map_or(0, Vec::len);
        let mut out = String::new();
        for j in 0..n {
            write!(out, "v_{j},").unwrap();
        }
        out.push_str("is_deterministic\n");
        for (p, &d) in self.points.iter().zip(&self.deterministic_flags) {
            for x in p {
                write!(out, "{x},").unwrap();
            }
            out.push_str(if d { "true\n" } else { "false\n" });
        }
        out
    }
}

fn random_policy<T: Scalar>(n_states: usize, n_actions: usize, seed: u64, index: u64) -> StochasticPolicy<T> {
    let mut rng = stream_rng(seed, index);
    let mut pi = StochasticPolicy::uniform(n_states, n_actions);
    for s in 0..n_states {
        let row: Vec<T> = flat_simplex(&mut rng, n_actions).into_iter().map(T::of).collect();
        pi.set_row(s, &row);
    }
    pi
}

/// A reproducible random stochastic policy (flat simplex rows).
pub fn sample_stochastic_policy<T: Scalar>(n_states: usize, n_actions: usize, seed: u64) -> StochasticPolicy<T> {
    random_policy(n_states, n_actions, seed, 0)
}

pub fn sample_polytope<T: Scalar>(
    mdp: &Mdp<T>,
    n: usize,
    seed: u64,
    include_deterministic: bool,
) -> Result<PolytopeSample<T>> {
    sample_polytope_with_cap(mdp, n, seed, include_deterministic, DEFAULT_DETERMINISTIC_CAP)
}

/// Draws `n` random stochastic policies (policy `i` uses its own stream of
/// `seed`, so the output does not depend on scheduling) and optionally
/// appends every deterministic policy.
pub fn sample_polytope_with_cap<T: Scalar>(
    mdp: &Mdp<T>,
    n: usize,
    seed: u64,
    include_deterministic: bool,
    cap: usize,
) -> Result<PolytopeSample<T>> {
    if n == 0 {
        return Err(MdpError::InvalidInput("sample size must be at least 1".into()));
    }
    let (ns, na) = (mdp.n_states(), mdp.n_actions());
    let mut deterministic = Vec::new();
    if include_deterministic {
        let count = (na as f64).powi(ns as i32);
        if count > cap as f64 {
            return Err(MdpError::CapExceeded { count, cap });
        }
        deterministic = DeterministicPolicy::enumerate(ns, na)
            .map(|d| StochasticPolicy::from_deterministic(&d, na))
            .collect();
    }
    let random: Vec<StochasticPolicy<T>> = (0..n as u64)
        .into_par_iter()
        .map(|i| random_policy(ns, na, seed, i))
        .collect();
    let n_det = deterministic.len();
    let policies: Vec<_> = random.into_iter().chain(deterministic).collect();
    let points = policies
        .par_iter()
        .map(|pi| evaluate_policy(mdp, pi))
        .collect::<Result<Vec<_>>>()?;
    let mut deterministic_flags = vec![false; n];
    deterministic_flags.extend(std::iter::repeat_n(true, n_det));
    Ok(PolytopeSample {
        points,
        policies,
        deterministic_flags,
    })
}

/// Weights per segment that keep the family gap-free at the default grid
/// resolution on random instances.
pub const BOUNDARY_FAMILY_PER_SEGMENT: usize = 2000;

/// Appends, for models with at most two states, policies that are
/// deterministic at one state and an evenly spaced two-action mixture
/// (`per_segment` weights in `[0, 1]`) at the other. Their values lie on the
/// hyperplanes and trace the polytope's boundary, which flat random policies
/// reach only sparsely.
pub fn add_boundary_family<T: Scalar>(
    mdp: &Mdp<T>,
    sample: &mut PolytopeSample<T>,
    per_segment: usize,
) -> Result<()> {
    let (ns, na) = (mdp.n_states(), mdp.n_actions());
    if ns > 2 {
        return Err(MdpError::UnsupportedDimension(format!(
            "boundary family is defined for 1 or 2 states, got {ns}"
        )));
    }
    if per_segment < 2 {
        return Err(MdpError::InvalidInput("per_segment must be at least 2".into()));
    }
    let mut family = Vec::new();
    if ns == 1 {
        for a in 0..na {
            family.push(StochasticPolicy::from_deterministic(&DeterministicPolicy::constant(1, a), na));
        }
    } else {
        for s in 0..2 {
            let other = 1 - s;
            for a in 0..na {
                for b in 0..na {
                    for c in b + 1..na {
                        for k in 0..per_segment {
                            let t = T::of(k as f64 / (per_segment - 1) as f64);
                            let mut pi = StochasticPolicy::uniform(2, na);
                            let mut row = vec![T::zero(); na];
                            row[a] = T::one();
                            pi.set_row(s, &row);
                            row[a] = T::zero();
                            row[b] = t;
                            row[c] = T::one() - t;
                            pi.set_row(other, &row);
                            family.push(pi);
                        }
                    }
                }
            }
        }
    }
    let points = family
        .par_iter()
        .map(|pi| evaluate_policy(mdp, pi))
        .collect::<Result<Vec<_>>>()?;
    sample.deterministic_flags.extend(family.iter().map(|pi| pi.is_deterministic()));
    sample.points.extend(points);
    sample.policies.extend(family);
    Ok(())
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull of planar points, counter-clockwise (Andrew's monotone chain).
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Signed distance-like margin of `p` inside a CCW convex polygon: the
/// minimum over edges of the (normalized) cross product. Nonnegative inside.
pub fn hull_margin(hull: &[[f64; 2]], p: [f64; 2]) -> f64 {
    match hull.len() {
        0 => f64::NEG_INFINITY,
        1 => -((p[0] - hull[0][0]).hypot(p[1] - hull[0][1])),
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            let off_line = cross(a, b, p).abs() / len;
            let t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (len * len);
            let along = if t < 0.0 { -t * len } else if t > 1.0 { (t - 1.0) * len } else { 0.0 };
            -off_line.max(along)
        }
        n => (0..n)
            .map(|i| {
                let (a, b) = (hull[i], hull[(i + 1) % n]);
                cross(a, b, p) / (b[0] - a[0]).hypot(b[1] - a[1])
            })
            .fold(f64::INFINITY, f64::min),
    }
}

/// Largest distance by which a 2-state sample leaves the convex hull of its
/// deterministic points (≤ 0 means every point is contained).
pub fn hull_containment_excess<T: Scalar>(sample: &PolytopeSample<T>) -> Result<f64> {
    let as2 = |p: &Vec<T>| -> Result<[f64; 2]> {
        if p.len() != 2 {
            return Err(MdpError::UnsupportedDimension(format!(
                "hull containment needs 2 states, got {}",
                p.len()
            )));
        }
        Ok([p[0].as_f64(), p[1].as_f64()])
    };
    let det: Vec<[f64; 2]> = sample.deterministic_points().map(as2).collect::<Result<_>>()?;
    if det.is_empty() {
        return Err(MdpError::InvalidInput("sample has no deterministic points".into()));
    }
    let hull = convex_hull_2d(&det);
    let mut worst = f64::NEG_INFINITY;
    for p in &sample.points {
        worst = worst.max(-hull_margin(&hull, as2(p)?));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]];
        let hull = convex_hull_2d(&pts);
        assert_eq!(hull.len(), 4);
        assert!((hull_margin(&hull, [0.5, 0.5]) - 0.5).abs() < 1e-12);
        assert!((hull_margin(&hull, [2.0, 0.5]) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_hulls() {
        let seg = convex_hull_2d(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]]);
        assert_eq!(seg.len(), 2);
        assert!(hull_margin(&seg, [1.0, 0.0]).abs() < 1e-12);
        assert!((hull_margin(&seg, [3.0, 0.0]) + 1.0).abs() < 1e-12);
        let pt = convex_hull_2d(&[[1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(pt.len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let mdp = Mdp::new(0.5, vec![vec![0.0; 3]; 2], vec![vec![vec![0.5, 0.5]; 3]; 2]).unwrap();
        assert!(matches!(
            sample_polytope_with_cap(&mdp, 1, 0, true, 8),
            Err(MdpError::CapExceeded { .. })
        ));
        assert!(sample_polytope(&mdp, 0, 0, false).is_err());
        let s = sample_polytope_with_cap(&mdp, 2, 0, true, 9).unwrap();
        assert_eq!(s.len(), 11);
        assert_eq!(s.deterministic_points().count(), 9);
    }
}
