//! Statistical check that the boundary of a sampled value polytope lies on
//! the arrangement's hyperplanes.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{MdpError, Result};
use crate::geometry::arrangement::Arrangement;
use crate::geometry::polytope::PolytopeSample;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct BoundaryOptions {
    /// Occupancy grid cells per axis.
    pub resolution: usize,
    /// Pass threshold on the worst boundary distance. `None` uses one cell
    /// diagonal, which at the default resolution and 50,000 samples is on
    /// the order of 1e-2 for unit-scale rewards.
    pub tolerance: Option<f64>,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self {
            resolution: 200,
            tolerance: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryPoint {
    pub point: Vec<f64>,
    /// Distance to the nearest hyperplane.
    pub distance: f64,
    pub state: usize,
    pub action: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub boundary_points: Vec<BoundaryPoint>,
    pub max_distance: f64,
    pub tolerance: f64,
    pub cell_diagonal: f64,
    pub passed: bool,
}

pub fn verify_boundary_membership<T: Scalar>(
    sample: &PolytopeSample<T>,
    arrangement: &Arrangement<T>,
) -> Result<BoundaryReport> {
    verify_boundary_membership_with(sample, arrangement, &BoundaryOptions::default())
}

/// Supports 1-state models (the polytope is an interval) and 2-state models
/// (occupancy-grid boundary of the scatter).
pub fn verify_boundary_membership_with<T: Scalar>(
    sample: &PolytopeSample<T>,
    arrangement: &Arrangement<T>,
    opts: &BoundaryOptions,
) -> Result<BoundaryReport> {
    if sample.is_empty() {
        return Err(MdpError::InvalidInput("empty polytope sample".into()));
    }
    let dim = arrangement.n_states;
    if let Some(p) = sample.points.iter().find(|p| p.len() != dim) {
        return Err(MdpError::DimensionMismatch {
            what: "sample point length",
            expected: dim,
            got: p.len(),
        });
    }
    let (candidates, cell_diagonal) = match dim {
        1 => {
            let lo = sample.points.iter().min_by(|a, b| a[0].partial_cmp(&b[0]).unwrap()).unwrap();
            let hi = sample.points.iter().max_by(|a, b| a[0].partial_cmp(&b[0]).unwrap()).unwrap();
            (vec![lo.clone(), hi.clone()], 0.0)
        }
        2 => grid_boundary(sample, opts.resolution.max(2)),
        n => {
            return Err(MdpError::UnsupportedDimension(format!(
                "boundary check supports 1 or 2 states, got {n}"
            )))
        }
    };
    let boundary_points: Vec<BoundaryPoint> = candidates
        .into_iter()
        .map(|p| {
            let (d, state, action) = arrangement.nearest(&p);
            BoundaryPoint {
                point: p.iter().map(|x| x.as_f64()).collect(),
                distance: d.as_f64(),
                state,
                action,
            }
        })
        .collect();
    let max_distance = boundary_points.iter().map(|b| b.distance).fold(0.0, f64::max);
    let tolerance = opts
        .tolerance
        .unwrap_or(if dim == 1 { 1e-9 } else { cell_diagonal });
    Ok(BoundaryReport {
        boundary_points,
        max_distance,
        tolerance,
        cell_diagonal,
        passed: max_distance <= tolerance,
    })
}

/// For each occupied cell touching the exterior, the sample point closest to
/// that exterior. Interior holes of the scatter are filled first by flooding
/// the empty cells reachable from outside the grid.
fn grid_boundary<T: Scalar>(sample: &PolytopeSample<T>, res: usize) -> (Vec<Vec<T>>, f64) {
    let xs: Vec<[f64; 2]> = sample
        .points
        .iter()
        .map(|p| [p[0].as_f64(), p[1].as_f64()])
        .collect();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &xs {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let width = [(hi[0] - lo[0]).max(1e-12), (hi[1] - lo[1]).max(1e-12)];
    let cell = [width[0] / res as f64, width[1] / res as f64];
    let cell_diagonal = cell[0].hypot(cell[1]);

    // padded grid: indices 1..=res hold data, the ring is exterior
    let g = res + 2;
    let idx = |i: usize, j: usize| i * g + j;
    let locate = |p: [f64; 2]| -> (usize, usize) {
        let f = |k: usize| (((p[k] - lo[k]) / cell[k]) as usize).min(res - 1) + 1;
        (f(0), f(1))
    };
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); g * g];
    for (n, &p) in xs.iter().enumerate() {
        let (i, j) = locate(p);
        members[idx(i, j)].push(n);
    }
    let mut exterior = vec![false; g * g];
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    exterior[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        let nbrs = [
            (i.wrapping_sub(1), j),
            (i + 1, j),
            (i, j.wrapping_sub(1)),
            (i, j + 1),
        ];
        for (a, b) in nbrs {
            if a < g && b < g && !exterior[idx(a, b)] && members[idx(a, b)].is_empty() {
                exterior[idx(a, b)] = true;
                queue.push_back((a, b));
            }
        }
    }

    let mut out = Vec::new();
    for i in 1..=res {
        for j in 1..=res {
            let m = &members[idx(i, j)];
            if m.is_empty() {
                continue;
            }
            let outside: Vec<[f64; 2]> = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
                .into_iter()
                .filter(|&(a, b)| exterior[idx(a, b)])
                .map(|(a, b)| {
                    [
                        lo[0] + (a as f64 - 0.5) * cell[0],
                        lo[1] + (b as f64 - 0.5) * cell[1],
                    ]
                })
                .collect();
            if outside.is_empty() {
                continue;
            }
            let best = m
                .iter()
                .copied()
                .min_by(|&u, &v| {
                    let d = |n: usize| {
                        outside
                            .iter()
                            .map(|c| (xs[n][0] - c[0]).hypot(xs[n][1] - c[1]))
                            .fold(f64::INFINITY, f64::min)
                    };
                    d(u).partial_cmp(&d(v)).unwrap()
                })
                .unwrap();
            out.push(sample.points[best].clone());
        }
    }
    (out, cell_diagonal)
}
