use std::fmt::Write as _;

use crate::error::Result;
use crate::linalg::{Lu, Matrix};
use crate::mdp::{DeterministicPolicy, Mdp, Policy};
use crate::scalar::{dot, Scalar};

/// `{V : normalᵀV = offset}`, the Bellman equation of one state-action pair:
/// `V(s) = R(s,a) + γ Σ P(s'|s,a) V(s')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<T> {
    pub state: usize,
    pub action: usize,
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Hyperplane<T> {
    /// `normalᵀV - offset`; nonnegative exactly when the LP constraint holds.
    pub fn residual(&self, v: &[T]) -> T {
        dot(&self.normal, v) - self.offset
    }

    /// Euclidean distance from `v` to the hyperplane.
    pub fn distance(&self, v: &[T]) -> T {
        self.residual(v).abs() / dot(&self.normal, &self.normal).sqrt()
    }
}

/// The `|S||A|` hyperplanes, ordered by `(s, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement<T> {
    pub n_states: usize,
    pub n_actions: usize,
    pub hyperplanes: Vec<Hyperplane<T>>,
}

pub fn build_arrangement<T: Scalar>(mdp: &Mdp<T>) -> Arrangement<T> {
    let g = mdp.gamma();
    let mut hyperplanes = Vec::with_capacity(mdp.n_states() * mdp.n_actions());
    for s in 0..mdp.n_states() {
        for a in 0..mdp.n_actions() {
            let mut normal: Vec<T> = mdp.transition_row(s, a).iter().map(|&p| -g * p).collect();
            normal[s] = normal[s] + T::one();
            hyperplanes.push(Hyperplane {
                state: s,
                action: a,
                normal,
                offset: mdp.reward(s, a),
            });
        }
    }
    Arrangement {
        n_states: mdp.n_states(),
        n_actions: mdp.n_actions(),
        hyperplanes,
    }
}

impl<T: Scalar> Arrangement<T> {
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn get(&self, s: usize, a: usize) -> &Hyperplane<T> {
        &self.hyperplanes[s * self.n_actions + a]
    }

    /// Intersection of the hyperplanes `(s, policy(s))` for every state.
    pub fn vertex(&self, policy: &DeterministicPolicy) -> Result<Vec<T>> {
        if Policy::<T>::n_states(policy) != self.n_states {
            return Err(crate::error::MdpError::DimensionMismatch {
                what: "policy states",
                expected: self.n_states,
                got: Policy::<T>::n_states(policy),
            });
        }
        let n = self.n_states;
        let mut a = Matrix::zeros(n, n);
        let mut b = vec![T::zero(); n];
        for s in 0..n {
            let h = self.get(s, policy.action(s));
            a.row_mut(s).copy_from_slice(&h.normal);
            b[s] = h.offset;
        }
        Ok(Lu::factor(a)?.solve(&b))
    }

    /// Smallest distance from `v` to any hyperplane, with its `(s, a)`.
    pub fn nearest(&self, v: &[T]) -> (T, usize, usize) {
        self.hyperplanes
            .iter()
            .map(|h| (h.distance(v), h.state, h.action))
            .fold((T::infinity(), 0, 0), |best, cur| if cur.0 < best.0 { cur } else { best })
    }

    /// CSV with header `state,action,offset,n_0,...,n_{|S|-1}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state,action,offset");
        for j in 0..self.n_states {
            write!(out, ",n_{j}").unwrap();
        }
        out.push('\n');
        for h in &self.hyperplanes {
            write!(out, "{},{},{}", h.state, h.action, h.offset).unwrap();
            for x in &h.normal {
                write!(out, ",{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normals_encode_bellman_rows() {
        let mdp = Mdp::new(
            0.5,
            vec![vec![1.0, 2.0, 3.0], vec![0.0, -1.0, 4.0]],
            vec![vec![vec![0.5, 0.5]; 3], vec![vec![1.0, 0.0]; 3]],
        )
        .unwrap();
        let arr = build_arrangement(&mdp);
        assert_eq!(arr.len(), 6);
        let h = arr.get(1, 2);
        assert_eq!((h.state, h.action, h.offset), (1, 2, 4.0));
        assert_eq!(h.normal, vec![-0.5, 1.0]);
        assert_eq!(arr.get(0, 0).normal, vec![0.75, -0.25]);
        let csv = arr.to_csv();
        assert!(csv.starts_with("state,action,offset,n_0,n_1\n0,0,1,0.75,-0.25\n"));
        assert_eq!(csv.lines().count(), 7);
    }
}
