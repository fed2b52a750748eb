//! The primal linear program whose feasible set is `{V : V ⪰ T*V}`.

use std::fmt::Write as _;

use crate::error::{MdpError, Result};
use crate::geometry::arrangement::{build_arrangement, Hyperplane};
use crate::mdp::Mdp;
use crate::scalar::{dot, Scalar};

/// Initial-state weights of the LP objective.
#[derive(Clone, Debug, PartialEq)]
pub enum Alpha<T> {
    Uniform,
    Weights(Vec<T>),
}

/// `min αᵀV  s.t.  normalᵀV ≥ offset` for every `(s, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSystem<T> {
    pub objective_weights: Vec<T>,
    pub constraints: Vec<Hyperplane<T>>,
}

pub fn export_lp<T: Scalar>(mdp: &Mdp<T>, alpha: Alpha<T>) -> Result<LpSystem<T>> {
    let n = mdp.n_states();
    let objective_weights = match alpha {
        Alpha::Uniform => vec![T::one() / T::from_usize(n).unwrap(); n],
        Alpha::Weights(w) => {
            if w.len() != n {
                return Err(MdpError::DimensionMismatch {
                    what: "alpha length",
                    expected: n,
                    got: w.len(),
                });
            }
            if w.iter().any(|&x| !(x >= T::zero())) {
                return Err(MdpError::Negative("alpha has a negative or NaN weight".into()));
            }
            let sum: T = w.iter().copied().sum();
            if (sum - T::one()).abs() > T::default_tolerances().stochastic.max(T::epsilon() * T::of(16.0)) {
                return Err(MdpError::Stochasticity(format!("alpha sums to {sum}, not 1")));
            }
            w
        }
    };
    Ok(LpSystem {
        objective_weights,
        constraints: build_arrangement(mdp).hyperplanes,
    })
}

fn write_linear<T: Scalar>(out: &mut String, coefs: &[T]) {
    for (j, &c) in coefs.iter().enumerate() {
        let sign = if c < T::zero() { '-' } else { '+' };
        if j == 0 {
            if sign == '-' {
                write!(out, " -{} v{j}", c.abs()).unwrap();
            } else {
                write!(out, " {c} v{j}").unwrap();
            }
        } else {
            write!(out, " {sign} {} v{j}", c.abs()).unwrap();
        }
    }
}

impl<T: Scalar> LpSystem<T> {
    pub fn objective(&self, v: &[T]) -> T {
        dot(&self.objective_weights, v)
    }

    /// `normalᵀV - offset` for every constraint, in `(s, a)` order.
    pub fn slacks(&self, v: &[T]) -> Vec<T> {
        self.constraints.iter().map(|h| h.residual(v)).collect()
    }

    pub fn is_feasible(&self, v: &[T], tol: T) -> bool {
        self.constraints.iter().all(|h| h.residual(v) >= -tol)
    }

    /// CPLEX LP text. Constraints are named `c_<s>_<a>` and emitted in
    /// `(s, a)` order; variables `v0..` are free.
    pub fn to_cplex_lp(&self) -> String {
        let n = self.objective_weights.len();
        let mut out = String::from("\\ value-function LP: min alpha'V s.t. V(s) >= R(s,a) + gamma P(.|s,a)'V\n");
        out.push_str("Minimize\n obj:");
        write_linear(&mut out, &self.objective_weights);
        out.push_str("\nSubject To\n");
        for h in &self.constraints {
            write!(out, " c_{}_{}:", h.state, h.action).unwrap();
            write_linear(&mut out, &h.normal);
            writeln!(out, " >= {}", h.offset).unwrap();
        }
        out.push_str("Bounds\n");
        for j in 0..n {
            writeln!(out, " v{j} free").unwrap();
        }
        out.push_str("End\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_text_layout() {
        let mdp = Mdp::new(
            0.5,
            vec![vec![1.0], vec![-2.0]],
            vec![vec![vec![0.0, 1.0]], vec![vec![0.5, 0.5]]],
        )
        .unwrap();
        let lp = export_lp(&mdp, Alpha::Uniform).unwrap();
        let text = lp.to_cplex_lp();
        let expected = "\\ value-function LP: min alpha'V s.t. V(s) >= R(s,a) + gamma P(.|s,a)'V\n\
Minimize\n obj: 0.5 v0 + 0.5 v1\n\
Subject To\n c_0_0: 1 v0 - 0.5 v1 >= 1\n c_1_0: -0.25 v0 + 0.75 v1 >= -2\n\
Bounds\n v0 free\n v1 free\nEnd\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn alpha_is_validated() {
        let mdp = Mdp::new(0.5, vec![vec![1.0], vec![0.0]], vec![vec![vec![1.0, 0.0]], vec![vec![0.0, 1.0]]]).unwrap();
        assert!(export_lp(&mdp, Alpha::Weights(vec![0.5, 0.6])).is_err());
        assert!(export_lp(&mdp, Alpha::Weights(vec![1.5, -0.5])).is_err());
        assert!(export_lp(&mdp, Alpha::Weights(vec![1.0])).is_err());
        let lp = export_lp(&mdp, Alpha::Weights(vec![0.25, 0.75])).unwrap();
        assert_eq!(lp.objective(&[4.0, 0.0]), 1.0);
        assert_eq!(lp.constraints.len(), 2);
    }
}
