//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type the solvers are generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerances suited to the precision of the type.
    fn default_tolerances() -> Tolerances<Self>;

    /// Lossy conversion from an `f64` literal or computed value.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }
}

/// Centralized numeric tolerances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Residual / equality checks (Bellman residuals, inverse residuals).
    pub residual: T,
    /// Accepted deviation of a probability row sum from 1.
    pub stochastic: T,
    /// A policy switch must beat the incumbent by more than this.
    pub improvement: T,
    /// Smallest admissible |1 - wᵀq| in the rank-1 kernels.
    pub degeneracy: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        T::default_tolerances()
    }
}

impl Scalar for f64 {
    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            residual: 1e-9,
            stochastic: 1e-12,
            improvement: 1e-9,
            degeneracy: 1e-12,
        }
    }
}

impl Scalar for f32 {
    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            residual: 1e-4,
            stochastic: 1e-5,
            improvement: 1e-5,
            degeneracy: 1e-6,
        }
    }
}

/// Sup-norm of `a - b`.
pub fn sup_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).abs()))
}

pub fn mean<T: Scalar>(v: &[T]) -> T {
    if v.is_empty() {
        return T::zero();
    }
    v.iter().copied().sum::<T>() / T::from_usize(v.len()).unwrap()
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_distance_and_mean() {
        assert_eq!(sup_distance(&[1.0, 2.0], &[1.5, -1.0]), 3.0);
        assert_eq!(mean::<f64>(&[]), 0.0);
        assert_eq!(mean(&[1.0f32, 2.0, 3.0]), 2.0);
        assert_eq!(dot(&[1.0, 2.0], &[3.0, 4.0]), 11.0);
    }
}
