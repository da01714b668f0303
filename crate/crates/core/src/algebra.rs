//! A minimal associative-algebra interface so that the same relation checks
//! run on symbolic elements, graded tensors and evaluated matrices.

use crate::report::Residual;
use crate::scalar::ExactScalar;

pub trait Algebra: Clone + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplication by a scalar; matrix backends evaluate it at their sample point.
    fn scale(&self, c: &ExactScalar) -> Self;
    fn one_like(&self) -> Self;
    fn residual(&self) -> Residual;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ExactScalar::int(-1)))
    }

    fn zero_like(&self) -> Self {
        self.scale(&ExactScalar::zero())
    }

    fn pow(&self, k: u32) -> Self {
        (0..k).fold(self.one_like(), |acc, _| acc.mul(self))
    }

    /// Residual of `lhs − rhs`.
    fn diff(&self, rhs: &Self) -> Residual {
        self.sub(rhs).residual()
    }
}

/// Product of a sequence, left to right.
pub fn product<A: Algebra>(factors: &[&A]) -> A {
    let mut it = factors.iter();
    let first = (*it.next().expect("non-empty product")).clone();
    it.fold(first, |acc, x| acc.mul(x))
}
