//! Exact scalars: rationals, the field Q(i, √2), and Laurent polynomials in `s`.

mod field;
mod laurent;
mod qnum;
mod rational;

pub use field::{ParseFieldError, QISqrt2};
pub use laurent::{ExactScalar, ParseScalarError};
pub use qnum::{gauss_binom, q_factorial, q_number};
pub use rational::{ParseRationalError, Rational};
