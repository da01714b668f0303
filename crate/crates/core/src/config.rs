use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Arithmetic used for the matrix re-verification of symbolic checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Matrices over Q(i, √2) at rational `q`.
    Exact,
    /// Complex floating-point matrices at `q`, compared with a tolerance.
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub backend: Backend,
    pub q_samples: Vec<Rational>,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            backend: Backend::Exact,
            q_samples: vec![Rational::new(3, 2), Rational::new(5, 7)],
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        for q in &self.q_samples {
            if q.is_zero() || q.is_one() || *q == Rational::from_int(-1) {
                return Err(Error::InvalidArgument(format!("q sample {q} must avoid 0 and ±1")));
            }
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(())
    }
}
