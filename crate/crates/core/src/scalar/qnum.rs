//! Balanced q-integers and Gaussian binomials in the base `Q = q^k`.

use super::laurent::ExactScalar;

/// `[m]_{q^k} = (Q^m − Q^{−m}) / (Q − Q^{−1})`, expanded as a Laurent polynomial.
///
/// Negative `m` gives `−[−m]`.
pub fn q_number(m: i32, k: i32) -> ExactScalar {
    if m < 0 {
        return q_number(-m, k).neg();
    }
    ExactScalar::from_terms((0..m).map(|j| (2 * k * (m - 1 - 2 * j), super::field::QISqrt2::one())))
}

/// `[m]_{q^k}!`.
pub fn q_factorial(m: u32, k: i32) -> ExactScalar {
    (1..=m as i32).fold(ExactScalar::one(), |acc, j| acc.mul(&q_number(j, k)))
}

/// Balanced Gaussian binomial `{m n}_{q^k}`; zero outside `0 ≤ n ≤ m`.
///
/// Computed with the q-Pascal rule `{m n} = Q^n {m−1 n} + Q^{n−m} {m−1 n−1}`.
pub fn gauss_binom(m: i32, n: i32, k: i32) -> ExactScalar {
    if n < 0 || m < 0 || n > m {
        return ExactScalar::zero();
    }
    let mut row = vec![ExactScalar::one()];
    for r in 1..=m {
        let mut next = Vec::with_capacity(r as usize + 1);
        for c in 0..=r {
            let left = if c < r { row[c as usize].shift(2 * k * c) } else { ExactScalar::zero() };
            let right = if c >= 1 { row[c as usize - 1].shift(2 * k * (c - r)) } else { ExactScalar::zero() };
            next.push(left.add(&right));
        }
        row = next;
    }
    row[n as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_q_numbers() {
        assert_eq!(q_number(0, 1), ExactScalar::zero());
        assert_eq!(q_number(1, 3), ExactScalar::one());
        assert_eq!(q_number(2, 1).to_text(), "(1)*s^-2 + (1)*s^2");
        assert_eq!(q_number(-2, 1), q_number(2, 1).neg());
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(gauss_binom(5, 0, 2), ExactScalar::one());
        assert_eq!(gauss_binom(5, 5, 2), ExactScalar::one());
        assert!(gauss_binom(2, 3, 1).is_zero());
        assert_eq!(gauss_binom(2, 1, 1), q_number(2, 1));
    }
}
