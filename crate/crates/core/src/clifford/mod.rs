//! The fermion algebra `A(N)` and its q-Clifford presentation.
//!
//! Elements are kept in normal form (all `ψ†` to the left, ascending
//! indices in each block) with the canonical anticommutation relations
//! applied during multiplication. `ω_i^n = ψ_iψ_i† + q^{−n}ψ_i†ψ_i` realizes
//! the q-Clifford generators inside `A(N)`.

mod element;
mod monomial;

pub(crate) use element::check_modes;
pub use element::AlgebraElement;
pub use monomial::{Letter, Monomial, Terms, MAX_MODES};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::report::{params, run_parallel, Check, Report, Residual};
use crate::scalar::{ExactScalar, QISqrt2};

impl Algebra for AlgebraElement {
    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn scale(&self, c: &ExactScalar) -> Self {
        AlgebraElement::scale(self, c)
    }

    fn one_like(&self) -> Self {
        AlgebraElement::one(self.modes())
    }

    fn residual(&self) -> Residual {
        Residual {
            zero: self.is_zero(),
            terms: self.term_count(),
            text: self.to_text(),
            witness: self.terms().next().map(|(m, c)| format!("{{{c}}} {m}")),
        }
    }
}

/// `ω_i^n = ψ_iψ_i† + q^{−n}ψ_i†ψ_i` for any integer `n`.
pub fn omega_power(n_modes: usize, i: usize, n: i32) -> Result<AlgebraElement> {
    let psi = AlgebraElement::annihilator(n_modes, i)?;
    let dag = AlgebraElement::creator(n_modes, i)?;
    Ok(&(&psi * &dag) + &(&dag * &psi).scale(&ExactScalar::q_pow(-n)))
}

pub fn omega(n_modes: usize, i: usize) -> Result<AlgebraElement> {
    omega_power(n_modes, i, 1)
}

pub fn omega_inv(n_modes: usize, i: usize) -> Result<AlgebraElement> {
    omega_power(n_modes, i, -1)
}

/// Number operator `ψ_i†ψ_i`.
pub fn number(n_modes: usize, i: usize) -> Result<AlgebraElement> {
    Ok(&AlgebraElement::creator(n_modes, i)? * &AlgebraElement::annihilator(n_modes, i)?)
}

/// `ζ_i = ψ_iψ_i† − ψ_i†ψ_i = 1 − 2ψ_i†ψ_i`.
pub fn zeta(n_modes: usize, i: usize) -> Result<AlgebraElement> {
    let n = number(n_modes, i)?;
    Ok(&AlgebraElement::one(n_modes) - &n.scale(&ExactScalar::int(2)))
}

fn qp(k: i32) -> ExactScalar {
    ExactScalar::q_pow(k)
}

fn half() -> ExactScalar {
    ExactScalar::constant(QISqrt2::frac(1, 2))
}

/// Checks the q-Clifford relations, the power formula for `ω_i^n`, the
/// minimal polynomial and absorption identities of `ω_i`, `ω_i` through `ζ_i`,
/// `Y(ω_i^{±1})`, `*` on `ω_i^{±1}`, and involutivity of `Y` and `*` on the
/// monomial basis (N ≤ 3).
pub fn verify_q_clifford(n: usize) -> Result<Report> {
    check_modes(n)?;
    let psi: Vec<AlgebraElement> = (1..=n).map(|i| AlgebraElement::annihilator(n, i)).collect::<Result<_>>()?;
    let dag: Vec<AlgebraElement> = (1..=n).map(|i| AlgebraElement::creator(n, i)).collect::<Result<_>>()?;
    let om: Vec<AlgebraElement> = (1..=n).map(|i| omega(n, i)).collect::<Result<_>>()?;
    let omi: Vec<AlgebraElement> = (1..=n).map(|i| omega_inv(n, i)).collect::<Result<_>>()?;
    let one = AlgebraElement::one(n);

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut checks = run_parallel(&pairs, |&(i, j)| {
        let p = || params([("i", i + 1), ("j", j + 1)]);
        let same = i == j;
        let mut out = vec![
            Check::from_residual("clifford.omega_commute", p(), &(&om[i] * &om[j]).diff(&(&om[j] * &om[i]))),
            Check::from_residual(
                "clifford.omega_conj_psi",
                p(),
                &(&(&om[i] * &psi[j]) * &omi[i]).diff(&psi[j].scale(&qp(if same { 1 } else { 0 }))),
            ),
            Check::from_residual(
                "clifford.omega_conj_psidag",
                p(),
                &(&(&om[i] * &dag[j]) * &omi[i]).diff(&dag[j].scale(&qp(if same { -1 } else { 0 }))),
            ),
            Check::from_residual(
                "clifford.psi_anticommute",
                p(),
                &(&(&psi[i] * &psi[j]) + &(&psi[j] * &psi[i])).residual(),
            ),
            Check::from_residual(
                "clifford.psidag_anticommute",
                p(),
                &(&(&dag[i] * &dag[j]) + &(&dag[j] * &dag[i])).residual(),
            ),
        ];
        let car = &(&psi[i] * &dag[j]) + &(&dag[j] * &psi[i]);
        if !same {
            out.push(Check::from_residual("clifford.mixed_anticommute", p(), &car.residual()));
        } else {
            out.push(Check::from_residual("clifford.car_diagonal", p(), &car.diff(&one)));
        }
        out
    });

    let modes: Vec<usize> = (0..n).collect();
    checks.extend(run_parallel(&modes, |&i| {
        let mode = i + 1;
        let p = || params([("i", mode)]);
        let pd = &psi[i] * &dag[i];
        let dp = &dag[i] * &psi[i];
        let mut out = vec![
            Check::from_residual("clifford.omega_inverse_left", p(), &(&om[i] * &omi[i]).diff(&one)),
            Check::from_residual("clifford.omega_inverse_right", p(), &(&omi[i] * &om[i]).diff(&one)),
            Check::from_residual("clifford.omega_inv_square", p(), &(&pd + &dp.scale(&qp(2))).diff(&omi[i].pow(2))),
            Check::from_residual("clifford.omega_square", p(), &(&pd + &dp.scale(&qp(-2))).diff(&om[i].pow(2))),
            Check::from_residual(
                "clifford.omega_min_poly",
                p(),
                &(&(&om[i] - &one) * &(&om[i].scale(&qp(1)) - &one)).residual(),
            ),
            Check::from_residual("clifford.omega_absorbs_psi_left", p(), &(&om[i] * &psi[i]).diff(&psi[i])),
            Check::from_residual(
                "clifford.omega_absorbs_psi_right",
                p(),
                &(&psi[i] * &om[i]).diff(&psi[i].scale(&qp(-1))),
            ),
            Check::from_residual("clifford.omega_absorbs_psidag_right", p(), &(&dag[i] * &om[i]).diff(&dag[i])),
            Check::from_residual(
                "clifford.omega_absorbs_psidag_left",
                p(),
                &(&om[i] * &dag[i]).diff(&dag[i].scale(&qp(-1))),
            ),
            Check::from_residual("clifford.omega_star", p(), &om[i].star().diff(&om[i])),
            Check::from_residual("clifford.omega_inv_star", p(), &omi[i].star().diff(&omi[i])),
            Check::from_residual("clifford.omega_reversal", p(), &om[i].reversal().diff(&omi[i].scale(&qp(-1)))),
            Check::from_residual("clifford.omega_inv_reversal", p(), &omi[i].reversal().diff(&om[i].scale(&qp(1)))),
        ];
        let z = zeta(n, mode).expect("valid mode");
        let ones = &one;
        let via_zeta =
            (&ones.scale(&qp(-1).add(&ExactScalar::one())) - &z.scale(&qp(-1).sub(&ExactScalar::one()))).scale(&half());
        let via_zeta_inv =
            (&ones.scale(&qp(1).add(&ExactScalar::one())) - &z.scale(&qp(1).sub(&ExactScalar::one()))).scale(&half());
        out.push(Check::from_residual("clifford.omega_via_zeta", p(), &om[i].diff(&via_zeta)));
        out.push(Check::from_residual("clifford.omega_inv_via_zeta", p(), &omi[i].diff(&via_zeta_inv)));
        out.push(Check::from_residual("clifford.zeta_square", p(), &z.pow(2).diff(&one)));
        for power in -3i32..=3 {
            let closed = omega_power(n, mode, power).expect("valid mode");
            let base = if power >= 0 { &om[i] } else { &omi[i] };
            let repeated = base.pow(power.unsigned_abs());
            out.push(Check::from_residual(
                "clifford.omega_power",
                params([("i", mode as i64), ("n", power as i64)]),
                &closed.diff(&repeated),
            ));
        }
        out
    }));

    if n <= 3 {
        let basis: Vec<Monomial> = Monomial::all(n).collect();
        let y_ok = basis.iter().all(|m| {
            let x = AlgebraElement::from_monomial(n, *m, ExactScalar::one());
            x.reversal().reversal() == x
        });
        let star_ok = basis.iter().all(|m| {
            let x = AlgebraElement::from_monomial(n, *m, ExactScalar::constant(QISqrt2::i()));
            x.star().star() == x
        });
        checks.push(Check::predicate("clifford.reversal_involution", params([("n", n)]), y_ok, "Y(Y(m)) != m"));
        checks.push(Check::predicate("clifford.star_involution", params([("n", n)]), star_ok, "(m*)* != m"));
    }
    Ok(Report::new("clifford", n, checks))
}
