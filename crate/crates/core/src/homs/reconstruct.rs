//! `Δ` of `U_q(su(N))` rebuilt from `δ₁` and `δ₂`.

use num_complex::Complex64;

use super::{field, FermionHom};
use crate::algebra::Algebra;
use crate::clifford::{omega_power, AlgebraElement, Letter};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::fock::tensor_to_matrix;
use crate::linalg::DenseMatrix;
use crate::qgroup::{Generator, UqGenerators};
use crate::report::{params, Check, Report};
use crate::scalar::{ExactScalar, QISqrt2};
use crate::tensor::{tensor2, Tensor2};

/// Sign of the `((q−1)/q)(ψ⊗ψ† − ψ†⊗ψ)` term in the closed form of `2δ_k(ω_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaSign {
    /// `2δ₁(ω) = 1⊗ω + ω⊗1 − ((q−1)/q)X`, `2δ₂(ω)` with `+`: what the
    /// definitions of `δ₁`, `δ₂` and the graded product give.
    Derived,
    /// The signs exchanged between `δ₁` and `δ₂`; does not hold.
    Exchanged,
}

/// `½{1⊗ω_i + ω_i⊗1 ± ((q−1)/q)(ψ_i⊗ψ_i† − ψ_i†⊗ψ_i)}`, the closed form of
/// `δ_k(ω_i)` for `k ∈ {1, 2}`.
pub fn delta_omega_closed_form(n: usize, i: usize, k: u8, sign: OmegaSign) -> Result<Tensor2> {
    if k != 1 && k != 2 {
        return Err(Error::InvalidArgument(format!("no homomorphism delta{k}")));
    }
    let psi = AlgebraElement::annihilator(n, i)?;
    let dag = AlgebraElement::creator(n, i)?;
    let om = omega_power(n, i, 1)?;
    let one = AlgebraElement::one(n);
    let x = &tensor2(&psi, &dag) - &tensor2(&dag, &psi);
    // (q − 1)/q = 1 − q^{−1}
    let hop = ExactScalar::one().sub(&ExactScalar::q_pow(-1));
    let minus = (k == 1) == (sign == OmegaSign::Derived);
    let hop = if minus { hop.neg() } else { hop };
    let sum = &(&tensor2(&one, &om) + &tensor2(&om, &one)) + &x.scale(&hop);
    Ok(sum.scale(&field(QISqrt2::frac(1, 2))))
}

/// `δ₁(ω_i)`, `δ₂(ω_i)` closed forms, `δ₁(ω^{±1})δ₂(ω^{±1}) = δ₂(ω^{±1})δ₁(ω^{±1}) = ω^{±1}⊗ω^{±1}`,
/// the sum rule `δ₁(ωⁿ) + δ₂(ωⁿ) = 1⊗ωⁿ + ωⁿ⊗1` for `|n| ≤ 2`, and
/// `Δ(k_i^{±1}) = δ₁(k_i^{±1})δ₂(k_i^{±1}) = δ₂(k_i^{±1})δ₁(k_i^{±1})`.
pub fn delta_omega_identities(n: usize) -> Result<Report> {
    let d1 = FermionHom::delta1(n)?;
    let d2 = FermionHom::delta2(n)?;
    let one = AlgebraElement::one(n);
    let mut checks = Vec::new();
    for i in 1..=n {
        let p = || params([("i", i)]);
        let om = omega_power(n, i, 1)?;
        for (k, h) in [(1u8, &d1), (2, &d2)] {
            let closed = delta_omega_closed_form(n, i, k, OmegaSign::Derived)?;
            checks.push(
                Check::from_residual(&format!("delta_omega.closed_form_{k}"), p(), &h.apply(&om)?.diff(&closed))
                    .with_note("hopping term enters with a minus sign for delta1, plus for delta2"),
            );
        }
        for (label, e) in [("omega", 1), ("omega_inv", -1)] {
            let w = omega_power(n, i, e)?;
            let (a, b) = (d1.apply(&w)?, d2.apply(&w)?);
            let target = tensor2(&w, &w);
            checks.push(Check::from_residual(
                &format!("delta_omega.product_{label}_12"),
                p(),
                &(&a * &b).diff(&target),
            ));
            checks.push(Check::from_residual(
                &format!("delta_omega.product_{label}_21"),
                p(),
                &(&b * &a).diff(&target),
            ));
        }
        for e in -2..=2 {
            let w = omega_power(n, i, e)?;
            let lhs = &d1.apply(&w)? + &d2.apply(&w)?;
            let rhs = &tensor2(&one, &w) + &tensor2(&w, &one);
            checks.push(Check::from_residual(
                "delta_omega.sum_rule",
                params([("i", i as i64), ("power", e as i64)]),
                &lhs.diff(&rhs),
            ));
        }
    }
    if n >= 2 {
        let g = UqGenerators::new(n)?;
        let d = g.coproduct();
        for i in 0..g.rank() {
            let p = || params([("i", i + 1)]);
            for (label, x, dx) in [("k", &g.k[i], &d.k[i]), ("k_inv", &g.k_inv[i], &d.k_inv[i])] {
                let (a, b) = (d1.apply(x)?, d2.apply(x)?);
                checks.push(Check::from_residual(
                    &format!("delta_omega.coproduct_{label}_12"),
                    p(),
                    &(&a * &b).diff(dx),
                ));
                checks.push(Check::from_residual(
                    &format!("delta_omega.coproduct_{label}_21"),
                    p(),
                    &(&b * &a).diff(dx),
                ));
            }
        }
    }
    Ok(Report::new("delta_omega", n, checks))
}

fn tilde_with(n: usize, l: Letter, imag_sign: i64) -> Result<Tensor2> {
    AlgebraElement::letter(n, l)?;
    let d1 = FermionHom::delta1(n)?;
    let d2 = FermionHom::delta2(n)?;
    // 1/(2√q) = ½ s^{−1}; (q+1) = s² + 1; i(q−1) = i(s² − 1).
    let half_inv_s = ExactScalar::monomial(QISqrt2::frac(1, 2), -1);
    let c2 = half_inv_s.mul(&ExactScalar::q_pow(1).add(&ExactScalar::one()));
    let c1 = half_inv_s
        .mul(&ExactScalar::q_pow(1).sub(&ExactScalar::one()))
        .scale(&QISqrt2::i().scale(&crate::scalar::Rational::from_int(-imag_sign)));
    Ok(&d2.letter_image(l).scale(&c2) + &d1.letter_image(l).scale(&c1))
}

/// `δ̃(a) = (1/2√q){(q+1)δ₂(a) − i(q−1)δ₁(a)}` on a single generator.
/// `δ̃` is linear but not multiplicative, so it is only defined on generators.
pub fn delta_tilde(n: usize, l: Letter) -> Result<Tensor2> {
    tilde_with(n, l, 1)
}

/// `δ̃'(a) = δ̃(a*)* = (1/2√q){(q+1)δ₂(a) + i(q−1)δ₁(a)}`.
pub fn delta_tilde_conjugate(n: usize, l: Letter) -> Result<Tensor2> {
    tilde_with(n, l, -1)
}

/// `δ̃` extended linearly over the span of `ψ_i, ψ_i†`; any other input is rejected.
pub fn delta_tilde_of(x: &AlgebraElement) -> Result<Tensor2> {
    let n = x.modes();
    let mut out = Tensor2::zero(n);
    for (m, c) in x.terms() {
        if m.degree() != 1 {
            return Err(Error::InvalidArgument(format!(
                "delta-tilde is defined on generators only, got {}",
                m.to_text()
            )));
        }
        let l = m.letters()[0];
        out = &out + &delta_tilde(n, l)?.scale(c);
    }
    Ok(out)
}

fn inv_sqrt2() -> ExactScalar {
    field(QISqrt2::inv_sqrt2())
}

/// `(1/√2)(√q ω_i⊗ψ_i + (1/√q) ψ_i⊗ω_i^{−1})` and the `ψ_i†` analog
/// `(1/√2)(√q ψ_i†⊗ω_i + (1/√q) ω_i^{−1}⊗ψ_i†)`.
fn tilde_closed_form(n: usize, l: Letter) -> Result<Tensor2> {
    let x = AlgebraElement::letter(n, l)?;
    let om = omega_power(n, l.mode, 1)?;
    let omi = omega_power(n, l.mode, -1)?;
    let (s, s_inv) = (ExactScalar::s_pow(1), ExactScalar::s_pow(-1));
    let t = if l.dagger {
        &tensor2(&x, &om).scale(&s) + &tensor2(&omi, &x).scale(&s_inv)
    } else {
        &tensor2(&om, &x).scale(&s) + &tensor2(&x, &omi).scale(&s_inv)
    };
    Ok(t.scale(&inv_sqrt2()))
}

/// Two closed forms of `δ̃(ψ_i)δ̃(ψ_{i+1}†)`: the four-term expansion
/// and `½{k⊗e + e⊗k^{−1} − q(1−Y)(ω_iψ_{i+1}†⊗ψ_iω_{i+1})}`.
pub fn delta_tilde_product_expansion(n: usize, i: usize) -> Result<(Tensor2, Tensor2)> {
    let g = UqGenerators::new(n)?;
    g.get(Generator::E, i)?;
    let psi = AlgebraElement::annihilator(n, i)?;
    let dag = AlgebraElement::creator(n, i + 1)?;
    let (om_i, omi_i) = (omega_power(n, i, 1)?, omega_power(n, i, -1)?);
    let (om_j, omi_j) = (omega_power(n, i + 1, 1)?, omega_power(n, i + 1, -1)?);
    let half = field(QISqrt2::frac(1, 2));
    let e = &psi * &dag;
    let expanded = &(&(&tensor2(&(&om_i * &omi_j), &e) + &tensor2(&e, &(&omi_i * &om_j)))
        - &tensor2(&(&om_i * &dag), &(&psi * &om_j)).scale(&ExactScalar::q_pow(1)))
        + &tensor2(&(&psi * &omi_j), &(&omi_i * &dag)).scale(&ExactScalar::q_pow(-1));
    let x = tensor2(&(&om_i * &dag), &(&psi * &om_j));
    let compact = &(&tensor2(&g.k[i - 1], &g.e[i - 1]) + &tensor2(&g.e[i - 1], &g.k_inv[i - 1]))
        - &(&x - &x.reversal()).scale(&ExactScalar::q_pow(1));
    Ok((expanded.scale(&half), compact.scale(&half)))
}

fn letters_for(i: usize, g: Generator) -> Result<(Letter, Letter)> {
    match g {
        Generator::E => Ok((Letter::ann(i), Letter::dag(i + 1))),
        Generator::F => Ok((Letter::ann(i + 1), Letter::dag(i))),
        _ => Err(Error::InvalidArgument("only e and f are rebuilt from delta-tilde".into())),
    }
}

/// `(id+Z)(δ̃(ψ_i)δ̃(ψ_{i+1}†))` for `e_i`, `(id+Z)(δ̃(ψ_{i+1})δ̃(ψ_i†))` for `f_i`.
pub fn coproduct_via_homs(n: usize, i: usize, which: Generator) -> Result<Tensor2> {
    UqGenerators::new(n)?.get(which, i)?;
    let (a, b) = letters_for(i, which)?;
    let p = &delta_tilde(n, a)? * &delta_tilde(n, b)?;
    Ok(&p + &p.z_map())
}

/// `δ̃(x)δ̃(y) + τ(δ̃(x†)* δ̃(y†)*)` with `(x, y) = (ψ_i, ψ_{i+1}†)` for `e_i`
/// and `(ψ_{i+1}, ψ_i†)` for `f_i`.
pub fn coproduct_via_star_flip(n: usize, i: usize, which: Generator) -> Result<Tensor2> {
    UqGenerators::new(n)?.get(which, i)?;
    let (a, b) = letters_for(i, which)?;
    let p = &delta_tilde(n, a)? * &delta_tilde(n, b)?;
    let flipped = (&delta_tilde(n, a.adjoint())?.star() * &delta_tilde(n, b.adjoint())?.star()).flip();
    Ok(&p + &flipped)
}

fn conjugate_variant(n: usize, i: usize, which: Generator) -> Result<Tensor2> {
    let (a, b) = letters_for(i, which)?;
    let p = &delta_tilde_conjugate(n, a)? * &delta_tilde_conjugate(n, b)?;
    Ok(&p + &p.z_map())
}

fn eval_exact(t: &Tensor2, q: &crate::scalar::Rational) -> Result<DenseMatrix<QISqrt2>> {
    tensor_to_matrix(t)?.evaluate::<QISqrt2>(q).ok_or_else(|| Error::InvalidArgument(format!("not evaluable at q={q}")))
}

fn max_dev(a: &DenseMatrix<Complex64>, b: &DenseMatrix<Complex64>) -> f64 {
    a.sub(b).max_magnitude()
}

/// Everything about rebuilding `Δ` from `δ₁`, `δ₂`: the `ω` identities, `δ̃`
/// closed forms and product expansion, `Δ(e_i)`, `Δ(f_i)` through `(id+Z)`
/// and through `τ` and `*`, and the same comparisons on `V⊗V` matrices at
/// each sample `q` (`N ≤ 3`).
pub fn verify_reconstruction(n: usize, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let mut checks = delta_omega_identities(n)?.checks;
    for i in 1..=n {
        for l in [Letter::ann(i), Letter::dag(i)] {
            let p = || params([("x", l.to_string())]);
            checks.push(Check::from_residual(
                "delta_tilde.closed_form",
                p(),
                &delta_tilde(n, l)?.diff(&tilde_closed_form(n, l)?),
            ));
            checks.push(Check::from_residual(
                "delta_tilde.conjugate",
                p(),
                &delta_tilde(n, l.adjoint())?.star().diff(&delta_tilde_conjugate(n, l)?),
            ));
        }
    }
    if n < 2 {
        return Ok(Report::new("reconstruction", n, checks));
    }
    let g = UqGenerators::new(n)?;
    let d = g.coproduct();
    for i in 1..n {
        let p = || params([("i", i)]);
        let prod = &delta_tilde(n, Letter::ann(i))? * &delta_tilde(n, Letter::dag(i + 1))?;
        let (expanded, compact) = delta_tilde_product_expansion(n, i)?;
        checks.push(Check::from_residual("delta_tilde.product_expanded", p(), &prod.diff(&expanded)));
        checks.push(Check::from_residual("delta_tilde.product_compact", p(), &prod.diff(&compact)));

        let via_e = coproduct_via_homs(n, i, Generator::E)?;
        let via_f = coproduct_via_homs(n, i, Generator::F)?;
        let flip_e = coproduct_via_star_flip(n, i, Generator::E)?;
        let flip_f = coproduct_via_star_flip(n, i, Generator::F)?;
        let (de, df) = (&d.e[i - 1], &d.f[i - 1]);
        checks.push(Check::from_residual("reconstruct.e_via_z", p(), &via_e.diff(de)));
        checks.push(Check::from_residual("reconstruct.f_via_z", p(), &via_f.diff(df)));
        checks.push(Check::from_residual("reconstruct.e_via_flip", p(), &flip_e.diff(de)));
        checks.push(Check::from_residual("reconstruct.f_via_flip", p(), &flip_f.diff(df)));
        checks.push(Check::from_residual("reconstruct.f_is_star_of_e", p(), &via_f.diff(&via_e.star())));
        checks.push(
            Check::from_residual(
                "reconstruct.f_via_z_conjugate",
                p(),
                &conjugate_variant(n, i, Generator::F)?.diff(df),
            )
            .with_note("uses the conjugate combination with +i(q-1)"),
        );
        checks.push(Check::from_residual(
            "reconstruct.e_even_part",
            p(),
            &prod.even_even_part().scale(&ExactScalar::int(2)).diff(de),
        ));

        if n <= 3 {
            for q in &cfg.q_samples {
                let pq = || params([("i", serde_json::Value::from(i)), ("q", serde_json::Value::from(q.to_string()))]);
                let qf = q.to_f64();
                let numeric = tensor_to_matrix(&delta_tilde(n, Letter::ann(i))?)?
                    .eval_complex(qf)
                    .mul(&tensor_to_matrix(&delta_tilde(n, Letter::dag(i + 1))?)?.eval_complex(qf));
                let dev = max_dev(&numeric, &tensor_to_matrix(&prod)?.eval_complex(qf));
                checks.push(Check::predicate(
                    "oracle.delta_tilde_product",
                    pq(),
                    dev <= cfg.tolerance,
                    &format!("max deviation {dev:e}"),
                ));
                let target_e = eval_exact(de, q)?;
                let target_f = eval_exact(df, q)?;
                for (id, t, target) in [
                    ("oracle.e_via_z", &via_e, &target_e),
                    ("oracle.f_via_z", &via_f, &target_f),
                    ("oracle.e_via_flip", &flip_e, &target_e),
                    ("oracle.f_via_flip", &flip_f, &target_f),
                ] {
                    let got = eval_exact(t, q)?;
                    let bad = got.sub(target).entries().iter().filter(|x| !x.is_zero()).count();
                    checks.push(Check::predicate(id, pq(), bad == 0, &format!("{bad} entries differ")));
                }
            }
        }
    }
    Ok(Report::new("reconstruction", n, checks))
}
