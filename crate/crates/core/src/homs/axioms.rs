use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{field, pure3, FermionHom, HomParams};
use crate::algebra::Algebra;
use crate::clifford::{zeta, AlgebraElement, Letter, Monomial};
use crate::error::{Error, Result};
use crate::report::{params, run_parallel, Check, Report};
use crate::scalar::{ExactScalar, QISqrt2};
use crate::tensor::{Tensor2, Tensor3};

/// All-pairs multiplicativity is exhaustive up to this many modes; above it
/// a seeded sample of pairs is used.
const EXHAUSTIVE_PAIRS: usize = 3;
const SAMPLED_PAIRS: usize = 512;

fn mono(n: usize, m: Monomial) -> AlgebraElement {
    AlgebraElement::from_monomial(n, m, ExactScalar::one())
}

fn hp(h: &FermionHom) -> (&'static str, Value) {
    ("hom", Value::from(h.name()))
}

/// `δ(1) = 1⊗1`, the anticommutation relations on images, `δ(xy) = δ(x)δ(y)`
/// on basis monomials and `δ(x*) = δ(x)*`.
pub fn verify_hom_axioms(h: &FermionHom, seed: u64) -> Result<Report> {
    let n = h.modes();
    let mut checks = vec![Check::from_residual(
        "hom.unit",
        params([hp(h)]),
        &h.apply(&AlgebraElement::one(n))?.diff(&Tensor2::one(n)),
    )];
    checks.extend(h.car_image_checks());

    let monos: Vec<Monomial> = Monomial::all(n).collect();
    let images: Vec<Tensor2> = monos.iter().map(|m| h.apply_monomial(m)).collect();
    if n <= EXHAUSTIVE_PAIRS {
        checks.extend(run_parallel(&monos, |x| {
            let left = &images[x.index(n)];
            let mut bad = 0usize;
            let mut first = None;
            for y in &monos {
                let prod = &mono(n, *x) * &mono(n, *y);
                let r = h.apply(&prod).expect("same modes").diff(&(left * &images[y.index(n)]));
                if !r.zero {
                    bad += 1;
                    first.get_or_insert_with(|| format!("y={}", y.to_text()));
                }
            }
            vec![Check::predicate(
                "hom.multiplicative",
                params([hp(h), ("x", Value::from(x.to_text()))]),
                bad == 0,
                &format!("{bad} right factors fail; first {}", first.unwrap_or_default()),
            )]
        }));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(Monomial, Monomial)> = (0..SAMPLED_PAIRS)
            .map(|_| (monos[rng.gen_range(0..monos.len())], monos[rng.gen_range(0..monos.len())]))
            .collect();
        checks.extend(run_parallel(&pairs, |(x, y)| {
            let prod = &mono(n, *x) * &mono(n, *y);
            let lhs = h.apply(&prod).expect("same modes");
            vec![Check::from_residual(
                "hom.multiplicative",
                params([hp(h), ("x", Value::from(x.to_text())), ("y", Value::from(y.to_text()))]),
                &lhs.diff(&(&h.apply_monomial(x) * &h.apply_monomial(y))),
            )]
        }));
    }

    checks.extend(run_parallel(&monos, |x| {
        let lhs = h.apply(&mono(n, *x).star()).expect("same modes");
        vec![Check::from_residual(
            "hom.star",
            params([hp(h), ("x", Value::from(x.to_text()))]),
            &lhs.diff(&images[x.index(n)].star()),
        )]
    }));
    Ok(Report::new("homs", n, checks))
}

fn generators(n: usize) -> Vec<Letter> {
    (1..=n).flat_map(|i| [Letter::ann(i), Letter::dag(i)]).collect()
}

/// `m((id⊗δ)∘δ(φ)) = m((δ⊗id)∘δ(φ))` on generators, and on every basis
/// monomial when `N ≤ 2`.
pub fn verify_m_condition(h: &FermionHom) -> Result<Report> {
    let n = h.modes();
    let mut targets: Vec<Monomial> = generators(n).into_iter().map(letter_monomial).collect();
    if n <= 2 {
        targets.extend(Monomial::all(n).filter(|m| m.degree() != 1));
    }
    let checks = run_parallel(&targets, |m| {
        let d = h.apply_monomial(m);
        let lhs = h.apply_right(&d).multiply();
        let rhs = h.apply_left(&d).multiply();
        vec![Check::from_residual("hom.m_condition", params([hp(h), ("x", Value::from(m.to_text()))]), &lhs.diff(&rhs))]
    });
    Ok(Report::new("homs", n, checks))
}

fn letter_monomial(l: Letter) -> Monomial {
    let bit = 1u32 << (l.mode - 1);
    if l.dagger {
        Monomial::new(bit, 0)
    } else {
        Monomial::new(0, bit)
    }
}

/// Whether `(δ⊗id)∘δ = (id⊗δ)∘δ` on every generator. The check passes when
/// the observation agrees with the expectation that only the two trivial
/// homomorphisms are coassociative.
pub fn verify_strict_coassoc(h: &FermionHom) -> Check {
    let n = h.modes();
    let mut witness = None;
    for l in generators(n) {
        let d = h.letter_image(l);
        let r = h.apply_left(d).diff(&h.apply_right(d));
        if !r.zero {
            witness = Some(format!("x={l}: {}", r.witness.unwrap_or_default()));
            break;
        }
    }
    let observed = witness.is_none();
    let p = h.params();
    let expected = *p == HomParams::trivial_left() || *p == HomParams::trivial_right();
    let word = |b: bool| if b { "holds" } else { "fails" };
    let detail = match &witness {
        Some(w) => format!("coassociativity fails, {w}"),
        None => "coassociativity holds".to_string(),
    };
    Check::predicate(
        "hom.strict_coassoc",
        params([hp(h), ("expected", Value::from(word(expected)))]),
        observed == expected,
        &detail,
    )
    .with_note(&detail)
}

/// `U = Y∘(δ⊗id)∘δ∘Y`.
fn u_map(h: &FermionHom, x: &AlgebraElement) -> Tensor3 {
    h.apply_left(&h.apply(&x.reversal()).expect("same modes")).reversal()
}

/// `W = (id⊗δ)∘δ`.
fn w_map(h: &FermionHom, x: &AlgebraElement) -> Tensor3 {
    h.apply_right(&h.apply(x).expect("same modes"))
}

/// `Y∘(δ⊗id)∘δ∘Y(a) = (id⊗δ)∘δ(a)` on generators (`N ≤ 3`) and on all basis
/// monomials (`N ≤ 2`); for `δ₁` also the worked three-fold expansion of `ψ_i`.
pub fn verify_pseudo_coassoc(h: &FermionHom) -> Result<Report> {
    let n = h.modes();
    if n > 3 {
        return Err(Error::UnsupportedModes(n));
    }
    let mut targets: Vec<Monomial> = generators(n).into_iter().map(letter_monomial).collect();
    if n <= 2 {
        targets.extend(Monomial::all(n).filter(|m| m.degree() != 1));
    }
    let mut checks = run_parallel(&targets, |m| {
        let x = mono(n, *m);
        vec![Check::from_residual(
            "hom.pseudo_coassoc",
            params([hp(h), ("x", Value::from(m.to_text()))]),
            &u_map(h, &x).diff(&w_map(h, &x)),
        )]
    });
    if *h.params() == HomParams::delta1() {
        // The expansion belongs to the mirrored pair of maps:
        // Y∘(id⊗δ₁)∘δ₁∘Y(ψ_i) = (δ₁⊗id)∘δ₁(ψ_i).
        for i in 1..=n {
            let psi = AlgebraElement::annihilator(n, i)?;
            let shown = worked_expansion_delta1(n, i)?;
            let p = || params([hp(h), ("i", Value::from(i))]);
            let mirrored = h.apply_right(&h.apply(&psi.reversal())?).reversal();
            let direct = h.apply_left(&h.apply(&psi)?);
            checks.push(Check::from_residual("hom.worked_expansion_reversed", p(), &mirrored.diff(&shown)));
            checks.push(Check::from_residual("hom.worked_expansion_direct", p(), &direct.diff(&shown)));
        }
    }
    Ok(Report::new("homs", n, checks))
}

/// The explicit expansion
/// `−½(ψ⊗ζ⊗ζ − ζ⊗ψ⊗ζ) + (i/2√2)(ζ⊗1⊗ψ + 1⊗ζ⊗ψ) + (i/√2)(ψ†⊗ψ⊗ψ − ψ⊗ψ†⊗ψ)`
/// for `ψ = ψ_i`, `ζ = ζ_i`.
pub fn worked_expansion_delta1(n: usize, i: usize) -> Result<Tensor3> {
    let psi = AlgebraElement::annihilator(n, i)?;
    let dag = AlgebraElement::creator(n, i)?;
    let z = zeta(n, i)?;
    let one = AlgebraElement::one(n);
    let half = field(QISqrt2::frac(-1, 2));
    let c2 = field(QISqrt2::i_inv_sqrt2().scale(&crate::scalar::Rational::new(1, 2)));
    let c3 = field(QISqrt2::i_inv_sqrt2());
    let t1 = (&pure3(&psi, &z, &z) - &pure3(&z, &psi, &z)).scale(&half);
    let t2 = (&pure3(&z, &one, &psi) + &pure3(&one, &z, &psi)).scale(&c2);
    let t3 = (&pure3(&dag, &psi, &psi) - &pure3(&psi, &dag, &psi)).scale(&c3);
    Ok(&(&t1 + &t2) + &t3)
}

/// `U(xy) = U(x)U(y)` and `W(xy) = W(x)W(y)` on seeded random monomial pairs
/// (`N ≤ 2`), and the grade identity `d(a) = d(a') + d(a'')` on every term of
/// every image `δ(a)`.
pub fn verify_uw_homomorphism(h: &FermionHom, pairs: usize, seed: u64) -> Result<Report> {
    let n = h.modes();
    if n > 2 {
        return Err(Error::UnsupportedModes(n));
    }
    let monos: Vec<Monomial> = Monomial::all(n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<(Monomial, Monomial)> =
        (0..pairs).map(|_| (monos[rng.gen_range(0..monos.len())], monos[rng.gen_range(0..monos.len())])).collect();
    let mut checks = run_parallel(&sample, |(x, y)| {
        let (xe, ye) = (mono(n, *x), mono(n, *y));
        let xy = &xe * &ye;
        let p = || params([hp(h), ("x", Value::from(x.to_text())), ("y", Value::from(y.to_text()))]);
        let u = u_map(h, &xy).diff(&(&u_map(h, &xe) * &u_map(h, &ye)));
        let w = w_map(h, &xy).diff(&(&w_map(h, &xe) * &w_map(h, &ye)));
        vec![
            Check::from_residual("hom.u_multiplicative", p(), &u),
            Check::from_residual("hom.w_multiplicative", p(), &w),
        ]
    });
    checks.extend(run_parallel(&monos, |m| {
        let img = h.apply_monomial(m);
        let bad = img.terms().filter(|(k, _)| (k[0].grade() + k[1].grade()) % 2 != m.grade()).count();
        vec![Check::predicate(
            "hom.grade_identity",
            params([hp(h), ("x", Value::from(m.to_text()))]),
            bad == 0,
            &format!("{bad} image terms change the grade"),
        )]
    }));
    Ok(Report::new("homs", n, checks))
}
