//! Alternative readings of a few formulas, kept to show they do not hold.

use qferm::algebra::Algebra;
use qferm::clifford::{omega, AlgebraElement, Letter};
use qferm::config::VerifyConfig;
use qferm::homs::{
    delta_omega_closed_form, delta_tilde_of, scan_ansatz, verify_big_fermions, verify_reconstruction, FermionHom,
    HomParams, OmegaSign,
};

#[test]
fn omega_closed_form_sign() {
    for n in 1..=3 {
        for i in 1..=n {
            let om = omega(n, i).unwrap();
            for (k, h) in [(1, FermionHom::delta1(n).unwrap()), (2, FermionHom::delta2(n).unwrap())] {
                let image = h.apply(&om).unwrap();
                let fixed = delta_omega_closed_form(n, i, k, OmegaSign::Derived).unwrap();
                let exchanged = delta_omega_closed_form(n, i, k, OmegaSign::Exchanged).unwrap();
                assert!(image.diff(&fixed).zero);
                assert!(!image.diff(&exchanged).zero);
            }
        }
    }
}

#[test]
fn diagonal_sign_star_breaks_compatibility() {
    let h = FermionHom::delta2(2).unwrap();
    let x = AlgebraElement::annihilator(2, 1).unwrap();
    let image = h.apply(&x).unwrap();
    let dag = h.letter_image(Letter::dag(1));
    assert_eq!(&image.star(), dag);
    assert_ne!(&image.star_with_diagonal_sign(), dag);
}

#[test]
fn delta_tilde_is_only_defined_on_generators() {
    let x = AlgebraElement::annihilator(2, 1).unwrap();
    let y = AlgebraElement::creator(2, 2).unwrap();
    assert!(delta_tilde_of(&(&x + &y)).is_ok());
    assert!(delta_tilde_of(&(&x * &y)).is_err());
    assert!(delta_tilde_of(&AlgebraElement::one(2)).is_err());
}

#[test]
fn big_fermions_fail_only_on_same_mode_pairs() {
    let r = verify_big_fermions(2).unwrap();
    assert!(r.passed_under("fermions.mixed_"));
    assert!(r.passed_under("fermions.adjoint"));
    for c in r.failures() {
        let p = &c.params;
        let same = match (p.get("i"), p.get("j"), p.get("I"), p.get("J")) {
            (Some(i), Some(j), _, _) => i == j,
            (_, _, Some(a), Some(b)) => {
                let (a, b) = (a.as_u64().unwrap(), b.as_u64().unwrap());
                a.abs_diff(b) == 2
            }
            _ => false,
        };
        assert!(same, "unexpected failure {}", c.to_line());
    }
}

#[test]
fn reconstruction_fails_only_for_f() {
    let r = verify_reconstruction(2, &VerifyConfig::default()).unwrap();
    assert!(r.passed_under("delta_tilde"));
    for c in r.failures() {
        assert!(c.relation.contains("f_"), "unexpected failure {}", c.to_line());
    }
}

#[test]
fn scan_finds_the_known_solutions() {
    let hits = scan_ansatz(1, true).unwrap();
    assert_eq!(hits.len(), 6);
    for p in [HomParams::delta1(), HomParams::delta2(), HomParams::trivial_left(), HomParams::trivial_right()] {
        assert!(hits.iter().any(|h| h.params == p));
    }
    assert_eq!(hits.iter().filter(|h| h.pseudo_coassoc).count(), 4);
}

#[test]
fn inadmissible_params_are_rejected() {
    let one = qferm::scalar::QISqrt2::one();
    let zero = qferm::scalar::QISqrt2::zero();
    let p = HomParams::new(one.clone(), zero.clone(), zero, one);
    assert!(!p.is_admissible());
    assert!(FermionHom::new(1, qferm::homs::HomKind::Ansatz, p).is_err());
}
