//! Independent re-derivations checked against the engine.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use qferm::clifford::{AlgebraElement, Letter, Monomial};
use qferm::fock::to_matrix;
use qferm::scalar::{gauss_binom, q_number, ExactScalar, Rational};
use qferm::spectra::{solve, Coupling, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Word = Vec<(usize, bool)>;

/// Sort key of a letter in normal order: creators first, modes ascending.
fn key(l: (usize, bool)) -> (u8, usize) {
    (if l.1 { 0 } else { 1 }, l.0)
}

/// Normal-orders a word by adjacent rewrites:
/// `ψ_iψ_i = ψ_i†ψ_i† = 0`, `ψ_iψ_i† = 1 − ψ_i†ψ_i`, and a sign for every other swap.
fn rewrite(word: Word, coeff: i64, out: &mut BTreeMap<Word, i64>) {
    for p in 0..word.len().saturating_sub(1) {
        let (x, y) = (word[p], word[p + 1]);
        if x == y {
            return;
        }
        if key(x) > key(y) {
            let mut swapped = word.clone();
            swapped.swap(p, p + 1);
            rewrite(swapped, -coeff, out);
            if x.0 == y.0 {
                let mut contracted = word.clone();
                contracted.drain(p..p + 2);
                rewrite(contracted, coeff, out);
            }
            return;
        }
    }
    *out.entry(word).or_insert(0) += coeff;
}

fn random_word(rng: &mut impl Rng, n: usize, len: usize) -> Word {
    (0..len).map(|_| (rng.gen_range(1..=n), rng.gen_bool(0.5))).collect()
}

#[test]
fn normal_order_matches_rewriter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        for _ in 0..300 {
            let len = rng.gen_range(0..=8);
            let w = random_word(&mut rng, n, len);
            let mut expected = BTreeMap::new();
            rewrite(w.clone(), 1, &mut expected);
            let letters: Vec<Letter> = w.iter().map(|&(m, d)| Letter { mode: m, dagger: d }).collect();
            let got = AlgebraElement::from_word(n, &letters).unwrap();
            let mut want = AlgebraElement::zero(n);
            for (nw, c) in expected {
                if c == 0 {
                    continue;
                }
                let mut m = Monomial::IDENTITY;
                for (mode, d) in nw {
                    if d {
                        m.dag |= 1 << (mode - 1);
                    } else {
                        m.ann |= 1 << (mode - 1);
                    }
                }
                want.add_term(m, ExactScalar::int(c));
            }
            assert_eq!(got, want, "word {w:?}");
        }
    }
}

/// Jordan–Wigner matrices on `n` modes, index bit `i−1` = occupation of mode `i`.
fn jw(n: usize, mode: usize, dagger: bool) -> DMatrix<Complex64> {
    let d = 1usize << n;
    let bit = 1usize << (mode - 1);
    let mut m = DMatrix::zeros(d, d);
    for col in 0..d {
        let occupied = col & bit != 0;
        if occupied == dagger {
            continue;
        }
        let sign = if (col & (bit - 1)).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        m[(col ^ bit, col)] = Complex64::new(sign, 0.0);
    }
    m
}

#[test]
fn fock_matrices_match_jordan_wigner() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4 {
        for _ in 0..50 {
            let len = rng.gen_range(1..=6);
            let w = random_word(&mut rng, n, len);
            let letters: Vec<Letter> = w.iter().map(|&(m, d)| Letter { mode: m, dagger: d }).collect();
            let x = AlgebraElement::from_word(n, &letters).unwrap();
            let got = to_matrix(&x).unwrap().eval_complex(1.5).to_nalgebra();
            let want = w.iter().fold(DMatrix::identity(1 << n, 1 << n), |acc, &(m, d)| acc * jw(n, m, d));
            assert!((got - want).camax() < 1e-12, "word {w:?}");
        }
    }
}

#[test]
fn q_numbers_in_floating_point() {
    let q: f64 = 2.0;
    let three = q_number(3, 1).eval(q);
    assert!((three.re - 5.25).abs() < 1e-12 && three.im.abs() < 1e-12);
    let qn = |m: i32, q: f64| (q.powi(m) - q.powi(-m)) / (q - q.recip());
    let q = 1.7;
    let fact = |m: i32| (1..=m).map(|j| qn(j, q)).product::<f64>();
    let want = fact(4) / (fact(2) * fact(2));
    assert!((gauss_binom(4, 2, 1).eval(q).re - want).abs() < 1e-10);
    for m in 0..7 {
        assert!((q_number(m, 1).eval(q).re - qn(m, q)).abs() < 1e-10 || m == 0);
    }
}

#[test]
fn exact_evaluation_agrees_with_float() {
    let x = gauss_binom(5, 2, 1);
    let q = Rational::new(5, 7);
    let exact = x.eval_at_q(&q).unwrap().to_complex();
    assert!((exact - x.eval(q.to_f64())).norm() < 1e-12);
}

/// `H = Σ a_ij c_i c†_{N+j} − a_ij* c†_i c_{N+j}` in a 2N-mode Jordan–Wigner
/// representation, diagonalized densely.
fn oracle_spectrum(cp: &Coupling) -> Vec<f64> {
    let n = cp.modes();
    let d = 1usize << (2 * n);
    let mut h = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            let a = cp.get(i, j);
            h += jw(2 * n, i + 1, false) * jw(2 * n, n + j + 1, true) * a;
            h -= jw(2 * n, i + 1, true) * jw(2 * n, n + j + 1, false) * a.conj();
        }
    }
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

#[test]
fn spectra_agree_with_independent_diagonalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        for variant in [Variant::A, Variant::B] {
            for _ in 0..5 {
                let cp = Coupling::random(n, variant, &mut rng).unwrap();
                let sol = solve(&cp).unwrap();
                let mut got: Vec<f64> = sol.states.iter().map(|s| s.energy).collect();
                got.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let want = oracle_spectrum(&cp);
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w).abs() < 1e-9, "n={n} {got:?} vs {want:?}");
                }
            }
        }
    }
}

#[test]
fn single_mode_unit_coupling() {
    let cp = Coupling::new(1, Variant::A, vec![Complex64::new(1.0, 0.0)]).unwrap();
    let mut e: Vec<f64> = solve(&cp).unwrap().states.iter().map(|s| s.energy).collect();
    e.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let want = [-1.0, 0.0, 0.0, 1.0];
    assert!(e.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12), "{e:?}");
    assert_eq!(oracle_spectrum(&cp).iter().map(|x| x.round() as i32).collect::<Vec<_>>(), vec![-1, 0, 0, 1]);
}
