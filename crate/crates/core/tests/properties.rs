use num_rational::BigRational;
use proptest::prelude::*;
use qferm::clifford::{AlgebraElement, Monomial};
use qferm::fock::to_matrix;
use qferm::homs::FermionHom;
use qferm::scalar::{ExactScalar, QISqrt2, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d))
}

fn field() -> impl Strategy<Value = QISqrt2> {
    [small_rational(), small_rational(), small_rational(), small_rational()]
        .prop_map(|[a, b, c, d]| QISqrt2::new(a, b, c, d))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((-3i32..=3, field()), 0..4).prop_map(ExactScalar::from_terms)
}

fn element(n: usize) -> impl Strategy<Value = AlgebraElement> {
    let mask = (1u32 << n) - 1;
    prop::collection::vec((0..=mask, 0..=mask, -3i64..=3, -2i32..=2), 0..5).prop_map(move |terms| {
        AlgebraElement::from_terms(
            n,
            terms.into_iter().map(|(d, a, c, k)| (Monomial::new(d, a), ExactScalar::monomial(QISqrt2::int(c), k))),
        )
        .unwrap()
    })
}

fn big(r: &Rational) -> BigRational {
    r.to_big()
}

proptest! {
    #[test]
    fn rational_matches_bigrational(x in rational(), y in rational()) {
        prop_assert_eq!(big(&x.add(&y)), big(&x) + big(&y));
        prop_assert_eq!(big(&x.mul(&y)), big(&x) * big(&y));
        prop_assert_eq!(big(&x.sub(&y)), big(&x) - big(&y));
        if !y.is_zero() {
            prop_assert_eq!(big(&x.div(&y).unwrap()), big(&x) / big(&y));
        }
    }

    #[test]
    fn rational_display_round_trips(x in rational()) {
        let back: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rational_order_is_consistent(x in rational(), y in rational()) {
        prop_assert_eq!(x.cmp(&y), big(&x).cmp(&big(&y)));
    }

    #[test]
    fn field_inverse(x in field()) {
        prop_assume!(!x.is_zero());
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn field_conjugation_is_multiplicative(x in field(), y in field()) {
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
    }

    #[test]
    fn field_distributes(x in field(), y in field(), z in field()) {
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn laurent_ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(x in scalar(), y in scalar()) {
        let q = 1.3;
        let lhs = x.mul(&y).eval(q);
        let rhs = x.eval(q) * y.eval(q);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn product_is_associative(x in element(3), y in element(3), z in element(3)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn star_is_an_antiautomorphism(x in element(3), y in element(3)) {
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn reversal_is_an_antiautomorphism(x in element(3), y in element(3)) {
        prop_assert_eq!((&x * &y).reversal(), &y.reversal() * &x.reversal());
        prop_assert_eq!(x.reversal().reversal(), x);
    }

    #[test]
    fn fock_representation_is_multiplicative(x in element(3), y in element(3)) {
        let lhs = to_matrix(&(&x * &y)).unwrap();
        let rhs = to_matrix(&x).unwrap().mul(&to_matrix(&y).unwrap());
        prop_assert_eq!(lhs.entries(), rhs.entries());
        let (star, adj) = (to_matrix(&x.star()).unwrap(), to_matrix(&x).unwrap().conj_transpose());
        prop_assert_eq!(star.entries(), adj.entries());
    }

    #[test]
    fn homs_are_star_homomorphisms(x in element(2), y in element(2)) {
        for h in [FermionHom::delta1(2).unwrap(), FermionHom::delta2(2).unwrap()] {
            let hx = h.apply(&x).unwrap();
            let hy = h.apply(&y).unwrap();
            prop_assert_eq!(h.apply(&(&x * &y)).unwrap(), &hx * &hy);
            prop_assert_eq!(h.apply(&x.star()).unwrap(), hx.star());
        }
    }

    #[test]
    fn tensor_star_and_reversal(x in element(2), y in element(2)) {
        let h = FermionHom::delta2(2).unwrap();
        let (a, b) = (h.apply(&x).unwrap(), h.apply(&y).unwrap());
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        prop_assert_eq!(a.reversal().reversal(), a.clone());
        prop_assert_eq!(a.flip().flip(), a);
    }
}
