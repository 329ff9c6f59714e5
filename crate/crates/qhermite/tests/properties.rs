//! Property-based invariants: ring laws for the exact bivariate
//! polynomials, operator identities, and structural facts about the
//! families that must hold for arbitrary small inputs.

use num_traits::{One, Zero};
use proptest::prelude::*;
use qhermite::qcore::{q_factorial, q_number, rat, QParam, Rational};
use qhermite::qhermite::{q_hermite, q_hermite_explicit};
use qhermite::Poly2;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(a, b)| rat(a, b))
}

fn arb_poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec(((0u32..5, 0u32..4), arb_rational()), 0..6).prop_map(|terms| {
        let mut p = Poly2::zero();
        for ((xe, se), c) in terms {
            p = &p + &Poly2::monomial(xe, se, c);
        }
        p
    })
}

fn arb_q() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative_and_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn one_and_zero_are_neutral(a in arb_poly()) {
        prop_assert_eq!(&a * &Poly2::one(), a.clone());
        prop_assert_eq!(&a + &Poly2::zero(), a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in arb_poly(), b in arb_poly(), x in arb_rational(), s in arb_rational()
    ) {
        prop_assert_eq!(
            (&a * &b).eval_exact(&x, &s),
            a.eval_exact(&x, &s) * b.eval_exact(&x, &s)
        );
        prop_assert_eq!(
            (&a + &b).eval_exact(&x, &s),
            a.eval_exact(&x, &s) + b.eval_exact(&x, &s)
        );
    }

    #[test]
    fn jackson_derivative_is_linear_and_satisfies_leibniz(
        a in arb_poly(), b in arb_poly(), q in arb_q()
    ) {
        let lhs = (&a + &b).jackson_dx(&q).unwrap();
        let rhs = &a.jackson_dx(&q).unwrap() + &b.jackson_dx(&q).unwrap();
        prop_assert_eq!(lhs, rhs);
        // q-Leibniz: D(fg) = f(qx) Dg + (Df) g
        let fq = a.dilate_x(&q).unwrap();
        let lhs = (&a * &b).jackson_dx(&q).unwrap();
        let rhs = &(&fq * &b.jackson_dx(&q).unwrap()) + &(&a.jackson_dx(&q).unwrap() * &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jackson_derivative_is_a_difference_quotient(
        a in arb_poly(), q in arb_q(), x in arb_rational(), s in arb_rational()
    ) {
        // D_x^q f = (f(qx) - f(x)) / ((q-1)x) away from x = 0, q = 1
        prop_assume!(!x.is_zero() && q != Rational::one());
        let qx = &q * &x;
        let expect = (a.eval_exact(&qx, &s) - a.eval_exact(&x, &s))
            / ((&q - &Rational::one()) * &x);
        prop_assert_eq!(a.jackson_dx(&q).unwrap().eval_exact(&x, &s), expect);
    }

    #[test]
    fn dilation_composes(a in arb_poly(), f in arb_rational(), g in arb_rational()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = a.dilate_x(&f).unwrap().dilate_x(&g).unwrap();
        let rhs = a.dilate_x(&(&f * &g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_factorial_recurrence(n in 1i64..=30, q in arb_q()) {
        prop_assert_eq!(
            q_factorial(n, &q).unwrap(),
            q_factorial(n - 1, &q).unwrap() * q_number(n, &q).unwrap()
        );
    }

    #[test]
    fn q_hermite_is_monic_with_correct_degrees(n in 0u32..=12, q in arb_q()) {
        let qq = QParam::new(q).unwrap();
        let h = q_hermite(n, &qq).unwrap().poly;
        prop_assert_eq!(h.degree_x(), n);
        prop_assert_eq!(h.coeff(n, 0), Rational::one());
        // x-parity: every monomial has x-exponent of the same parity as n
        for (&(xe, se), _) in h.iter() {
            prop_assert_eq!(xe % 2, n % 2);
            prop_assert_eq!(xe + 2 * se, n);
        }
        prop_assert_eq!(h, q_hermite_explicit(n, &qq).unwrap().poly);
    }
}
