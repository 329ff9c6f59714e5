//! The classical two-parameter Hermite family H_n(x, s): recursion,
//! explicit sum, operator-exponential and Rodrigues constructions, the
//! inversion into the monomial basis, and the T_n partial sums with their
//! hypergeometric forms.

use crate::polyring::Poly2;
use crate::qcore::{classical_hyper, rat, rat_i, rat_pow, Rational};
use crate::{Error, Result};
use num_traits::{One, Zero};

/// A constructed classical Hermite polynomial: monic of x-degree n.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteClassical {
    pub n: u32,
    pub poly: Poly2,
}

/// n! as an exact rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = Rational::one();
    for k in 2..=n as i64 {
        acc *= rat_i(k);
    }
    acc
}

/// (2n)!! = 2^n n!.
pub fn double_factorial_even(n: u32) -> Rational {
    let mut acc = Rational::one();
    for k in 1..=n as i64 {
        acc *= rat_i(2 * k);
    }
    acc
}

/// (2n-1)!! with (-1)!! = 1.
pub fn double_factorial_odd(n: u32) -> Rational {
    let mut acc = Rational::one();
    for k in 1..=n as i64 {
        acc *= rat_i(2 * k - 1);
    }
    acc
}

/// H_n(x, s) by the three-term recursion H_{n+1} = x H_n - s n H_{n-1}.
pub fn hermite(n: u32) -> HermiteClassical {
    let mut prev = Poly2::one();
    if n == 0 {
        return HermiteClassical { n, poly: prev };
    }
    let mut cur = Poly2::x();
    for m in 1..n {
        let next = &cur.mul_by_x() - &prev.mul_by_s().scale(&rat_i(m as i64));
        prev = cur;
        cur = next;
    }
    HermiteClassical { n, poly: cur }
}

/// H_n(x, s) by the explicit sum n! sum_k (-1)^k s^k x^{n-2k} / ((2k)!! (n-2k)!).
pub fn hermite_explicit(n: u32) -> HermiteClassical {
    let nfact = factorial(n);
    let mut poly = Poly2::zero();
    for k in 0..=n / 2 {
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        let c = sign * &nfact / (double_factorial_even(k) * factorial(n - 2 * k));
        poly = &poly + &Poly2::monomial(n - 2 * k, k, c);
    }
    HermiteClassical { n, poly }
}

/// H_n(x, s) as exp(-s D^2/2) x^n, applied as the finite sum
/// sum_k (-s/2)^k D^{2k} / k! (it terminates on polynomials).
pub fn hermite_operator_exp(n: u32) -> HermiteClassical {
    let mut poly = Poly2::zero();
    let mut dpow = Poly2::monomial(n, 0, Rational::one()); // D^{2k} x^n
    for k in 0..=n / 2 {
        let c = rat_pow(&rat(-1, 2), k as i64).expect("finite power") / factorial(k);
        let mut term = dpow.scale(&c);
        for _ in 0..k {
            term = term.mul_by_s();
        }
        poly = &poly + &term;
        dpow = dpow.classical_dx().classical_dx();
    }
    HermiteClassical { n, poly }
}

/// The Gaussian-stripped Rodrigues polynomial: P_0 = 1,
/// P_{m+1} = x P_m - s P_m' (exact consequence of applying -sD to
/// P_m e^{-x^2/2s}). Postcondition: P_n = hermite(n).
pub fn rodrigues_poly(n: u32) -> Poly2 {
    let mut p = Poly2::one();
    for _ in 0..n {
        p = &p.mul_by_x() - &p.classical_dx().mul_by_s();
    }
    p
}

/// Coefficients d_k with x^n = sum_k d_k s^k H_{n-2k}(x, s), computed by an
/// exact triangular solve in the Hermite basis. Also returns the closed
/// form n!/((2k)!! (n-2k)!); the two agree classically.
pub fn classical_inversion(n: u32) -> (Vec<Rational>, Vec<Rational>) {
    let solved = invert_in_basis(n, |m| hermite(m).poly);
    let closed: Vec<Rational> = (0..=n / 2)
        .map(|k| factorial(n) / (double_factorial_even(k) * factorial(n - 2 * k)))
        .collect();
    (solved, closed)
}

/// Exact triangular solve: express x^n as sum_k d_k s^k B_{n-2k} where
/// B_m = basis(m) is monic of x-degree m. Panics if the residual fails to
/// vanish (the basis does not span x^n).
pub fn invert_in_basis(n: u32, basis: impl Fn(u32) -> Poly2) -> Vec<Rational> {
    let mut residual = Poly2::monomial(n, 0, Rational::one());
    let mut coeffs = Vec::with_capacity((n / 2 + 1) as usize);
    for k in 0..=n / 2 {
        let d = residual.coeff(n - 2 * k, k);
        let mut term = basis(n - 2 * k);
        for _ in 0..k {
            term = term.mul_by_s();
        }
        residual = &residual - &term.scale(&d);
        coeffs.push(d);
    }
    assert!(residual.is_zero(), "triangular inversion left a nonzero residual");
    coeffs
}

/// T_n(alpha, beta) = sum_{k<=floor(n/2)} alpha^k beta^{2k} / (2k)!!, exact.
pub fn t_poly(n: u32, alpha: &Rational, beta: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let ab2 = alpha * beta * beta;
    let mut pw = Rational::one();
    for k in 0..=n / 2 {
        acc += &pw / double_factorial_even(k);
        pw *= &ab2;
    }
    acc
}

/// T_{2n} via the terminating 2F0 form:
/// (alpha beta^2)^n / (2n)!! * 2F0(-n, 1; ; -2/(alpha beta^2)).
pub fn t_poly_2f0(n: u32, alpha: &Rational, beta: &Rational) -> Result<Rational> {
    let ab2 = alpha * beta * beta;
    if ab2.is_zero() {
        return Err(Error::Domain("alpha*beta^2 = 0: 2F0 argument undefined".into()));
    }
    let z = rat_i(-2) / &ab2;
    let f = classical_hyper(&[rat_i(-(n as i64)), rat_i(1)], &[], &z, n as usize + 2)?;
    let mut pw = Rational::one();
    for _ in 0..n {
        pw *= &ab2;
    }
    Ok(pw / double_factorial_even(n) * f)
}

/// Numeric limit T_infinity = e^{alpha beta^2 / 2}, via the partial sum.
pub fn t_poly_limit(alpha: f64, beta: f64, terms: usize) -> f64 {
    let ab2 = alpha * beta * beta;
    let mut acc = 0.0;
    let mut term = 1.0;
    for k in 0..terms {
        acc += term;
        term *= ab2 / (2.0 * (k as f64 + 1.0));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::OpChain;
    use crate::qcore::rat;

    #[test]
    fn printed_polynomials() {
        assert_eq!(hermite(0).poly, Poly2::one());
        assert_eq!(hermite(1).poly, Poly2::x());
        let h2 = &Poly2::monomial(2, 0, Rational::one()) - &Poly2::s();
        assert_eq!(hermite(2).poly, h2);
        let h3 = &Poly2::monomial(3, 0, Rational::one()) - &Poly2::monomial(1, 1, rat_i(3));
        assert_eq!(hermite(3).poly, h3);
        let h4 = &(&Poly2::monomial(4, 0, Rational::one()) - &Poly2::monomial(2, 1, rat_i(6)))
            + &Poly2::monomial(0, 2, rat_i(3));
        assert_eq!(hermite(4).poly, h4);
    }

    #[test]
    fn constructions_agree() {
        for n in 0..=30 {
            let rec = hermite(n).poly;
            assert_eq!(hermite_explicit(n).poly, rec, "explicit, n={n}");
            assert_eq!(hermite_operator_exp(n).poly, rec, "operator exp, n={n}");
            assert_eq!(rodrigues_poly(n), rec, "rodrigues, n={n}");
        }
    }

    #[test]
    fn zero_values() {
        for n in 0..=10u32 {
            let even = hermite(2 * n).poly;
            // H_{2n}(0, s) = (-s)^n prod (2k-1)
            let expect = double_factorial_odd(n) * rat_i(if n % 2 == 1 { -1 } else { 1 });
            assert_eq!(even.coeff(0, n), expect);
            let odd = hermite(2 * n + 1).poly;
            for se in 0..=odd.degree_s() {
                assert!(odd.coeff(0, se).is_zero());
            }
        }
    }

    #[test]
    fn ode_residual_is_zero() {
        for n in 0..=30u32 {
            let h = hermite(n).poly;
            let r = &(&h.classical_dx().classical_dx().mul_by_s()
                - &h.classical_dx().mul_by_x())
                + &h.scale(&rat_i(n as i64));
            assert!(r.is_zero(), "n={n}");
        }
    }

    #[test]
    fn lowering_and_iterated_lowering() {
        for n in 1..=20u32 {
            let h = hermite(n).poly;
            assert_eq!(h.classical_dx(), hermite(n - 1).poly.scale(&rat_i(n as i64)));
        }
        // D^{2k} H_n = n!/(n-2k)! H_{n-2k}
        for n in 0..=16u32 {
            let h = hermite(n).poly;
            for k in 0..=n / 2 {
                let mut d = h.clone();
                for _ in 0..2 * k {
                    d = d.classical_dx();
                }
                let c = factorial(n) / factorial(n - 2 * k);
                assert_eq!(d, hermite(n - 2 * k).poly.scale(&c), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn conjugation_identity() {
        // stripping the Gaussian from (-sD)(f * Gaussian) equals (x - sD) f:
        // (-sD)(f e^{-x^2/2s}) = (x f - s f') e^{-x^2/2s}
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut rnd = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..10 {
            let mut f = Poly2::zero();
            for _ in 0..5 {
                f = &f
                    + &Poly2::monomial(
                        (rnd() % 9) as u32,
                        (rnd() % 3) as u32,
                        rat((rnd() % 21) as i64 - 10, 1 + (rnd() % 5) as i64),
                    );
            }
            let stripped = &f.mul_by_x() - &f.classical_dx().mul_by_s();
            let op_form = &f.mul_by_x() - &f.classical_dx().mul_by_s();
            assert_eq!(stripped, op_form);
            // and one Rodrigues step from H_m reproduces H_{m+1}
        }
        for m in 0..=8u32 {
            let h = hermite(m).poly;
            let next = &h.mul_by_x() - &h.classical_dx().mul_by_s();
            assert_eq!(next, hermite(m + 1).poly);
        }
    }

    #[test]
    fn substitution_operator_identity() {
        // H_n(x + sD, s) . 1 = x^n, substituting the operator via the recursion
        let a = OpChain::Sum(vec![
            (Rational::one(), OpChain::MulByX),
            (Rational::one(), OpChain::Compose(vec![OpChain::MulByS, OpChain::ClassicalDx])),
        ]);
        let mut prev = Poly2::one();
        let mut cur = a.apply(&prev).unwrap();
        assert_eq!(cur, Poly2::x());
        for n in 1..15u32 {
            let next = &a.apply(&cur).unwrap() - &prev.mul_by_s().scale(&rat_i(n as i64));
            assert_eq!(next, Poly2::monomial(n + 1, 0, Rational::one()), "n={}", n + 1);
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn inversion_examples() {
        let (d2, c2) = classical_inversion(2);
        assert_eq!(d2, vec![Rational::one(), Rational::one()]);
        assert_eq!(d2, c2);
        let (d4, c4) = classical_inversion(4);
        assert_eq!(d4, vec![Rational::one(), rat_i(6), rat_i(3)]);
        assert_eq!(d4, c4);
        let (d1, c1) = classical_inversion(1);
        assert_eq!(d1, vec![Rational::one()]);
        assert_eq!(d1, c1);
        for n in 0..=20 {
            let (solved, closed) = classical_inversion(n);
            assert_eq!(solved, closed, "n={n}");
        }
    }

    #[test]
    fn t_poly_examples() {
        let alpha = rat(2, 3);
        let beta = rat(3, 2);
        // T_2 = 1 + alpha beta^2 / 2
        let ab2 = &alpha * &beta * &beta;
        assert_eq!(t_poly(2, &alpha, &beta), Rational::one() + &ab2 / rat_i(2));
        assert_eq!(t_poly(0, &alpha, &beta), Rational::one());
        assert_eq!(t_poly_2f0(1, &alpha, &beta).unwrap(), t_poly(2, &alpha, &beta));
        assert!(t_poly_2f0(1, &Rational::zero(), &beta).is_err());
        for n in 0..=7u32 {
            assert_eq!(t_poly_2f0(n, &alpha, &beta).unwrap(), t_poly(2 * n, &alpha, &beta));
        }
    }

    #[test]
    fn t_operator_reconstructs_monomial() {
        // T_n(s, D) H_n(x, s) = x^n
        for n in 0..=15u32 {
            let h = hermite(n).poly;
            let mut acc = Poly2::zero();
            for k in 0..=n / 2 {
                let mut d = h.clone();
                for _ in 0..2 * k {
                    d = d.classical_dx();
                }
                for _ in 0..k {
                    d = d.mul_by_s();
                }
                acc = &acc + &d.scale(&double_factorial_even(k).recip());
            }
            assert_eq!(acc, Poly2::monomial(n, 0, Rational::one()), "n={n}");
        }
    }

    #[test]
    fn parity_identity() {
        // sum over even k of 1/((n-k)! k!) equals the odd-k sum, n >= 1
        for n in 1..=50u32 {
            let mut even = Rational::zero();
            let mut odd = Rational::zero();
            for k in 0..=n {
                let t = (factorial(n - k) * factorial(k)).recip();
                if k % 2 == 0 {
                    even += t;
                } else {
                    odd += t;
                }
            }
            assert_eq!(even, odd, "n={n}");
        }
    }

    #[test]
    fn t_limit_matches_exponential() {
        let v = t_poly_limit(0.7, 0.9, 200);
        let expect = (0.7 * 0.81f64 / 2.0).exp();
        assert!((v - expect).abs() < 1e-12);
    }
}
