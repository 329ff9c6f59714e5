//! The inverse-base family H_n(x, s|q^-1): the coefficients c_{n,k}(q),
//! the scaling law to c_{n,k}(q^-1), the polynomial recursion with the
//! s-dilation, the lowering rule, and the epsilon-operator factorization.
//!
//! c_{n,k}(q^-1) is always computed twice -- closed form at 1/q and the
//! scaling-law product -- and the two must agree exactly.

use crate::polyring::Poly2;
use crate::qcore::{q_double_even, q_factorial, q_number, rat_pow, QParam, Rational};
use crate::{Error, Result};
use num_traits::{One, Zero};

/// c_{n,k}(q) = (-1)^k q^{k(k-1)} {n}_q! / ({n-2k}_q! {2k}_q!!); zero for
/// 2k > n or negative indices.
pub fn c_coeff(n: i64, k: i64, q: &QParam) -> Result<Rational> {
    if k < 0 || n < 0 || 2 * k > n {
        return Ok(Rational::zero());
    }
    let qv = q.value();
    let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * rat_pow(qv, k * (k - 1))? * q_factorial(n, qv)?
        / (q_factorial(n - 2 * k, qv)? * q_double_even(k, qv)?))
}

/// c_{n,k}(q^-1), computed BOTH as the closed form at 1/q and as the
/// scaling law q^{k(k+3-2n)} c_{n,k}(q); errors if the routes disagree.
pub fn c_coeff_inverse(n: i64, k: i64, q: &QParam) -> Result<Rational> {
    let direct = c_coeff(n, k, &q.inverse())?;
    let scaled = rat_pow(q.value(), k * (k + 3 - 2 * n))? * c_coeff(n, k, q)?;
    if direct != scaled {
        return Err(Error::Domain(format!(
            "scaling law mismatch at n={n} k={k}: direct 1/q evaluation != q^(k(k+3-2n)) route"
        )));
    }
    Ok(direct)
}

/// H_n(x, s|q^-1) = sum_k c_{n,k}(q^-1) s^k x^{n-2k}, built through the
/// coefficient route (which cross-checks the scaling law internally).
pub fn q_inv_hermite(n: u32, q: &QParam) -> Result<Poly2> {
    let mut poly = Poly2::zero();
    for k in 0..=(n / 2) as i64 {
        let c = c_coeff_inverse(n as i64, k, q)?;
        poly = &poly + &Poly2::monomial(n - 2 * k as u32, k as u32, c);
    }
    Ok(poly)
}

/// Residual of the polynomial recursion
/// H_{n+1}(x,s|q^-1) - x H_n(x,sq^-2|q^-1) + s q^{1-n} {n}_q H_{n-1}(x,sq^-2|q^-1).
pub fn recursion_residual(n: u32, q: &QParam) -> Result<Poly2> {
    assert!(n >= 1);
    let qv = q.value();
    let dil = rat_pow(qv, -2)?;
    let hn = q_inv_hermite(n, q)?.dilate_s(&dil)?;
    let hm = q_inv_hermite(n - 1, q)?.dilate_s(&dil)?;
    let hp = q_inv_hermite(n + 1, q)?;
    let c = rat_pow(qv, 1 - n as i64)? * q_number(n as i64, qv)?;
    Ok(&(&hp - &hn.mul_by_x()) + &hm.mul_by_s().scale(&c))
}

/// Residual of the lowering rule
/// D_x^q H_n(x,s|q^-1) - {n}_q H_{n-1}(x,sq^-2|q^-1).
pub fn lowering_residual(n: u32, q: &QParam) -> Result<Poly2> {
    assert!(n >= 1);
    let qv = q.value();
    let lhs = q_inv_hermite(n, q)?.jackson_dx(qv)?;
    let rhs = q_inv_hermite(n - 1, q)?
        .dilate_s(&rat_pow(qv, -2)?)?
        .scale(&q_number(n as i64, qv)?);
    Ok(&lhs - &rhs)
}

/// prod_{k=1}^n (x eps^-2 - s q^{k+1-n} D_x^q) . 1, rightmost factor (k = n)
/// applied first; eps^-2 dilates s by q^-2. Returns the factorization
/// together with the first n (if any) where it stops matching
/// [`q_inv_hermite`], so the printed index convention is checked, not
/// assumed.
pub fn factorization_check(n_max: u32, q: &QParam) -> Result<Option<u32>> {
    let qv = q.value();
    let dil = rat_pow(qv, -2)?;
    for n in 1..=n_max {
        // the factor exponents depend on n, so the product is rebuilt per n
        let mut acc = Poly2::one();
        for k in (1..=n as i64).rev() {
            let coef = rat_pow(qv, k + 1 - n as i64)?;
            acc = &acc.dilate_s(&dil)?.mul_by_x() - &acc.jackson_dx(qv)?.mul_by_s().scale(&coef);
        }
        if acc != q_inv_hermite(n, q)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{certifying_q_samples, rat, rat_i};
    use crate::qhermite::q_hermite_explicit;

    fn qp(a: i64, b: i64) -> QParam {
        QParam::new(rat(a, b)).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        for q in certifying_q_samples(6) {
            let qq = QParam::new(q.clone()).unwrap();
            // c_{2,1}(q) = -1 for all q
            assert_eq!(c_coeff(2, 1, &qq).unwrap(), -Rational::one());
            // c_{n,0}(q) = 1
            for n in 0..=10 {
                assert_eq!(c_coeff(n, 0, &qq).unwrap(), Rational::one());
            }
            // c_{3,1}(q^-1) = -q^-2 {3}_q
            let expect = -rat_pow(&q, -2).unwrap() * q_number(3, &q).unwrap();
            assert_eq!(c_coeff_inverse(3, 1, &qq).unwrap(), expect);
            // out-of-range convention
            assert_eq!(c_coeff(3, 2, &qq).unwrap(), Rational::zero());
        }
    }

    #[test]
    fn coefficient_recursion_at_q() {
        // c_{n+1,k}(q) = c_{n,k}(q) - q^{n-1} {n}_q c_{n-1,k-1}(q)
        let q = qp(2, 7);
        for n in 1..=20i64 {
            for k in 0..=(n + 1) / 2 {
                let lhs = c_coeff(n + 1, k, &q).unwrap();
                let rhs = c_coeff(n, k, &q).unwrap()
                    - rat_pow(q.value(), n - 1).unwrap()
                        * q_number(n, q.value()).unwrap()
                        * c_coeff(n - 1, k - 1, &q).unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn scaling_law() {
        for q in certifying_q_samples(8) {
            let qq = QParam::new(q).unwrap();
            for n in 0..=25i64 {
                for k in 0..=n / 2 {
                    // c_coeff_inverse verifies both routes agree
                    c_coeff_inverse(n, k, &qq).unwrap();
                }
            }
        }
    }

    #[test]
    fn coefficient_recursion_at_q_inverse() {
        // c_{n+1,k}(q^-1) = q^{-2k} c_{n,k}(q^-1) - q^{3-n-2k} {n}_q c_{n-1,k-1}(q^-1)
        for q in certifying_q_samples(5) {
            let qq = QParam::new(q.clone()).unwrap();
            for n in 1..=20i64 {
                for k in 0..=(n + 1) / 2 {
                    let lhs = c_coeff_inverse(n + 1, k, &qq).unwrap();
                    let rhs = rat_pow(&q, -2 * k).unwrap() * c_coeff_inverse(n, k, &qq).unwrap()
                        - rat_pow(&q, 3 - n - 2 * k).unwrap()
                            * q_number(n, &q).unwrap()
                            * c_coeff_inverse(n - 1, k - 1, &qq).unwrap();
                    assert_eq!(lhs, rhs, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn polynomial_examples() {
        let q = qp(1, 2);
        assert_eq!(q_inv_hermite(0, &q).unwrap(), Poly2::one());
        assert_eq!(
            q_inv_hermite(2, &q).unwrap(),
            &Poly2::monomial(2, 0, Rational::one()) - &Poly2::s()
        );
        // n = 3: x^3 - q^-2 {3}_q s x
        let expect = &Poly2::monomial(3, 0, Rational::one())
            - &Poly2::monomial(1, 1, rat_i(4) * q_number(3, q.value()).unwrap());
        assert_eq!(q_inv_hermite(3, &q).unwrap(), expect);
    }

    #[test]
    fn equals_explicit_at_inverse_base() {
        for q in certifying_q_samples(6) {
            let qq = QParam::new(q).unwrap();
            for n in 0..=15u32 {
                assert_eq!(
                    q_inv_hermite(n, &qq).unwrap(),
                    q_hermite_explicit(n, &qq.inverse()).unwrap().poly,
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn recursion_and_lowering() {
        for q in certifying_q_samples(5) {
            let qq = QParam::new(q).unwrap();
            for n in 1..=20u32 {
                assert!(recursion_residual(n, &qq).unwrap().is_zero(), "rec n={n}");
                assert!(lowering_residual(n, &qq).unwrap().is_zero(), "low n={n}");
            }
        }
    }

    #[test]
    fn factorization_matches_printed_exponents() {
        for q in certifying_q_samples(5) {
            let qq = QParam::new(q).unwrap();
            assert_eq!(factorization_check(12, &qq).unwrap(), None);
        }
    }
}
