//! Doubly indexed family H_{n,p}(x, s|q): explicit-sum and operator-series
//! constructions, generating functions, the generalized heat equation (with
//! the corrected s-derivative base q^-p), recursion, the p-th order
//! difference equation, and the q -> 1 limits (Gould-Hopper and
//! Habibullah-Shakoor polynomials).

use crate::polyring::Poly2;
use crate::qcore::{
    phi_complex_standard, q_exp_coeff, q_factorial, q_number, q_pstep_factorial, rat_i, rat_pow,
    to_f64, QExpKind, QParam, Rational, SeriesTruncation,
};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

/// A doubly indexed Hermite polynomial: monic of x-degree n, with the p = 2
/// column coinciding with the single-index q-family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPHermite {
    pub n: u32,
    pub p: u32,
    pub q: QParam,
    pub poly: Poly2,
}

fn explicit_sum(n: u32, p: u32, q: &Rational) -> Result<Poly2> {
    // {n}_q! sum_k (-1)^k q^{p*C(k,2)} s^k x^{n-pk} / ({pk}_q!! {n-pk}_q!)
    let nfac = q_factorial(n as i64, q)?;
    let mut poly = Poly2::zero();
    for k in 0..=(n / p) as i64 {
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        let c = sign * rat_pow(q, p as i64 * k * (k - 1) / 2)? * &nfac
            / (q_pstep_factorial(p as i64, k, q)? * q_factorial(n as i64 - p as i64 * k, q)?);
        poly = &poly + &Poly2::monomial(n - p as u32 * k as u32, k as u32, c);
    }
    Ok(poly)
}

fn operator_series(n: u32, p: u32, q: &Rational) -> Result<Poly2> {
    // E_{q^p}(-s (D_x^q)^p / {p}_q) . x^n, a finite sum since (D_x^q)^{pk}
    // kills x^n once pk > n
    let pq = q_number(p as i64, q)?;
    let mut poly = Poly2::zero();
    for k in 0..=(n / p) as i64 {
        // (D_x^q)^{pk} x^n = {n}_q!/{n-pk}_q! x^{n-pk}
        let drop = q_factorial(n as i64, q)? / q_factorial(n as i64 - p as i64 * k, q)?;
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        let c = q_exp_coeff(QExpKind::BigEQp, k, q, p as i64)?
            * sign
            * rat_pow(&pq, -k)?
            * drop;
        poly = &poly + &Poly2::monomial(n - p as u32 * k as u32, k as u32, c);
    }
    Ok(poly)
}

/// H_{n,p}(x, s|q), built from the explicit sum and cross-checked against
/// the operator-series construction E_{q^p}(-s(D_x^q)^p/{p}_q) . x^n; the
/// two must agree exactly.
pub fn qp_hermite(n: u32, p: u32, q: &QParam) -> Result<QPHermite> {
    if p == 0 {
        return Err(Error::Domain("p must be >= 1".into()));
    }
    let poly = explicit_sum(n, p, q.value())?;
    let series = operator_series(n, p, q.value())?;
    if poly != series {
        return Err(Error::Domain(format!(
            "explicit sum and operator series disagree at n={n} p={p}"
        )));
    }
    Ok(QPHermite { n, p, q: q.clone(), poly })
}

/// (D_x^q)^p H_{n,p} + {p}_q D_s H_{n,p} with the s-derivative taken as a
/// Jackson derivative of the given base; zero iff the generalized heat
/// equation holds at that base. The base that makes it hold for all n is
/// q^-p; the printed base q fails from n = p^2 on.
pub fn qp_heat_residual(n: u32, p: u32, q: &QParam, s_base: &Rational) -> Result<Poly2> {
    let h = qp_hermite(n, p, q)?.poly;
    let mut dxp = h.clone();
    for _ in 0..p {
        dxp = dxp.jackson_dx(q.value())?;
    }
    let pq = q_number(p as i64, q.value())?;
    Ok(&dxp + &h.jackson_ds(s_base)?.scale(&pq))
}

/// The default (derived) s-derivative base q^-p for the heat equation.
pub fn heat_default_base(p: u32, q: &QParam) -> Result<Rational> {
    rat_pow(q.value(), -(p as i64))
}

/// Residual of the recursion
/// H_{n+1,p} = x H_{n,p} - s q^{n-p+1} {n}_q {n-1}_q ... {n-p+2}_q H_{n-p+1,p}.
/// For n <= p-2 the braced product contains {0}_q = 0, so the correction
/// term drops out.
pub fn qp_recursion_residual(n: u32, p: u32, q: &QParam) -> Result<Poly2> {
    let qv = q.value();
    let hp = qp_hermite(n + 1, p, q)?.poly;
    let hn = qp_hermite(n, p, q)?.poly;
    let mut res = &hp - &hn.mul_by_x();
    if n + 1 >= p {
        let mut braced = rat_pow(qv, n as i64 - p as i64 + 1)?;
        for j in (n as i64 - p as i64 + 2)..=n as i64 {
            braced *= q_number(j, qv)?;
        }
        let hm = qp_hermite(n + 1 - p, p, q)?.poly;
        res = &res + &hm.mul_by_s().scale(&braced);
    }
    Ok(res)
}

/// Residual of the p-th order difference equation
/// (s (D_x^q)^p - q^{p-n} x D_x^q + q^{p-n} {n}_q) H_{n,p} = 0.
pub fn qp_difference_residual(n: u32, p: u32, q: &QParam) -> Result<Poly2> {
    let qv = q.value();
    let h = qp_hermite(n, p, q)?.poly;
    let mut dxp = h.clone();
    for _ in 0..p {
        dxp = dxp.jackson_dx(qv)?;
    }
    let qpn = rat_pow(qv, p as i64 - n as i64)?;
    let term1 = dxp.mul_by_s();
    let term2 = h.jackson_dx(qv)?.mul_by_x().scale(&qpn);
    let term3 = h.scale(&(qpn.clone() * q_number(n as i64, qv)?));
    Ok(&(&term1 - &term2) + &term3)
}

/// Residual of the lowering rule D_x^q H_{n,p} = {n}_q H_{n-1,p}.
pub fn qp_lowering_residual(n: u32, p: u32, q: &QParam) -> Result<Poly2> {
    assert!(n >= 1);
    let lhs = qp_hermite(n, p, q)?.poly.jackson_dx(q.value())?;
    let rhs = qp_hermite(n - 1, p, q)?.poly.scale(&q_number(n as i64, q.value())?);
    Ok(&lhs - &rhs)
}

/// Coefficient-wise check of e_q(tx) E_{q^p}(-s t^p/{p}_q) = sum H_{n,p} t^n/{n}_q!
/// at exact (x0, s0): returns the first n <= n_max with a nonzero
/// discrepancy, together with that discrepancy.
pub fn qp_gf_check(
    p: u32,
    q: &QParam,
    x0: &Rational,
    s0: &Rational,
    n_max: u32,
) -> Result<Option<(u32, Rational)>> {
    let qv = q.value();
    let pq = q_number(p as i64, qv)?;
    for n in 0..=n_max {
        // Cauchy product: coefficient of t^n picks x0^{n-pk}/{n-pk}_q! from
        // e_q and the k-th E_{q^p} coefficient of (-s0/{p}_q)^k t^{pk}
        let mut lhs = Rational::zero();
        for k in 0..=(n / p) as i64 {
            let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
            lhs += rat_pow(x0, n as i64 - p as i64 * k)?
                / q_factorial(n as i64 - p as i64 * k, qv)?
                * q_exp_coeff(QExpKind::BigEQp, k, qv, p as i64)?
                * sign
                * rat_pow(s0, k)?
                * rat_pow(&pq, -k)?;
        }
        let rhs = qp_hermite(n, p, q)?.poly.eval_exact(x0, s0) / q_factorial(n as i64, qv)?;
        let diff = lhs - rhs;
        if !diff.is_zero() {
            return Ok(Some((n, diff)));
        }
    }
    Ok(None)
}

/// Numeric two-sided evaluation of the Pochhammer generating function
/// sum_n {c}_{n,q} H_{n,p}(x,s) t^n/{n}_q!
///   = (xt;q)_c^{-1} pPhi_p(q^c..q^{c+p-1}; xtq^c..xtq^{c+p-1} | q^p; st^p/(1-q)^{p-1})
/// (standard series convention)
/// for positive integer c, |q| < 1, |x0 t0| < 1. Returns (lhs, rhs).
pub fn qp_pochhammer_gf(
    c: u32,
    p: u32,
    q: &QParam,
    x0: &Rational,
    s0: &Rational,
    t0: &Rational,
    trunc: &SeriesTruncation,
) -> Result<(f64, f64)> {
    if c == 0 {
        return Err(Error::Domain("c must be a positive integer".into()));
    }
    if q.value().abs() >= Rational::one() {
        return Err(Error::Domain("pochhammer generating function needs |q| < 1".into()));
    }
    let xt = x0 * t0;
    if xt.abs() >= Rational::one() {
        return Err(Error::Domain("pochhammer generating function needs |x*t| < 1".into()));
    }
    let qv = q.value();

    // left side: truncated series with a tail stop on the term size
    let mut lhs = 0.0f64;
    let mut small = 0usize;
    for n in 0..trunc.max_terms as u32 {
        let brace = crate::qcore::q_brace_pochhammer(c as i64, n as i64, qv)?;
        let term = to_f64(
            &(brace * qp_hermite(n, p, q)?.poly.eval_exact(x0, s0) * rat_pow(t0, n as i64)?
                / q_factorial(n as i64, qv)?),
        );
        lhs += term;
        if term.abs() < trunc.tail_tolerance {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }

    // right side: finite q-shifted factorial times a pPhi_p series
    let qf = q.to_f64();
    let xtf = to_f64(&xt);
    let mut prefactor = 1.0f64;
    for j in 0..c {
        prefactor *= 1.0 - xtf * qf.powi(j as i32);
    }
    let upper: Vec<Complex64> = (0..p)
        .map(|j| Complex64::new(qf.powi((c + j) as i32), 0.0))
        .collect();
    let lower: Vec<Complex64> = (0..p)
        .map(|j| Complex64::new(xtf * qf.powi((c + j) as i32), 0.0))
        .collect();
    let z = to_f64(s0) * to_f64(t0).powi(p as i32) / (1.0 - qf).powi(p as i32 - 1);
    // p upper and p lower parameters: the standard convention supplies the
    // (-1)^k (q^p)^{C(k,2)} factor the explicit sum carries
    let phi = phi_complex_standard(
        &upper,
        &lower,
        Complex64::new(qf.powi(p as i32), 0.0),
        Complex64::new(z, 0.0),
        trunc,
    )?;
    Ok((lhs, phi.re / prefactor))
}

/// Gould-Hopper polynomial g_n^p(x,y) = n! sum_k y^k x^{n-pk}/(k!(n-pk)!),
/// evaluated exactly.
pub fn gould_hopper(n: u32, p: u32, x0: &Rational, y0: &Rational) -> Result<Rational> {
    if p == 0 {
        return Err(Error::Domain("p must be >= 1".into()));
    }
    let one = Rational::one();
    let nfac = q_factorial(n as i64, &one)?;
    let mut sum = Rational::zero();
    for k in 0..=(n / p) as i64 {
        sum += &nfac * rat_pow(y0, k)? * rat_pow(x0, n as i64 - p as i64 * k)?
            / (q_factorial(k, &one)? * q_factorial(n as i64 - p as i64 * k, &one)?);
    }
    Ok(sum)
}

/// Habibullah-Shakoor polynomial S_{p,n}(x) = n! sum_k (-1)^k (px)^{n-pk}/(k!(n-pk)!).
pub fn habibullah(n: u32, p: u32, x0: &Rational) -> Result<Rational> {
    if p == 0 {
        return Err(Error::Domain("p must be >= 1".into()));
    }
    let one = Rational::one();
    let px = rat_i(p as i64) * x0;
    let nfac = q_factorial(n as i64, &one)?;
    let mut sum = Rational::zero();
    for k in 0..=(n / p) as i64 {
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        sum += sign * &nfac * rat_pow(&px, n as i64 - p as i64 * k)?
            / (q_factorial(k, &one)? * q_factorial(n as i64 - p as i64 * k, &one)?);
    }
    Ok(sum)
}

/// Exact check of the classical limits H_{n,p}(x,-py|1) = g_n^p(x,y) and
/// H_{n,p}(px,p|1) = S_{p,n}(x) at a rational sample point; returns the
/// first failing n, if any.
pub fn classical_limit_check(n_max: u32, p: u32, x0: &Rational, y0: &Rational) -> Result<Option<u32>> {
    let q1 = QParam::classical();
    for n in 0..=n_max {
        let h = qp_hermite(n, p, &q1)?.poly;
        let s_gh = -rat_i(p as i64) * y0;
        if h.eval_exact(x0, &s_gh) != gould_hopper(n, p, x0, y0)? {
            return Ok(Some(n));
        }
        let px = rat_i(p as i64) * x0;
        if h.eval_exact(&px, &rat_i(p as i64)) != habibullah(n, p, x0)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
