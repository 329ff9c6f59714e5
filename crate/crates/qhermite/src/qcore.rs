//! Exact q-arithmetic primitives: q-numbers, q-factorials, Pochhammer
//! symbols, q-binomials, Hahn q-addition powers, truncated q-exponential
//! series and a generic basic hypergeometric evaluator.
//!
//! Everything taking rational inputs is exact; the `Complex64` evaluators
//! are the only place floating point enters.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision exact rational scalar; the coefficient field.
pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn rat_i(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// `base^exp` for possibly negative `exp`; errors on `0^negative`.
pub fn rat_pow(base: &Rational, exp: i64) -> Result<Rational> {
    if base.is_zero() {
        return match exp {
            0 => Ok(Rational::one()),
            e if e > 0 => Ok(Rational::zero()),
            _ => Err(Error::Domain("zero base with negative exponent".into())),
        };
    }
    let mut result = Rational::one();
    let mut b = if exp >= 0 { base.clone() } else { base.recip() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    Ok(result)
}

/// Parse `"a/b"` or `"a"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Domain(format!("bad rational '{text}': {e}")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::Domain(format!("bad rational '{text}': zero denominator")));
            }
            Ok(Rational::new(parse_int(num)?, d))
        }
        None => Ok(Rational::from(parse_int(text)?)),
    }
}

/// Render as `"num/den"` (or `"num"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Validated rational deformation parameter q. Must be nonzero; q = 1 is
/// accepted and stands for the classical limit wherever the defining
/// sum/product form stays finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParam(Rational);

impl QParam {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Domain("q must be nonzero".into()));
        }
        Ok(QParam(value))
    }

    /// The classical limit q = 1.
    pub fn classical() -> Self {
        QParam(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// 1/q; always valid since q is nonzero.
    pub fn inverse(&self) -> Self {
        QParam(self.0.recip())
    }

    pub fn is_classical(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }
}

/// Truncation control for the q-exponential and phi-series evaluators.
#[derive(Debug, Clone)]
pub struct SeriesTruncation {
    pub max_terms: usize,
    pub tail_tolerance: f64,
}

impl SeriesTruncation {
    pub fn new(max_terms: usize, tail_tolerance: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be >= 1".into()));
        }
        if tail_tolerance < 0.0 {
            return Err(Error::Domain("tail_tolerance must be >= 0".into()));
        }
        Ok(SeriesTruncation { max_terms, tail_tolerance })
    }
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation { max_terms: 64, tail_tolerance: 1e-14 }
    }
}

fn check_nonneg(n: i64, what: &str) -> Result<u32> {
    if n < 0 {
        return Err(Error::Domain(format!("{what} must be nonnegative, got {n}")));
    }
    Ok(n as u32)
}

/// q-deformed number {n}_q = sum_{k=0}^{n-1} q^k. {n}_1 = n.
pub fn q_number(n: i64, q: &Rational) -> Result<Rational> {
    let n = check_nonneg(n, "n")?;
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    for _ in 0..n {
        acc += &pw;
        pw *= q;
    }
    Ok(acc)
}

/// {n}_q! = prod_{k=1}^n {k}_q, with {0}_q! = 1.
pub fn q_factorial(n: i64, q: &Rational) -> Result<Rational> {
    let n = check_nonneg(n, "n")?;
    let mut acc = Rational::one();
    let mut braced = Rational::zero();
    let mut pw = Rational::one();
    for _ in 1..=n {
        braced += &pw;
        pw *= q;
        acc *= &braced;
    }
    Ok(acc)
}

/// {2n}_q!! = prod_{k=1}^n {2k}_q, with {0}_q!! = 1. The argument is the
/// count n, not the even number 2n.
pub fn q_double_even(n: i64, q: &Rational) -> Result<Rational> {
    let n = check_nonneg(n, "n")?;
    let mut acc = Rational::one();
    for k in 1..=n as i64 {
        acc *= q_number(2 * k, q)?;
    }
    Ok(acc)
}

/// {2n-1}_q!! = prod_{k=1}^n {2k-1}_q, with {-1}_q!! = 1 (n = 0).
pub fn q_double_odd(n: i64, q: &Rational) -> Result<Rational> {
    let n = check_nonneg(n, "n")?;
    let mut acc = Rational::one();
    for k in 1..=n as i64 {
        acc *= q_number(2 * k - 1, q)?;
    }
    Ok(acc)
}

/// {pk}_q!! = prod_{l=1}^k {pl}_q, the p-step double factorial used by the
/// doubly indexed family.
pub fn q_pstep_factorial(p: i64, k: i64, q: &Rational) -> Result<Rational> {
    let k = check_nonneg(k, "k")?;
    if p < 1 {
        return Err(Error::Domain(format!("p must be >= 1, got {p}")));
    }
    let mut acc = Rational::one();
    for l in 1..=k as i64 {
        acc *= q_number(p * l, q)?;
    }
    Ok(acc)
}

/// Braced q-Pochhammer {c}_{n,q} = prod_{k=0}^{n-1} {c+k}_q for integer c >= 1.
pub fn q_brace_pochhammer(c: i64, n: i64, q: &Rational) -> Result<Rational> {
    if c < 1 {
        return Err(Error::Domain(format!("c must be >= 1, got {c}")));
    }
    let n = check_nonneg(n, "n")?;
    let mut acc = Rational::one();
    for k in 0..n as i64 {
        acc *= q_number(c + k, q)?;
    }
    Ok(acc)
}

/// q-shifted factorial (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), (a;q)_0 = 1.
pub fn q_shifted(a: &Rational, n: i64, q: &Rational) -> Result<Rational> {
    let n = check_nonneg(n, "n")?;
    let mut acc = Rational::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &aq;
        aq *= q;
    }
    Ok(acc)
}

/// (q;p)-shifted factorial (a;q)_{pk} = (a, aq, ..., aq^{p-1}; q^p)_k.
pub fn q_shifted_p_block(a: &Rational, p: i64, k: i64, q: &Rational) -> Result<Rational> {
    if p < 1 {
        return Err(Error::Domain(format!("p must be >= 1, got {p}")));
    }
    let k = check_nonneg(k, "k")?;
    let qp = rat_pow(q, p)?;
    let mut acc = Rational::one();
    let mut shift = Rational::one();
    for _ in 0..p {
        acc *= q_shifted(&(a * &shift), k as i64, &qp)?;
        shift *= q;
    }
    Ok(acc)
}

/// q-binomial coefficient {n choose k}_q; zero for k outside 0..=n.
pub fn q_binomial(n: i64, k: i64, q: &Rational) -> Result<Rational> {
    if k < 0 || n < 0 || k > n {
        return Ok(Rational::zero());
    }
    Ok(q_factorial(n, q)? / (q_factorial(n - k, q)? * q_factorial(k, q)?))
}

/// The three Hahn-addition power expansions handled by [`hahn_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HahnVariant {
    /// (x (+)_q y)^n = prod (x + q^k y).
    Plus,
    /// (x (-)_q y)^n = (x (+)_q (-y))^n.
    Minus,
    /// (a (-)_{q,q^2} b)^n, the mixed-base subtraction from the generating
    /// function display.
    MinusQQ2,
}

/// Coefficients of a^{n-k} b^k in the chosen Hahn q-addition power, for
/// k = 0..=n.
pub fn hahn_power(n: i64, q: &Rational, variant: HahnVariant) -> Result<Vec<Rational>> {
    let n = check_nonneg(n, "n")? as i64;
    let mut out = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let c = match variant {
            HahnVariant::Plus | HahnVariant::Minus => {
                let sign = if variant == HahnVariant::Minus && k % 2 == 1 { -1 } else { 1 };
                rat_i(sign) * q_binomial(n, k, q)? * rat_pow(q, k * (k - 1) / 2)?
            }
            HahnVariant::MinusQQ2 => {
                let q2 = q * q;
                let sign = if k % 2 == 1 { -1 } else { 1 };
                rat_i(sign)
                    * rat_pow(q, k * (k - 1))?
                    * q_factorial(n, q)?
                    / (q_factorial(n - k, q)? * q_factorial(k, &q2)?)
            }
        };
        out.push(c);
    }
    Ok(out)
}

/// Truncated series kinds for [`q_exponential_partial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QExpKind {
    EQ,
    BigEQ,
    /// E_{q^p}: base q^p with extra factor q^{p*C(k,2)}.
    BigEQp,
    CosQ,
    SinQ,
}

/// Exact coefficient of z^k in the chosen q-exponential series (EQ, BigEQ,
/// BigEQp only; the trigonometric kinds are assembled from EQ).
pub fn q_exp_coeff(kind: QExpKind, k: i64, q: &Rational, p: i64) -> Result<Rational> {
    match kind {
        QExpKind::EQ => Ok(q_factorial(k, q)?.recip()),
        QExpKind::BigEQ => Ok(rat_pow(q, k * (k - 1) / 2)? / q_factorial(k, q)?),
        QExpKind::BigEQp => {
            if p < 1 {
                return Err(Error::Domain(format!("p must be >= 1, got {p}")));
            }
            let qp = rat_pow(q, p)?;
            Ok(rat_pow(q, p * k * (k - 1) / 2)? / q_factorial(k, &qp)?)
        }
        _ => Err(Error::Domain("no single-coefficient form for cos_q/sin_q".into())),
    }
}

/// Truncated Maclaurin sum of the chosen series at a complex point.
/// Detects term growth over the truncation window and reports divergence.
pub fn q_exponential_partial(
    kind: QExpKind,
    z: Complex64,
    q: &QParam,
    p: i64,
    trunc: &SeriesTruncation,
) -> Result<Complex64> {
    let term_at = |k: usize| -> Result<Complex64> {
        let k = k as i64;
        Ok(match kind {
            QExpKind::EQ => z.powu(k as u32) * to_f64(&q_exp_coeff(QExpKind::EQ, k, q.value(), 1)?),
            QExpKind::BigEQ => z.powu(k as u32) * to_f64(&q_exp_coeff(QExpKind::BigEQ, k, q.value(), 1)?),
            QExpKind::BigEQp => z.powu(k as u32) * to_f64(&q_exp_coeff(QExpKind::BigEQp, k, q.value(), p)?),
            QExpKind::CosQ => {
                let c = to_f64(&q_factorial(2 * k, q.value())?);
                z.powu(2 * k as u32) * ((-1f64).powi(k as i32) / c)
            }
            QExpKind::SinQ => {
                let c = to_f64(&q_factorial(2 * k + 1, q.value())?);
                z.powu(2 * k as u32 + 1) * ((-1f64).powi(k as i32) / c)
            }
        })
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_norm = f64::INFINITY;
    let mut growing = 0usize;
    let mut last = Complex64::new(0.0, 0.0);
    for k in 0..trunc.max_terms {
        last = term_at(k)?;
        sum += last;
        let nrm = last.norm();
        if nrm > prev_norm {
            growing += 1;
        } else {
            growing = 0;
        }
        prev_norm = nrm;
        if nrm == 0.0 || (nrm < trunc.tail_tolerance && k > 2) {
            return Ok(sum);
        }
    }
    if growing >= 4 && last.norm() > trunc.tail_tolerance {
        return Err(Error::Numeric(format!(
            "series diverges over truncation window (last term norm {})",
            last.norm()
        )));
    }
    Ok(sum)
}

/// Exact basic hypergeometric series r_phi_s with the bare term-ratio
/// convention: sum_m prod(a_i;q)_m z^m / ((q;q)_m prod(b_j;q)_m). No
/// (-1)^m q^C(m,2) compensation factor is inserted for r = s+1 mismatches;
/// call sites match the displayed sums term by term.
///
/// Terminating series (some (a_i;q)_m hitting zero) stop early; otherwise
/// exactly `trunc.max_terms` terms are summed.
pub fn phi_exact(
    upper: &[Rational],
    lower: &[Rational],
    q: &Rational,
    z: &Rational,
    trunc: &SeriesTruncation,
) -> Result<Rational> {
    if q.is_one() {
        return Err(Error::Domain("phi_exact requires q != 1 (use classical_hyper)".into()));
    }
    let mut sum = Rational::one();
    let mut term = Rational::one();
    // running q^m for the shifted-factorial increments
    let mut qm = Rational::one();
    for m in 0..trunc.max_terms as i64 {
        // ratio term_{m+1}/term_m = prod(1 - a_i q^m) z / ((1 - q^{m+1}) prod(1 - b_j q^m))
        let mut num = z.clone();
        for a in upper {
            num *= Rational::one() - a * &qm;
        }
        let mut den = Rational::one() - q * &qm;
        for b in lower {
            den *= Rational::one() - b * &qm;
        }
        if den.is_zero() {
            return Err(Error::Domain(format!("phi series term {} has vanishing denominator", m + 1)));
        }
        term *= num / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
        qm *= q;
    }
    Ok(sum)
}

/// Exact basic hypergeometric series in the standard convention: for
/// r != s+1 each term additionally carries [(-1)^m q^{C(m,2)}]^{s+1-r}.
/// This is what the compact 2phi0 / pphi0 / pphip displays expand to when
/// they are matched against the explicit polynomial sums.
pub fn phi_exact_standard(
    upper: &[Rational],
    lower: &[Rational],
    q: &Rational,
    z: &Rational,
    trunc: &SeriesTruncation,
) -> Result<Rational> {
    if q.is_one() {
        return Err(Error::Domain("phi series requires q != 1".into()));
    }
    let excess = upper.len() as i64 - lower.len() as i64 - 1;
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut qm = Rational::one();
    for m in 0..trunc.max_terms as i64 {
        let mut num = z.clone();
        for a in upper {
            num *= Rational::one() - a * &qm;
        }
        let mut den = Rational::one() - q * &qm;
        for b in lower {
            den *= Rational::one() - b * &qm;
        }
        if den.is_zero() {
            return Err(Error::Domain(format!("phi series term {} has vanishing denominator", m + 1)));
        }
        if excess != 0 {
            // ratio contribution of [(-1)^m q^C(m,2)]^{-excess}
            num *= rat_pow(&(-qm.clone()), -excess)?;
        }
        term *= num / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
        qm *= q;
    }
    Ok(sum)
}

/// Numeric basic hypergeometric series, same convention as [`phi_exact`].
pub fn phi_complex(
    upper: &[Complex64],
    lower: &[Complex64],
    q: Complex64,
    z: Complex64,
    trunc: &SeriesTruncation,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut sum = one;
    let mut term = one;
    let mut qm = one;
    let mut prev_norm = f64::INFINITY;
    let mut growing = 0usize;
    for _ in 0..trunc.max_terms {
        let mut ratio = z;
        for a in upper {
            ratio *= one - a * qm;
        }
        let mut den = one - q * qm;
        for b in lower {
            den *= one - b * qm;
        }
        if den.norm() == 0.0 {
            return Err(Error::Numeric("phi series denominator vanished".into()));
        }
        term *= ratio / den;
        sum += term;
        qm *= q;
        let nrm = term.norm();
        if nrm == 0.0 || nrm < trunc.tail_tolerance {
            return Ok(sum);
        }
        if nrm > prev_norm {
            growing += 1;
            if growing >= 6 {
                return Err(Error::Numeric("phi series diverges".into()));
            }
        } else {
            growing = 0;
        }
        prev_norm = nrm;
    }
    if term.norm() > trunc.tail_tolerance {
        return Err(Error::Numeric(format!(
            "phi series did not reach tail tolerance (last term {})",
            term.norm()
        )));
    }
    Ok(sum)
}

/// Numeric basic hypergeometric series in the standard convention (the
/// numeric counterpart of [`phi_exact_standard`]).
pub fn phi_complex_standard(
    upper: &[Complex64],
    lower: &[Complex64],
    q: Complex64,
    z: Complex64,
    trunc: &SeriesTruncation,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let excess = upper.len() as i32 - lower.len() as i32 - 1;
    let mut sum = one;
    let mut term = one;
    let mut qm = one;
    let mut prev_norm = f64::INFINITY;
    let mut growing = 0usize;
    for _ in 0..trunc.max_terms {
        let mut ratio = z;
        for a in upper {
            ratio *= one - a * qm;
        }
        let mut den = one - q * qm;
        for b in lower {
            den *= one - b * qm;
        }
        if den.norm() == 0.0 {
            return Err(Error::Numeric("phi series denominator vanished".into()));
        }
        if excess != 0 {
            ratio *= (-qm).powi(-excess);
        }
        term *= ratio / den;
        sum += term;
        qm *= q;
        let nrm = term.norm();
        if nrm == 0.0 || nrm < trunc.tail_tolerance {
            return Ok(sum);
        }
        if nrm > prev_norm {
            growing += 1;
            if growing >= 6 {
                return Err(Error::Numeric("phi series diverges".into()));
            }
        } else {
            growing = 0;
        }
        prev_norm = nrm;
    }
    if term.norm() > trunc.tail_tolerance {
        return Err(Error::Numeric(format!(
            "phi series did not reach tail tolerance (last term {})",
            term.norm()
        )));
    }
    Ok(sum)
}

/// Exact classical hypergeometric sum with Pochhammer-ratio terms:
/// sum_m prod (a_i)_m z^m / (m! prod (b_j)_m). Intended for terminating
/// series (some a_i a nonpositive integer).
pub fn classical_hyper(
    upper: &[Rational],
    lower: &[Rational],
    z: &Rational,
    max_terms: usize,
) -> Result<Rational> {
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for m in 0..max_terms as i64 {
        let mut num = z.clone();
        for a in upper {
            num *= a + rat_i(m);
        }
        let mut den = rat_i(m + 1);
        for b in lower {
            den *= b + rat_i(m);
        }
        if den.is_zero() {
            return Err(Error::Domain(format!("classical series term {} has vanishing denominator", m + 1)));
        }
        term *= num / den;
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Deterministic list of `count` distinct rational q-values, none equal to
/// 0 or 1, for degree-bounded sampling certification. Starts from a fixed
/// set of hand-picked points and extends with minimal-height fractions.
pub fn certifying_q_samples(count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = [
        (1, 2), (1, 3), (2, 3), (3, 2), (2, 1), (5, 1), (1, 7), (7, 5), (9, 8), (11, 3),
    ]
    .iter()
    .map(|&(a, b)| rat(a, b))
    .collect();
    if out.len() >= count {
        out.truncate(count);
        return out;
    }
    let mut seen: std::collections::HashSet<Rational> = out.iter().cloned().collect();
    // Farey-style sweep keeps numerators/denominators small, which keeps
    // the big-integer arithmetic in the certification sweeps fast.
    'outer: for height in 2i64.. {
        for a in 1..height {
            if num_integer::gcd(a, height) != 1 {
                continue;
            }
            for cand in [rat(a, height), rat(height, a)] {
                if !seen.contains(&cand) {
                    seen.insert(cand.clone());
                    out.push(cand);
                    if out.len() >= count {
                        break 'outer;
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_half() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn q_number_examples() {
        assert_eq!(q_number(3, &q_half()).unwrap(), rat(7, 4));
        assert_eq!(q_number(0, &rat(5, 3)).unwrap(), Rational::zero());
        assert_eq!(q_number(4, &rat_i(1)).unwrap(), rat_i(4));
        assert!(q_number(-1, &q_half()).is_err());
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(4, &q_half()).unwrap(), rat(315, 64));
        assert_eq!(q_double_even(0, &rat(2, 1)).unwrap(), Rational::one());
        assert_eq!(q_double_odd(0, &rat(2, 1)).unwrap(), Rational::one());
        // (a;q)_{pk} = (a,aq,...,aq^{p-1};q^p)_k at p=2, k=1 is (1-a)(1-aq)
        let a = rat(1, 3);
        let q = rat(2, 5);
        let lhs = q_shifted_p_block(&a, 2, 1, &q).unwrap();
        let rhs = (Rational::one() - &a) * (Rational::one() - &a * &q);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_factorial_is_product_of_q_numbers() {
        for q in certifying_q_samples(10) {
            for n in 0..=40i64 {
                let mut prod = Rational::one();
                for k in 1..=n {
                    prod *= q_number(k, &q).unwrap();
                }
                assert_eq!(q_factorial(n, &q).unwrap(), prod);
            }
        }
    }

    #[test]
    fn two_q_times_m_q2_is_2m_q() {
        for q in certifying_q_samples(6) {
            let q2 = &q * &q;
            for m in 0..=20i64 {
                let lhs = q_number(2, &q).unwrap() * q_number(m, &q2).unwrap();
                assert_eq!(lhs, q_number(2 * m, &q).unwrap());
            }
        }
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(4, 2, &rat_i(2)).unwrap(), rat_i(35));
        assert_eq!(q_binomial(6, 0, &q_half()).unwrap(), Rational::one());
        assert_eq!(q_binomial(4, 2, &q_half()).unwrap(), rat(35, 16));
        assert_eq!(q_binomial(3, 5, &q_half()).unwrap(), Rational::zero());
        assert_eq!(q_binomial(3, -1, &q_half()).unwrap(), Rational::zero());
    }

    #[test]
    fn q_binomial_inversion() {
        // {n choose 2k}_{1/q} = q^{2k(2k-n)} {n choose 2k}_q
        for q in certifying_q_samples(6) {
            let qi = q.recip();
            for n in 0..=20i64 {
                for k in 0..=(n / 2) {
                    let lhs = q_binomial(n, 2 * k, &qi).unwrap();
                    let rhs = rat_pow(&q, 2 * k * (2 * k - n)).unwrap()
                        * q_binomial(n, 2 * k, &q).unwrap();
                    assert_eq!(lhs, rhs, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn q_number_base_inversion() {
        // {m}_{1/q} = q^{1-m} {m}_q
        for q in certifying_q_samples(6) {
            for m in 1..=30i64 {
                let lhs = q_number(m, &q.recip()).unwrap();
                let rhs = rat_pow(&q, 1 - m).unwrap() * q_number(m, &q).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hahn_power_examples() {
        let q = rat(3, 7);
        let c = hahn_power(2, &q, HahnVariant::Plus).unwrap();
        assert_eq!(c, vec![Rational::one(), Rational::one() + &q, q.clone()]);
        for v in [HahnVariant::Plus, HahnVariant::Minus, HahnVariant::MinusQQ2] {
            assert_eq!(hahn_power(0, &q, v).unwrap(), vec![Rational::one()]);
        }
        let m = hahn_power(2, &q, HahnVariant::MinusQQ2).unwrap();
        let two_q = q_number(2, &q).unwrap();
        assert_eq!(m[0], Rational::one());
        assert_eq!(m[1], -two_q.clone());
        assert_eq!(m[2], &q * &q * two_q / (Rational::one() + &q * &q));
    }

    #[test]
    fn hahn_power_matches_iterated_product() {
        // coefficients of prod_{j=0}^{n-1} (x + q^j y)
        for q in certifying_q_samples(4) {
            for n in 0..=15i64 {
                let coeffs = hahn_power(n, &q, HahnVariant::Plus).unwrap();
                let mut poly = vec![Rational::one()]; // in y, coefficient of x^{n-k} y^k
                for j in 0..n {
                    let qj = rat_pow(&q, j).unwrap();
                    let mut next = vec![Rational::zero(); poly.len() + 1];
                    for (k, c) in poly.iter().enumerate() {
                        next[k] += c; // * x
                        next[k + 1] += c * &qj; // * q^j y
                    }
                    poly = next;
                }
                assert_eq!(coeffs, poly, "n={n}");
            }
        }
    }

    #[test]
    fn eq_big_eq_inverse_pair() {
        // coefficient of x^j in the Cauchy product e_q(x)E_q(-x) is 0 for j >= 1
        for q in certifying_q_samples(5) {
            for j in 1..=12i64 {
                let mut acc = Rational::zero();
                for k in 0..=j {
                    let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
                    acc += q_exp_coeff(QExpKind::EQ, j - k, &q, 1).unwrap()
                        * q_exp_coeff(QExpKind::BigEQ, k, &q, 1).unwrap()
                        * sign;
                }
                assert!(acc.is_zero(), "q={q} j={j}");
            }
        }
    }

    #[test]
    fn eq_product_is_hahn_exponential() {
        // e_q(x)E_q(y) = e_q(x (+)_q y): compare coefficients of x^{n-k} y^k
        let q = rat(2, 5);
        for n in 0..=10i64 {
            let hahn = hahn_power(n, &q, HahnVariant::Plus).unwrap();
            let nfact = q_factorial(n, &q).unwrap();
            for k in 0..=n {
                let lhs = q_exp_coeff(QExpKind::EQ, n - k, &q, 1).unwrap()
                    * q_exp_coeff(QExpKind::BigEQ, k, &q, 1).unwrap();
                let rhs = &hahn[k as usize] / &nfact;
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn cos_sin_match_eq_at_imaginary_argument() {
        let q = QParam::new(rat(1, 2)).unwrap();
        let trunc = SeriesTruncation::new(60, 1e-16).unwrap();
        let z = Complex64::new(0.37, 0.0);
        let c = q_exponential_partial(QExpKind::CosQ, z, &q, 1, &trunc).unwrap();
        let s = q_exponential_partial(QExpKind::SinQ, z, &q, 1, &trunc).unwrap();
        let e = q_exponential_partial(QExpKind::EQ, Complex64::new(0.0, 0.37), &q, 1, &trunc).unwrap();
        let recon = c + Complex64::i() * s;
        assert!((recon - e).norm() < 1e-12);
    }

    #[test]
    fn eq_at_zero_is_one() {
        let q = QParam::new(rat(1, 2)).unwrap();
        let trunc = SeriesTruncation::default();
        let v = q_exponential_partial(QExpKind::EQ, Complex64::new(0.0, 0.0), &q, 1, &trunc).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn phi_empty_at_zero_is_one() {
        let trunc = SeriesTruncation::default();
        let v = phi_exact(&[], &[], &rat(1, 2), &Rational::zero(), &trunc).unwrap();
        assert_eq!(v, Rational::one());
    }

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat_i(-7));
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert_eq!(format_rational(&rat_i(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn certifying_samples_are_distinct_and_valid() {
        let samples = certifying_q_samples(300);
        assert_eq!(samples.len(), 300);
        let set: std::collections::HashSet<_> = samples.iter().cloned().collect();
        assert_eq!(set.len(), 300);
        for q in &samples {
            assert!(!q.is_zero() && !q.is_one());
        }
    }

    #[test]
    fn qparam_rejects_zero() {
        assert!(QParam::new(Rational::zero()).is_err());
        assert!(QParam::new(rat(1, 2)).is_ok());
        let q = QParam::new(rat(2, 3)).unwrap();
        assert_eq!(q.inverse().value(), &rat(3, 2));
    }

    #[test]
    fn rational_signs_reduced() {
        let r = Rational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(r, rat(-2, 3));
        assert!(num_traits::Signed::is_positive(r.denom()));
    }
}
