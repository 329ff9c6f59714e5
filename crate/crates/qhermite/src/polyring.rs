//! Sparse exact bivariate polynomial ring in the formal variables `x` and
//! `s` over [`Rational`], plus the linear operator algebra used by the
//! polynomial families: classical derivative, Jackson q-derivatives in x
//! and s with arbitrary base, dilations, and degree scaling q^N.
//!
//! Jackson derivatives act by the monomial rule x^m -> {m}_base x^{m-1},
//! never by the difference quotient, so x = 0 and base = 1 need no special
//! casing.

use crate::qcore::{format_rational, rat_pow, to_f64, Rational};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse exact polynomial in x and s. Keys are (x-exponent, s-exponent);
/// zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly2::monomial(0, 0, c)
    }

    /// The variable x.
    pub fn x() -> Self {
        Poly2::monomial(1, 0, Rational::one())
    }

    /// The variable s.
    pub fn s() -> Self {
        Poly2::monomial(0, 1, Rational::one())
    }

    pub fn monomial(x_exp: u32, s_exp: u32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((x_exp, s_exp), coeff);
        }
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of x^i s^j (zero when absent).
    pub fn coeff(&self, x_exp: u32, s_exp: u32) -> Rational {
        self.terms.get(&(x_exp, s_exp)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest x-exponent present, or 0 for the zero polynomial.
    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|&(x, _)| x).max().unwrap_or(0)
    }

    pub fn degree_s(&self) -> u32 {
        self.terms.keys().map(|&(_, s)| s).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Classical derivative d/dx.
    pub fn classical_dx(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(xe, se), c) in &self.terms {
            if xe > 0 {
                out.insert_add((xe - 1, se), c * Rational::from_integer(xe.into()));
            }
        }
        out
    }

    /// Jackson q-derivative in x with the given base: x^m -> {m}_base x^{m-1}.
    pub fn jackson_dx(&self, base: &Rational) -> Result<Poly2> {
        if base.is_zero() {
            return Err(Error::Domain("Jackson derivative base must be nonzero".into()));
        }
        let max = self.degree_x() as i64;
        let braced = q_number_table(max, base)?;
        let mut out = Poly2::zero();
        for (&(xe, se), c) in &self.terms {
            if xe > 0 {
                out.insert_add((xe - 1, se), c * &braced[xe as usize]);
            }
        }
        Ok(out)
    }

    /// Jackson q-derivative in s: s^k -> {k}_base s^{k-1}.
    pub fn jackson_ds(&self, base: &Rational) -> Result<Poly2> {
        if base.is_zero() {
            return Err(Error::Domain("Jackson derivative base must be nonzero".into()));
        }
        let max = self.degree_s() as i64;
        let braced = q_number_table(max, base)?;
        let mut out = Poly2::zero();
        for (&(xe, se), c) in &self.terms {
            if se > 0 {
                out.insert_add((xe, se - 1), c * &braced[se as usize]);
            }
        }
        Ok(out)
    }

    /// x -> factor * x.
    pub fn dilate_x(&self, factor: &Rational) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (&(xe, se), c) in &self.terms {
            out.insert_add((xe, se), c * rat_pow(factor, xe as i64)?);
        }
        Ok(out)
    }

    /// s -> factor * s (the q-dilation operator on s).
    pub fn dilate_s(&self, factor: &Rational) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (&(xe, se), c) in &self.terms {
            out.insert_add((xe, se), c * rat_pow(factor, se as i64)?);
        }
        Ok(out)
    }

    /// Multiply each term by base^(x-exponent); the degree-scaling q^N.
    pub fn scale_by_qpow_degx(&self, base: &Rational) -> Result<Poly2> {
        self.dilate_x(base)
    }

    pub fn mul_by_x(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&(xe, se), c)| ((xe + 1, se), c.clone())).collect(),
        }
    }

    pub fn mul_by_s(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&(xe, se), c)| ((xe, se + 1), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut out = Poly2::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact Horner-style evaluation at rational (x, s).
    pub fn eval_exact(&self, x: &Rational, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(xe, se), c) in &self.terms {
            acc += c
                * rat_pow(x, xe as i64).expect("nonnegative exponent")
                * rat_pow(s, se as i64).expect("nonnegative exponent");
        }
        acc
    }

    /// Double-precision complex evaluation.
    pub fn eval_complex(&self, x: Complex64, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(xe, se), c) in &self.terms {
            acc += to_f64(c) * x.powu(xe) * s.powu(se);
        }
        acc
    }

    /// Canonical JSON encoding: {"terms":[{"x":i,"s":j,"coeff":"num/den"}]},
    /// sorted ascending by (x, s). Byte-stable across runs.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(xe, se), c)| {
                serde_json::json!({"x": xe, "s": se, "coeff": format_rational(c)})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// CSV rows `x,s,coeff`, sorted ascending by (x, s).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,s,coeff\n");
        for (&(xe, se), c) in &self.terms {
            out.push_str(&format!("{},{},{}\n", xe, se, format_rational(c)));
        }
        out
    }
}

/// [{0}_base, {1}_base, ..., {max}_base]
fn q_number_table(max: i64, base: &Rational) -> Result<Vec<Rational>> {
    let mut table = Vec::with_capacity(max as usize + 1);
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    table.push(acc.clone());
    for _ in 1..=max {
        acc += &pw;
        pw *= base;
        table.push(acc.clone());
    }
    Ok(table)
}

impl fmt::Display for Poly2 {
    /// Human-readable rendering, highest x-degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(xe, se), c) in self.terms.iter().rev() {
            let mut mag = c.clone();
            let neg = mag < Rational::zero();
            if neg {
                mag = -mag;
            }
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (xe == 0 && se == 0) {
                parts.push(format_rational(&mag));
            }
            if se > 0 {
                parts.push(if se == 1 { "s".into() } else { format!("s^{se}") });
            }
            if xe > 0 {
                parts.push(if xe == 1 { "x".into() } else { format!("x^{xe}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, -c.clone());
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(xa, sa), ca) in &self.terms {
            for (&(xb, sb), cb) in &rhs.terms {
                out.insert_add((xa + xb, sa + sb), ca * cb);
            }
        }
        out
    }
}

/// A composable description of linear operators acting on [`Poly2`].
/// Composition applies right-to-left; every variant is linear.
#[derive(Debug, Clone)]
pub enum OpChain {
    Identity,
    MulByX,
    MulByS,
    ClassicalDx,
    JacksonDx(Rational),
    JacksonDs(Rational),
    DilateX(Rational),
    DilateS(Rational),
    /// Multiply each term by base^(x-exponent); the grading operator q^N.
    ScaleByQPowDegX(Rational),
    /// Composition, applied right-to-left.
    Compose(Vec<OpChain>),
    /// Linear combination sum_i c_i * Op_i.
    Sum(Vec<(Rational, OpChain)>),
}

impl OpChain {
    pub fn apply(&self, p: &Poly2) -> Result<Poly2> {
        Ok(match self {
            OpChain::Identity => p.clone(),
            OpChain::MulByX => p.mul_by_x(),
            OpChain::MulByS => p.mul_by_s(),
            OpChain::ClassicalDx => p.classical_dx(),
            OpChain::JacksonDx(base) => p.jackson_dx(base)?,
            OpChain::JacksonDs(base) => p.jackson_ds(base)?,
            OpChain::DilateX(f) => p.dilate_x(f)?,
            OpChain::DilateS(f) => p.dilate_s(f)?,
            OpChain::ScaleByQPowDegX(base) => p.scale_by_qpow_degx(base)?,
            OpChain::Compose(ops) => {
                let mut acc = p.clone();
                for op in ops.iter().rev() {
                    acc = op.apply(&acc)?;
                }
                acc
            }
            OpChain::Sum(parts) => {
                let mut acc = Poly2::zero();
                for (c, op) in parts {
                    acc = &acc + &op.apply(p)?.scale(c);
                }
                acc
            }
        })
    }

    /// Apply the operator `n` times.
    pub fn apply_iterated(&self, p: &Poly2, n: u32) -> Result<Poly2> {
        let mut acc = p.clone();
        for _ in 0..n {
            acc = self.apply(&acc)?;
        }
        Ok(acc)
    }
}
