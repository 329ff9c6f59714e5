//! Verification reports and suite runners. Each identity is checked at one
//! parameter point per report row; rows are produced in a deterministic
//! order (the sweeps fan out over a worker pool but are collected in input
//! order).
//!
//! Three checks intentionally deviate from their printed closed forms and
//! report `paper_discrepancy` instead of `fail`: the inversion closed form
//! (wrong q-power from n = 4), the printed inverse-operator / decomposition
//! of unity (extra q^{k(k-1)} factor), and the heat-equation s-derivative
//! base (printed base q instead of q^-p).

use crate::hermite::{self, hermite, hermite_explicit, hermite_operator_exp, rodrigues_poly, t_poly, t_poly_2f0};
use crate::polyring::Poly2;
use crate::qcore::{
    format_rational, q_double_odd, q_number, rat, rat_pow, QParam, Rational,
};
use crate::qhermite::{
    self, corrected_inverse_operator, discrete_q_hermite_check, four_way_check,
    generating_function_coefficient, l_poly, l_poly_3phi2, parity_generating_function_check,
    printed_l_operator, q_difference_residual, q_hermite, q_hermite_chain, q_inversion,
    raising_substitution_check, unity_order_coefficient,
};
use crate::{qinverse, qp, Result};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Outcome of one identity check at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    PaperDiscrepancy,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PaperDiscrepancy => "paper_discrepancy",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub identity_id: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub residual: String,
    pub runtime_ms: u64,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut params = serde_json::Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        serde_json::json!({
            "identity_id": self.identity_id,
            "params": params,
            "status": self.status.as_str(),
            "residual": self.residual,
            "runtime_ms": self.runtime_ms,
        })
    }

    pub fn csv_header() -> &'static str {
        "identity_id,params,status,residual,runtime_ms"
    }

    pub fn to_csv_row(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{}",
            self.identity_id,
            params,
            self.status.as_str(),
            self.residual.replace(',', ";"),
            self.runtime_ms
        )
    }

    pub fn to_pretty(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "{:<18} {:<36} {:<24} residual={} ({} ms)",
            self.status.as_str(),
            self.identity_id,
            params,
            self.residual,
            self.runtime_ms
        )
    }
}

/// The verdict of a single check body: `Ok(None)` for a clean pass,
/// `Ok(Some(residual))` for a nonzero residual with its rendering.
type Verdict = Result<Option<String>>;

type Task = Box<dyn FnOnce() -> VerifyReport + Send>;

fn task(
    id: &str,
    params: Vec<(String, String)>,
    discrepancy_expected: bool,
    body: impl FnOnce() -> Verdict + Send + 'static,
) -> Task {
    let id = id.to_string();
    Box::new(move || {
        let start = Instant::now();
        let (status, residual) = match body() {
            Ok(None) => {
                if discrepancy_expected {
                    // a ledgered discrepancy that fails to appear is itself
                    // a failure of the artifact's bookkeeping
                    (Status::Fail, "expected paper discrepancy not observed".to_string())
                } else {
                    (Status::Pass, "0".to_string())
                }
            }
            Ok(Some(residual)) => {
                if discrepancy_expected {
                    (Status::PaperDiscrepancy, residual)
                } else {
                    (Status::Fail, residual)
                }
            }
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        VerifyReport {
            identity_id: id,
            params,
            status,
            residual,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    })
}

/// Run the tasks over the rayon pool, preserving input order.
pub fn run_tasks(tasks: Vec<Task>) -> Vec<VerifyReport> {
    tasks.into_par_iter().map(|t| t()).collect()
}

fn q_params(q: &Rational, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut v = vec![("q".to_string(), format_rational(q))];
    for (k, val) in extra {
        v.push((k.to_string(), val.clone()));
    }
    v
}

fn poly_residual(p: Poly2) -> Option<String> {
    if p.is_zero() {
        None
    } else {
        Some(format!("{p}"))
    }
}

// ---------------------------------------------------------------------------
// classical suite
// ---------------------------------------------------------------------------

pub fn run_classical_suite(n_max: u32) -> Vec<VerifyReport> {
    let nm = |n: u32| vec![("n_max".to_string(), n.to_string())];
    let tasks: Vec<Task> = vec![
        task("classical.printed_table", vec![], false, || {
            let expected = [
                (1u32, Poly2::x()),
                (2, &Poly2::monomial(2, 0, Rational::one()) - &Poly2::s()),
                (3, &Poly2::monomial(3, 0, Rational::one()) - &Poly2::monomial(1, 1, rat(3, 1))),
                (
                    4,
                    &(&Poly2::monomial(4, 0, Rational::one())
                        - &Poly2::monomial(2, 1, rat(6, 1)))
                        + &Poly2::monomial(0, 2, rat(3, 1)),
                ),
            ];
            for (n, want) in expected {
                if hermite(n).poly != want {
                    return Ok(Some(format!("H_{n} differs from printed form")));
                }
            }
            Ok(None)
        }),
        task("classical.constructions", nm(n_max), false, move || {
            for n in 0..=n_max {
                let r = hermite(n).poly;
                if hermite_explicit(n).poly != r
                    || hermite_operator_exp(n).poly != r
                    || rodrigues_poly(n) != r
                {
                    return Ok(Some(format!("construction mismatch at n={n}")));
                }
            }
            Ok(None)
        }),
        task("classical.ode", nm(n_max.max(30)), false, move || {
            for n in 0..=n_max.max(30) {
                let h = hermite(n).poly;
                let d1 = h.classical_dx();
                let res = &(&d1.classical_dx().mul_by_s() - &d1.mul_by_x())
                    + &h.scale(&rat(n as i64, 1));
                if let Some(r) = poly_residual(res) {
                    return Ok(Some(format!("n={n}: {r}")));
                }
            }
            Ok(None)
        }),
        task("classical.lowering", nm(n_max), false, move || {
            for n in 1..=n_max {
                let res = &hermite(n).poly.classical_dx()
                    - &hermite(n - 1).poly.scale(&rat(n as i64, 1));
                if !res.is_zero() {
                    return Ok(Some(format!("n={n}")));
                }
            }
            Ok(None)
        }),
        task("classical.inversion", nm(20), false, || {
            for n in 0..=20u32 {
                let (solved, closed) = hermite::classical_inversion(n);
                if solved != closed {
                    return Ok(Some(format!("n={n}")));
                }
            }
            Ok(None)
        }),
        task("classical.parity", nm(50), false, || {
            for n in 1..=50u32 {
                let h = hermite(n).poly;
                let flipped = h.dilate_x(&rat(-1, 1))?;
                let sign = if n % 2 == 1 { rat(-1, 1) } else { Rational::one() };
                if flipped != h.scale(&sign) {
                    return Ok(Some(format!("n={n}")));
                }
            }
            Ok(None)
        }),
        task("classical.t_operator", nm(15), false, || {
            // T_{2n}(alpha, beta) closed sum against its 2F0 form
            let (alpha, beta) = (rat(2, 3), rat(-1, 2));
            for n in 0..=15u32 {
                let direct = t_poly(2 * n, &alpha, &beta);
                let hyper = t_poly_2f0(n, &alpha, &beta)?;
                if direct != hyper {
                    return Ok(Some(format!("n={n}: {} vs {}", direct, hyper)));
                }
            }
            Ok(None)
        }),
    ];
    run_tasks(tasks)
}

// ---------------------------------------------------------------------------
// q suite
// ---------------------------------------------------------------------------

pub fn run_q_suite(n_max: u32, q_samples: &[Rational]) -> Vec<VerifyReport> {
    let mut tasks: Vec<Task> = Vec::new();
    for q in q_samples {
        let qq = QParam::new(q.clone()).expect("q sample nonzero");
        let qv = q.clone();
        let nm = ("n_max", n_max.to_string());

        let qc = qq.clone();
        tasks.push(task("q.printed_table", q_params(&qv, &[]), false, move || {
            let qv = qc.value();
            let three = q_number(3, qv)?;
            let expected = [
                (1u32, Poly2::x()),
                (2, &Poly2::monomial(2, 0, Rational::one()) - &Poly2::s()),
                (
                    3,
                    &Poly2::monomial(3, 0, Rational::one())
                        - &Poly2::monomial(1, 1, three.clone()),
                ),
                (
                    4,
                    &(&Poly2::monomial(4, 0, Rational::one())
                        - &Poly2::monomial(2, 1, (Rational::one() + rat_pow(qv, 2)?) * &three))
                        + &Poly2::monomial(0, 2, rat_pow(qv, 2)? * &three),
                ),
            ];
            for (n, want) in expected {
                if q_hermite(n, &qc)?.poly != want {
                    return Ok(Some(format!("H_{n} differs from printed form")));
                }
            }
            Ok(None)
        }));

        let qc = qq.clone();
        tasks.push(task(
            "q.four_constructions",
            q_params(&qv, &[nm.clone()]),
            false,
            move || Ok(four_way_check(n_max, &qc)?.map(|n| format!("first mismatch at n={n}"))),
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.difference_equation",
            q_params(&qv, &[nm.clone()]),
            false,
            move || {
                let chain = q_hermite_chain(n_max, &qc)?;
                for (n, h) in chain.iter().enumerate() {
                    let res = q_difference_residual(n as u32, &qc, h)?;
                    if let Some(r) = poly_residual(res) {
                        return Ok(Some(format!("n={n}: {r}")));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task("q.zero_values", q_params(&qv, &[("n_max", "12".into())]), false, move || {
            let qv = qc.value();
            let chain = q_hermite_chain(25, &qc)?;
            for n in 0..=12i64 {
                let even = &chain[2 * n as usize];
                let sign = if n % 2 == 1 { -Rational::one() } else { Rational::one() };
                let want = sign * rat_pow(qv, n * (n - 1))? * q_double_odd(n, qv)?;
                // the value at x = 0 must be exactly the single term want * s^n
                for (&(xe, se), c) in even.iter() {
                    if xe == 0 && (se != n as u32 || c != &want) {
                        return Ok(Some(format!("H_{}(0,s) wrong", 2 * n)));
                    }
                }
                if even.coeff(0, n as u32) != want {
                    return Ok(Some(format!("H_{}(0,s) wrong", 2 * n)));
                }
                if 2 * n + 1 <= 25 {
                    let odd = &chain[(2 * n + 1) as usize];
                    if odd.iter().any(|(&(xe, _), _)| xe == 0) {
                        return Ok(Some(format!("H_{}(0,s) nonzero", 2 * n + 1)));
                    }
                }
            }
            Ok(None)
        }));

        let qc = qq.clone();
        tasks.push(task("q.lowering", q_params(&qv, &[nm.clone()]), false, move || {
            let qv = qc.value();
            let chain = q_hermite_chain(n_max, &qc)?;
            for n in 1..=n_max as usize {
                let res = &chain[n].jackson_dx(qv)?
                    - &chain[n - 1].scale(&q_number(n as i64, qv)?);
                if !res.is_zero() {
                    return Ok(Some(format!("n={n}")));
                }
            }
            Ok(None)
        }));

        let qc = qq.clone();
        tasks.push(task(
            "q.raising_substitution",
            q_params(&qv, &[("n_max", "12".into())]),
            false,
            move || {
                if raising_substitution_check(12, &qc)? {
                    Ok(None)
                } else {
                    Ok(Some("H_n(x + s q^N o D, s) . 1 != x^n".into()))
                }
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.inversion_solve",
            q_params(&qv, &[("n_max", "20".into())]),
            false,
            move || {
                for n in 0..=20u32 {
                    let table = q_inversion(n, &qc)?;
                    // reconstruct x^n from the solved coefficients
                    let chain = q_hermite_chain(n, &qc)?;
                    let mut acc = Poly2::zero();
                    for (k, d) in table.coeffs.iter().enumerate() {
                        let mut t = chain[n as usize - 2 * k].scale(d);
                        for _ in 0..k {
                            t = t.mul_by_s();
                        }
                        acc = &acc + &t;
                    }
                    if acc != Poly2::monomial(n, 0, Rational::one()) {
                        return Ok(Some(format!("n={n}: reconstruction failed")));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.inversion_closed_form",
            q_params(&qv, &[("n_max", "20".into())]),
            true,
            move || {
                for n in 0..=20u32 {
                    let table = q_inversion(n, &qc)?;
                    if !table.all_agree() {
                        let k = table.agree.iter().position(|&a| !a).unwrap();
                        return Ok(Some(format!(
                            "first at n={n}, k={k}: solved {} vs printed {}",
                            format_rational(&table.coeffs[k]),
                            format_rational(&table.paper_coeffs[k])
                        )));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.corrected_inverse_operator",
            q_params(&qv, &[("n_max", "20".into())]),
            false,
            move || {
                let chain = q_hermite_chain(20, &qc)?;
                for (n, h) in chain.iter().enumerate() {
                    if corrected_inverse_operator(h, &qc)? != Poly2::monomial(n as u32, 0, Rational::one()) {
                        return Ok(Some(format!("n={n}")));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.printed_l_operator",
            q_params(&qv, &[("n_max", "20".into())]),
            true,
            move || {
                let chain = q_hermite_chain(20, &qc)?;
                for (n, h) in chain.iter().enumerate() {
                    let got = printed_l_operator(h, &qc)?;
                    let want = Poly2::monomial(n as u32, 0, Rational::one());
                    if got != want {
                        let res = &got - &want;
                        return Ok(Some(format!("first at n={n}: residual {res}")));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.unity_decomposition_corrected",
            q_params(&qv, &[("order", "10".into())]),
            false,
            move || {
                for j in 1..=10i64 {
                    let c = unity_order_coefficient(j, &qc, true)?;
                    if !c.is_zero() {
                        return Ok(Some(format!("order {j}: {}", format_rational(&c))));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.unity_decomposition_printed",
            q_params(&qv, &[("order", "10".into())]),
            true,
            move || {
                for j in 1..=10i64 {
                    let c = unity_order_coefficient(j, &qc, false)?;
                    if !c.is_zero() {
                        return Ok(Some(format!("first at order {j}: {}", format_rational(&c))));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.generating_function",
            q_params(&qv, &[nm.clone()]),
            false,
            move || {
                let qv = qc.value();
                let chain = q_hermite_chain(n_max, &qc)?;
                for (n, h) in chain.iter().enumerate() {
                    let want = h.scale(&crate::qcore::q_factorial(n as i64, qv)?.recip());
                    if generating_function_coefficient(n as u32, &qc)? != want {
                        return Ok(Some(format!("t^{n} coefficient differs")));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "q.parity_generating_functions",
            q_params(&qv, &[("order", "10".into())]),
            false,
            move || {
                if let Some(n) = parity_generating_function_check(10, &qc, false)? {
                    return Ok(Some(format!("even series fails at order {n}")));
                }
                if let Some(n) = parity_generating_function_check(10, &qc, true)? {
                    return Ok(Some(format!("odd series fails at order {n}")));
                }
                Ok(None)
            },
        ));

        if !qv.is_one() {
            let qc = qq.clone();
            tasks.push(task(
                "q.discrete_hermite_specialization",
                q_params(&qv, &[("n_max", "12".into())]),
                false,
                move || {
                    for n in 0..=12u32 {
                        if !discrete_q_hermite_check(n, &qc)? {
                            return Ok(Some(format!("n={n}")));
                        }
                    }
                    Ok(None)
                },
            ));

            let qc = qq.clone();
            tasks.push(task(
                "q.lemma_alternate_form",
                q_params(&qv, &[("n_max", "14".into())]),
                false,
                move || {
                    let (alpha, beta) = (rat(2, 3), rat(-1, 2));
                    for n in (0..=14u32).step_by(2) {
                        let direct = l_poly(n, &alpha, &beta, &qc)?;
                        let hyper = l_poly_3phi2(n / 2, &alpha, &beta, &qc)?;
                        if direct != hyper {
                            return Ok(Some(format!("n={n}")));
                        }
                    }
                    Ok(None)
                },
            ));
        }
    }
    run_tasks(tasks)
}

// ---------------------------------------------------------------------------
// q^-1 suite
// ---------------------------------------------------------------------------

pub fn run_qinv_suite(n_max: u32, q_samples: &[Rational]) -> Vec<VerifyReport> {
    let mut tasks: Vec<Task> = Vec::new();
    for q in q_samples {
        let qq = QParam::new(q.clone()).expect("q sample nonzero");
        let qv = q.clone();
        if qv.is_one() {
            continue;
        }
        let nm = ("n_max", n_max.to_string());

        let qc = qq.clone();
        tasks.push(task(
            "qinv.scaling_law",
            q_params(&qv, &[("n_max", "25".into())]),
            false,
            move || {
                for n in 0..=25i64 {
                    for k in 0..=n / 2 {
                        // errors exactly when the two routes disagree
                        qinverse::c_coeff_inverse(n, k, &qc)?;
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "qinv.coefficient_recursions",
            q_params(&qv, &[nm.clone()]),
            false,
            move || {
                let qv = qc.value();
                for n in 1..=n_max as i64 {
                    for k in 0..=(n + 1) / 2 {
                        let lhs = qinverse::c_coeff(n + 1, k, &qc)?;
                        let rhs = qinverse::c_coeff(n, k, &qc)?
                            - rat_pow(qv, n - 1)?
                                * q_number(n, qv)?
                                * qinverse::c_coeff(n - 1, k - 1, &qc)?;
                        if lhs != rhs {
                            return Ok(Some(format!("base-q recursion fails at n={n} k={k}")));
                        }
                        let lhs = qinverse::c_coeff_inverse(n + 1, k, &qc)?;
                        let rhs = rat_pow(qv, -2 * k)? * qinverse::c_coeff_inverse(n, k, &qc)?
                            - rat_pow(qv, 3 - n - 2 * k)?
                                * q_number(n, qv)?
                                * qinverse::c_coeff_inverse(n - 1, k - 1, &qc)?;
                        if lhs != rhs {
                            return Ok(Some(format!("inverse-base recursion fails at n={n} k={k}")));
                        }
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task(
            "qinv.polynomial_recursion",
            q_params(&qv, &[nm.clone()]),
            false,
            move || {
                for n in 1..=n_max {
                    if let Some(r) = poly_residual(qinverse::recursion_residual(n, &qc)?) {
                        return Ok(Some(format!("n={n}: {r}")));
                    }
                }
                Ok(None)
            },
        ));

        let qc = qq.clone();
        tasks.push(task("qinv.lowering", q_params(&qv, &[nm.clone()]), false, move || {
            for n in 1..=n_max {
                if !qinverse::lowering_residual(n, &qc)?.is_zero() {
                    return Ok(Some(format!("n={n}")));
                }
            }
            Ok(None)
        }));

        let qc = qq.clone();
        tasks.push(task(
            "qinv.factorization",
            q_params(&qv, &[("n_max", "12".into())]),
            false,
            move || Ok(qinverse::factorization_check(12, &qc)?.map(|n| format!("first mismatch at n={n}"))),
        ));

        let qc = qq.clone();
        tasks.push(task(
            "qinv.explicit_crosscheck",
            q_params(&qv, &[("n_max", "15".into())]),
            false,
            move || {
                for n in 0..=15u32 {
                    if qinverse::q_inv_hermite(n, &qc)?
                        != qhermite::q_hermite_explicit(n, &qc.inverse())?.poly
                    {
                        return Ok(Some(format!("n={n}")));
                    }
                }
                Ok(None)
            },
        ));
    }
    run_tasks(tasks)
}

// ---------------------------------------------------------------------------
// doubly indexed suite
// ---------------------------------------------------------------------------

pub fn run_qp_suite(n_max: u32, q_samples: &[Rational]) -> Vec<VerifyReport> {
    let mut tasks: Vec<Task> = Vec::new();
    for q in q_samples {
        let qq = QParam::new(q.clone()).expect("q sample nonzero");
        let qv = q.clone();

        let qc = qq.clone();
        tasks.push(task(
            "qp.p2_coincidence",
            q_params(&qv, &[("n_max", "25".into())]),
            false,
            move || {
                let chain = q_hermite_chain(25, &qc)?;
                for (n, h) in chain.iter().enumerate() {
                    if &qp::qp_hermite(n as u32, 2, &qc)?.poly != h {
                        return Ok(Some(format!("n={n}")));
                    }
                }
                Ok(None)
            },
        ));

        for p in [2u32, 3, 4] {
            let qc = qq.clone();
            let nmax = n_max.min(18);
            tasks.push(task(
                "qp.recursion",
                q_params(&qv, &[("p", p.to_string()), ("n_max", nmax.to_string())]),
                false,
                move || {
                    for n in 0..=nmax {
                        if let Some(r) = poly_residual(qp::qp_recursion_residual(n, p, &qc)?) {
                            return Ok(Some(format!("n={n}: {r}")));
                        }
                    }
                    Ok(None)
                },
            ));

            let qc = qq.clone();
            tasks.push(task(
                "qp.difference_equation",
                q_params(&qv, &[("p", p.to_string()), ("n_max", nmax.to_string())]),
                false,
                move || {
                    for n in 0..=nmax {
                        if let Some(r) = poly_residual(qp::qp_difference_residual(n, p, &qc)?) {
                            return Ok(Some(format!("n={n}: {r}")));
                        }
                    }
                    Ok(None)
                },
            ));

            let qc = qq.clone();
            tasks.push(task(
                "qp.lowering",
                q_params(&qv, &[("p", p.to_string()), ("n_max", nmax.to_string())]),
                false,
                move || {
                    for n in 1..=nmax {
                        if !qp::qp_lowering_residual(n, p, &qc)?.is_zero() {
                            return Ok(Some(format!("n={n}")));
                        }
                    }
                    Ok(None)
                },
            ));
        }

        for p in [2u32, 3] {
            let qc = qq.clone();
            tasks.push(task(
                "qp.heat_equation_corrected_base",
                q_params(&qv, &[("p", p.to_string()), ("n_max", "15".into())]),
                false,
                move || {
                    let base = qp::heat_default_base(p, &qc)?;
                    for n in 0..=15u32 {
                        if let Some(r) = poly_residual(qp::qp_heat_residual(n, p, &qc, &base)?) {
                            return Ok(Some(format!("n={n}: {r}")));
                        }
                    }
                    Ok(None)
                },
            ));

            let qc = qq.clone();
            tasks.push(task(
                "qp.heat_equation_printed_base",
                q_params(&qv, &[("p", p.to_string()), ("n_max", "15".into())]),
                !qv.is_one(),
                move || {
                    let base = qc.value().clone();
                    for n in 0..=15u32 {
                        if let Some(r) = poly_residual(qp::qp_heat_residual(n, p, &qc, &base)?) {
                            return Ok(Some(format!("first at n={n}: {r}")));
                        }
                    }
                    Ok(None)
                },
            ));
        }

        let qc = qq.clone();
        tasks.push(task(
            "qp.generating_function",
            q_params(&qv, &[("n_max", "12".into())]),
            false,
            move || {
                for p in [2u32, 3, 4] {
                    if let Some((n, d)) = qp::qp_gf_check(p, &qc, &rat(2, 3), &rat(-1, 2), 12)? {
                        return Ok(Some(format!("p={p} n={n}: {}", format_rational(&d))));
                    }
                }
                Ok(None)
            },
        ));
    }

    tasks.push(task(
        "qp.classical_limits",
        vec![("q".into(), "1".into()), ("n_max".into(), "12".into())],
        false,
        || {
            for p in [2u32, 3, 4] {
                if let Some(n) = qp::classical_limit_check(12, p, &rat(2, 3), &rat(-3, 5))? {
                    return Ok(Some(format!("p={p} n={n}")));
                }
            }
            Ok(None)
        },
    ));
    run_tasks(tasks)
}

/// Run every suite back to back.
pub fn run_all_suites(n_max: u32, q_samples: &[Rational]) -> Vec<VerifyReport> {
    let mut out = run_classical_suite(n_max.max(30));
    out.extend(run_q_suite(n_max, q_samples));
    out.extend(run_qinv_suite(n_max.min(20), q_samples));
    out.extend(run_qp_suite(n_max, q_samples));
    out
}

/// True when no report failed (paper discrepancies do not fail a run).
pub fn all_ok(reports: &[VerifyReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::certifying_q_samples;

    #[test]
    fn classical_suite_passes() {
        let reports = run_classical_suite(20);
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{}", r.to_pretty());
        }
    }

    #[test]
    fn q_suite_statuses() {
        let samples = certifying_q_samples(2);
        let reports = run_q_suite(10, &samples);
        assert!(all_ok(&reports));
        for r in &reports {
            match r.identity_id.as_str() {
                "q.inversion_closed_form"
                | "q.printed_l_operator"
                | "q.unity_decomposition_printed" => {
                    assert_eq!(r.status, Status::PaperDiscrepancy, "{}", r.to_pretty())
                }
                _ => assert_eq!(r.status, Status::Pass, "{}", r.to_pretty()),
            }
        }
    }

    #[test]
    fn qinv_and_qp_suites() {
        let samples = certifying_q_samples(2);
        let reports = run_qinv_suite(12, &samples);
        for r in &reports {
            assert_eq!(r.status, Status::Pass, "{}", r.to_pretty());
        }
        let reports = run_qp_suite(12, &samples);
        assert!(all_ok(&reports));
        for r in &reports {
            if r.identity_id == "qp.heat_equation_printed_base" {
                assert_eq!(r.status, Status::PaperDiscrepancy, "{}", r.to_pretty());
            } else {
                assert_eq!(r.status, Status::Pass, "{}", r.to_pretty());
            }
        }
    }

    #[test]
    fn report_renderings() {
        let r = VerifyReport {
            identity_id: "demo.identity".into(),
            params: vec![("q".into(), "1/2".into()), ("n_max".into(), "5".into())],
            status: Status::Pass,
            residual: "0".into(),
            runtime_ms: 3,
        };
        let j = r.to_json();
        assert_eq!(j["status"], "pass");
        assert_eq!(j["params"]["q"], "1/2");
        assert!(r.to_csv_row().starts_with("demo.identity,q=1/2;n_max=5,pass,0,"));
        assert!(r.to_pretty().contains("demo.identity"));
    }
}
