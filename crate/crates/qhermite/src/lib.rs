//! Exact-arithmetic toolkit for four Hermite polynomial families:
//! the classical `H_n(x,s)`, the q-deformed `H_n(x,s|q)`, its inverse-base
//! companion `H_n(x,s|q^-1)`, and the doubly indexed `H_{n,p}(x,s|q)`.
//!
//! Every polynomial identity is checked over exact rationals (no rounding,
//! ever); the Fourier-transform statements are checked by adaptive complex
//! quadrature against closed forms.
//!
//! Module map:
//! - [`qcore`]: q-numbers, q-factorials, Pochhammer symbols, Hahn q-addition,
//!   truncated q-exponentials, basic hypergeometric series.
//! - [`polyring`]: sparse exact bivariate polynomials in `x`, `s` and the
//!   linear operator algebra acting on them (Jackson derivatives, dilations,
//!   degree scaling).
//! - [`hermite`]: the classical family and its textbook identities.
//! - [`qhermite`]: the q-deformed family, four constructions, inversion
//!   oracle, `L_n` and the Al-Salam-Chihara specialization.
//! - [`qinverse`]: coefficients `c_{n,k}`, the scaling law, and the
//!   inverse-base family.
//! - [`qp`]: the doubly indexed family, heat equation and classical limits.
//! - [`fourier`]: quadrature checks of the Gaussian/Fourier identities.
//! - [`verify`]: identity suites producing structured reports.

pub mod fourier;
pub mod hermite;
pub mod polyring;
pub mod qcore;
pub mod qhermite;
pub mod qinverse;
pub mod qp;
pub mod verify;

pub use polyring::{OpChain, Poly2};
pub use qcore::{QParam, Rational, SeriesTruncation};

use thiserror::Error;

/// Errors surfaced by the library: domain violations on exact operations and
/// numeric failures (divergence, quadrature non-convergence).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
