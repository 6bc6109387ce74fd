//! Ultraspherical (Gegenbauer) polynomials `P_k^ν` and their constants.
//!
//! Everything here is built on the forward three-term recurrence
//!
//! ```text
//! k P_k^ν(x) = 2(k+ν-1) x P_{k-1}^ν(x) - (k+2ν-2) P_{k-2}^ν(x),
//! P_0^ν = 1,  P_1^ν(x) = 2νx,
//! ```
//!
//! which is stable on `[-1, 1]` for `ν > 0`. The family is orthogonal on
//! `[-1, 1]` against `(1-x²)^{ν-1/2}`, equivalently on `[0, π]` against
//! `(sin θ)^{2ν}` after `x = cos θ`:
//!
//! ```text
//! ∫_0^π P_k^ν(cos θ) P_j^ν(cos θ) (sin θ)^{2ν} dθ = δ_{kj} / c(k, ν).
//! ```
//!
//! Gamma-ratio constants are evaluated in log-Gamma space so that degrees
//! past `k ≈ 170` do not overflow.

use crate::error::{Error, Result};

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::param(format!(
            "Gegenbauer parameter must satisfy 0 < ν < ∞, got {nu}"
        )));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > 1.0 + 1e-12 {
        return Err(Error::param(format!("argument must lie in [-1, 1], got {x}")));
    }
    Ok(())
}

/// `P_k^ν(x)` by the forward recurrence. Unvalidated inner loop.
pub(crate) fn eval_raw(k: usize, nu: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut pm1 = 1.0;
    let mut p = 2.0 * nu * x;
    for j in 2..=k {
        let jf = j as f64;
        let next = (2.0 * (jf + nu - 1.0) * x * p - (jf + 2.0 * nu - 2.0) * pm1) / jf;
        pm1 = p;
        p = next;
    }
    p
}

/// Evaluates the Gegenbauer polynomial `P_k^ν(x)`.
pub fn eval(k: usize, nu: f64, x: f64) -> Result<f64> {
    check_nu(nu)?;
    check_x(x)?;
    Ok(eval_raw(k, nu, x.clamp(-1.0, 1.0)))
}

/// `Σ_k coeffs[k] · P_k^ν(x)` in a single recurrence pass.
pub fn eval_series(coeffs: &[f64], nu: f64, x: f64) -> f64 {
    let mut acc = 0.0;
    let mut pm1 = 0.0;
    let mut p = 1.0;
    for (k, &c) in coeffs.iter().enumerate() {
        if k >= 1 {
            let kf = k as f64;
            let next = if k == 1 {
                2.0 * nu * x
            } else {
                (2.0 * (kf + nu - 1.0) * x * p - (kf + 2.0 * nu - 2.0) * pm1) / kf
            };
            pm1 = p;
            p = next;
        }
        acc += c * p;
    }
    acc
}

pub(crate) fn at_one_raw(k: usize, nu: f64) -> f64 {
    // P_k^ν(1) = binom(k+2ν-1, k) = Γ(k+2ν) / (Γ(2ν) Γ(k+1))
    let kf = k as f64;
    (libm::lgamma(kf + 2.0 * nu) - libm::lgamma(2.0 * nu) - libm::lgamma(kf + 1.0)).exp()
}

/// `P_k^ν(1)`, computed from the closed product form; always positive.
pub fn at_one(k: usize, nu: f64) -> Result<f64> {
    check_nu(nu)?;
    Ok(at_one_raw(k, nu))
}

/// Orthogonality constant `c(k, ν)` with
/// `∫_0^π P_k^ν(cos θ)² (sin θ)^{2ν} dθ = 1 / c(k, ν)`.
///
/// `c(k,ν) = 2^{2ν-1} Γ(ν)² (k+ν) Γ(k+1) / (π Γ(k+2ν))`, evaluated in
/// log-Gamma space.
pub fn norm_constant(k: usize, nu: f64) -> Result<f64> {
    check_nu(nu)?;
    let kf = k as f64;
    let log_c = (2.0 * nu - 1.0) * std::f64::consts::LN_2
        + 2.0 * libm::lgamma(nu)
        + (kf + nu).ln()
        + libm::lgamma(kf + 1.0)
        - std::f64::consts::PI.ln()
        - libm::lgamma(kf + 2.0 * nu);
    Ok(log_c.exp())
}

/// `1 - P_k^ν(x) / P_k^ν(1)` for `x = 1 - one_minus_x`, without the
/// catastrophic cancellation of forming the ratio first.
///
/// Dividing the recurrence by `P_k^ν(1)` gives, for `R_k = P_k^ν(x)/P_k^ν(1)`
/// and `u_k = 1 - R_k`,
///
/// ```text
/// u_k = A_k (1-x) + A_k x u_{k-1} - B_k u_{k-2},
/// A_k = 2(k+ν-1)/(k+2ν-1),  B_k = (k-1)/(k+2ν-1),  A_k - B_k = 1,
/// ```
///
/// which propagates `1-x` directly. Supply `one_minus_x = 2 sin²(θ/2)` when
/// `x = cos θ` to keep full relative accuracy near the pole.
pub fn one_minus_ratio(k: usize, nu: f64, one_minus_x: f64) -> Result<f64> {
    check_nu(nu)?;
    if !one_minus_x.is_finite() || !(-1e-12..=2.0 + 1e-12).contains(&one_minus_x) {
        return Err(Error::param(format!(
            "1-x must lie in [0, 2], got {one_minus_x}"
        )));
    }
    Ok(one_minus_ratio_raw(k, nu, one_minus_x.clamp(0.0, 2.0)))
}

pub(crate) fn one_minus_ratio_raw(k: usize, nu: f64, omx: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let x = 1.0 - omx;
    let mut um1 = 0.0;
    let mut u = omx;
    for j in 2..=k {
        let jf = j as f64;
        let denom = jf + 2.0 * nu - 1.0;
        let a = 2.0 * (jf + nu - 1.0) / denom;
        let b = (jf - 1.0) / denom;
        let next = a * omx + a * x * u - b * um1;
        um1 = u;
        u = next;
    }
    u
}
