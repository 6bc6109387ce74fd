//! Diagonal (multiplier) operators on Laplace coefficients.
//!
//! A multiplier sequence is a rule `k ↦ m(k)`; the associated operator
//! scales every coefficient of degree `k` by `m(k)`. This module provides
//! the sequences used throughout: exponential-type semigroups
//! `k ↦ e^{-(p(k))^γ t}` for a regular polynomial `p`, their infinitesimal
//! generators `k ↦ (-(p(k))^γ)^r`, Boolean combinations
//! `⊕^r: m ↦ 1 - (1-m)^r`, the circle-mean translation
//! `k ↦ P_k^λ(cos θ)/P_k^λ(1)`, fractional differences
//! `(I - S_θ)^{α/2}`, and Cesàro means.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gegenbauer;
use crate::laplace::LaplaceCoefficients;

/// Degrees checked when validating positivity of a regular polynomial.
const REGULARITY_CHECK_MAX: usize = 2048;

/// An immutable rule `k ↦ m(k)` with a descriptive tag.
#[derive(Clone)]
pub struct MultiplierSequence {
    tag: String,
    rule: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for MultiplierSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiplierSequence")
            .field("tag", &self.tag)
            .finish()
    }
}

impl MultiplierSequence {
    pub fn from_fn(
        tag: impl Into<String>,
        rule: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        MultiplierSequence {
            tag: tag.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn identity() -> Self {
        Self::from_fn("identity", |_| 1.0)
    }

    pub fn zero() -> Self {
        Self::from_fn("zero", |_| 0.0)
    }

    /// `1` at degree `k0`, `0` elsewhere.
    pub fn delta(k0: usize) -> Self {
        Self::from_fn(format!("delta[k={k0}]"), move |k| {
            if k == k0 {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn value(&self, k: usize) -> f64 {
        (self.rule)(k)
    }

    pub fn values(&self, n_max: usize) -> Vec<f64> {
        (0..=n_max).map(|k| self.value(k)).collect()
    }
}

/// A polynomial `p` with `p(0) = 0`, positive lowest-order coefficient and
/// degree ≥ 1; the admissible symbol of an exponential-type semigroup.
///
/// "Lowest-order coefficient positive" is additionally backed by a numeric
/// check `p(k) > 0` for integers `k = 1..2048`, since the construction
/// needs `(p(k))^γ` real and positive on the spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPolynomial {
    coeffs: Vec<f64>,
}

impl RegularPolynomial {
    /// Coefficients low-to-high: `p(x) = Σ coeffs[i] x^i`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let mut trimmed = coeffs;
        while trimmed.len() > 1 && *trimmed.last().unwrap() == 0.0 {
            trimmed.pop();
        }
        if trimmed.len() < 2 {
            return Err(Error::param("polynomial degree must be at least 1"));
        }
        if trimmed.iter().any(|c| !c.is_finite()) {
            return Err(Error::param("polynomial coefficients must be finite"));
        }
        if trimmed[0] != 0.0 {
            return Err(Error::param("regularity requires p(0) = 0"));
        }
        let lowest = trimmed.iter().find(|&&c| c != 0.0).copied().unwrap_or(0.0);
        if lowest <= 0.0 {
            return Err(Error::param(
                "regularity requires a positive lowest-order coefficient",
            ));
        }
        let poly = RegularPolynomial { coeffs: trimmed };
        for k in 1..=REGULARITY_CHECK_MAX {
            if poly.eval(k as f64) <= 0.0 {
                return Err(Error::param(format!(
                    "polynomial is not positive at k = {k}"
                )));
            }
        }
        Ok(poly)
    }

    /// `p(x) = x`, the Abel-Poisson symbol.
    pub fn abel_poisson() -> Self {
        RegularPolynomial {
            coeffs: vec![0.0, 1.0],
        }
    }

    /// `p(x) = x(x + 2λ)`, the Weierstrass symbol for zonal parameter `λ`.
    pub fn weierstrass(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::param(format!("λ must be positive, got {lambda}")));
        }
        Ok(RegularPolynomial {
            coeffs: vec![0.0, 2.0 * lambda, 1.0],
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn describe(&self) -> String {
        format!("{:?}", self.coeffs)
    }
}

fn check_gamma(gamma: f64, permissive: bool) -> Result<()> {
    let ok = if permissive {
        gamma > 0.0 && gamma.is_finite()
    } else {
        gamma > 0.0 && gamma <= 1.0
    };
    if !ok {
        return Err(Error::param(format!(
            "γ must lie in {}, got {gamma}",
            if permissive { "(0, ∞)" } else { "(0, 1]" }
        )));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::param(format!(
            "step angle must lie in [0, π], got {theta}"
        )));
    }
    Ok(())
}

/// Applies a multiplier operator: degree-`k` coefficients scale by `m(k)`.
pub fn apply(m: &MultiplierSequence, f: &LaplaceCoefficients) -> LaplaceCoefficients {
    f.scale_degrees(|k| m.value(k))
}

/// The r-th Boolean `⊕^r T = I - (I - T)^r`, i.e. `k ↦ 1 - (1 - m(k))^r`.
pub fn boolean(m: &MultiplierSequence, r: usize) -> Result<MultiplierSequence> {
    if r == 0 {
        return Err(Error::param("Boolean order must be a positive integer"));
    }
    let inner = m.clone();
    Ok(MultiplierSequence::from_fn(
        format!("boolean[r={r}]({})", m.tag()),
        move |k| 1.0 - (1.0 - inner.value(k)).powi(r as i32),
    ))
}

/// Exponential-type semigroup multiplier `k ↦ e^{-(p(k))^γ t}`, `γ ∈ (0,1]`.
///
/// At `t = 0` this is exactly the identity sequence. The default range for
/// `γ` is the one for which kernel positivity is known; use
/// [`semigroup_unrestricted`] for exploratory `γ > 1` without positivity
/// claims.
pub fn semigroup(p: &RegularPolynomial, gamma: f64, t: f64) -> Result<MultiplierSequence> {
    check_gamma(gamma, false)?;
    semigroup_inner(p, gamma, t)
}

/// Same construction with `0 < γ < ∞` admitted.
pub fn semigroup_unrestricted(
    p: &RegularPolynomial,
    gamma: f64,
    t: f64,
) -> Result<MultiplierSequence> {
    check_gamma(gamma, true)?;
    semigroup_inner(p, gamma, t)
}

fn semigroup_inner(p: &RegularPolynomial, gamma: f64, t: f64) -> Result<MultiplierSequence> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::param(format!("time must satisfy t ≥ 0, got {t}")));
    }
    let poly = p.clone();
    Ok(MultiplierSequence::from_fn(
        format!("semigroup[p={}, γ={gamma}, t={t}]", poly.describe()),
        move |k| {
            if t == 0.0 {
                return 1.0;
            }
            (-poly.eval(k as f64).powf(gamma) * t).exp()
        },
    ))
}

/// r-th power of the infinitesimal generator: `k ↦ (-(p(k))^γ)^r`,
/// stored as `(-1)^r (p(k))^{rγ}`; `m(0) = 0` since `p(0) = 0`.
pub fn generator(p: &RegularPolynomial, gamma: f64, r: usize) -> Result<MultiplierSequence> {
    check_gamma(gamma, true)?;
    if r == 0 {
        return Err(Error::param("generator power must be a positive integer"));
    }
    let poly = p.clone();
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    Ok(MultiplierSequence::from_fn(
        format!("generator[p={}, γ={gamma}, r={r}]", poly.describe()),
        move |k| {
            if k == 0 {
                return 0.0;
            }
            sign * poly.eval(k as f64).powf(r as f64 * gamma)
        },
    ))
}

/// Circle-mean translation multiplier `k ↦ P_k^λ(cos θ)/P_k^λ(1)`.
///
/// `θ = 0` returns the identity sequence (continuous extension).
pub fn translation(theta: f64, lambda: f64) -> Result<MultiplierSequence> {
    check_theta(theta)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::param(format!("λ must be positive, got {lambda}")));
    }
    if theta == 0.0 {
        return Ok(MultiplierSequence::identity());
    }
    let omx = 2.0 * (theta / 2.0).sin().powi(2);
    Ok(MultiplierSequence::from_fn(
        format!("translation[θ={theta}, λ={lambda}]"),
        move |k| 1.0 - gegenbauer::one_minus_ratio_raw(k, lambda, omx),
    ))
}

/// Fractional difference `Δ_θ^α = (I - S_θ)^{α/2}`:
/// `k ↦ (1 - P_k^λ(cos θ)/P_k^λ(1))^{α/2}`.
///
/// For `α = 2` this equals `1 -` translation multiplier exactly. The base
/// is clamped at zero; it is nonnegative in exact arithmetic because
/// `|P_k^λ| ≤ P_k^λ(1)`.
pub fn frac_difference(alpha: f64, theta: f64, lambda: f64) -> Result<MultiplierSequence> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::param(format!(
            "order must satisfy α > 0, got {alpha}"
        )));
    }
    check_theta(theta)?;
    if theta == 0.0 {
        return Err(Error::param("difference step must satisfy θ > 0"));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::param(format!("λ must be positive, got {lambda}")));
    }
    let omx = 2.0 * (theta / 2.0).sin().powi(2);
    let half_alpha = alpha / 2.0;
    Ok(MultiplierSequence::from_fn(
        format!("frac-difference[α={alpha}, θ={theta}, λ={lambda}]"),
        move |k| {
            let u = gegenbauer::one_minus_ratio_raw(k, lambda, omx).max(0.0);
            u.powf(half_alpha)
        },
    ))
}

/// Partial sum of the binomial series for `(I - S_θ)^{α/2}`:
/// `Σ_{i<terms} (-1)^i C(α/2, i) (S_θ)^i` as a multiplier.
///
/// Converges to [`frac_difference`] termwise since `|m_{S_θ}(k)| ≤ 1`.
pub fn binomial_difference_series(
    alpha: f64,
    theta: f64,
    lambda: f64,
    terms: usize,
) -> Result<MultiplierSequence> {
    if terms == 0 {
        return Err(Error::param("series needs at least one term"));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::param(format!(
            "order must satisfy α > 0, got {alpha}"
        )));
    }
    let translation = translation(theta, lambda)?;
    let half_alpha = alpha / 2.0;
    // C(α/2, i) built iteratively: C(s, i+1) = C(s, i)·(s - i)/(i + 1)
    let mut binom = Vec::with_capacity(terms);
    let mut c = 1.0;
    for i in 0..terms {
        binom.push(c);
        c *= (half_alpha - i as f64) / (i as f64 + 1.0);
    }
    Ok(MultiplierSequence::from_fn(
        format!("binomial-series[α={alpha}, θ={theta}, λ={lambda}, terms={terms}]"),
        move |k| {
            let s = translation.value(k);
            let mut acc = 0.0;
            let mut s_pow = 1.0;
            for (i, &b) in binom.iter().enumerate() {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * b * s_pow;
                s_pow *= s;
            }
            acc
        },
    ))
}

/// Generalized combination number `A_k^α = Γ(k+α+1)/(Γ(α+1) Γ(k+1))`.
pub fn cesaro_number(k: usize, alpha: f64) -> f64 {
    (libm::lgamma(k as f64 + alpha + 1.0)
        - libm::lgamma(alpha + 1.0)
        - libm::lgamma(k as f64 + 1.0))
    .exp()
}

/// Cesàro mean `σ_K^α(f) = (1/A_K^α) Σ_{j≤K} A_{K-j}^α Y_j f`.
///
/// `α = 0` reduces to plain truncation at degree `K`.
pub fn cesaro_mean(
    f: &LaplaceCoefficients,
    k_trunc: usize,
    alpha: f64,
) -> Result<LaplaceCoefficients> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::param(format!(
            "Cesàro order must be ≥ 0, got {alpha}"
        )));
    }
    let a_k = cesaro_number(k_trunc, alpha);
    Ok(f.scale_degrees(|j| {
        if j > k_trunc {
            0.0
        } else {
            cesaro_number(k_trunc - j, alpha) / a_k
        }
    }))
}

/// Pointwise product: the multiplier of the composed operator.
pub fn compose(m1: &MultiplierSequence, m2: &MultiplierSequence) -> MultiplierSequence {
    let a = m1.clone();
    let b = m2.clone();
    MultiplierSequence::from_fn(format!("({})∘({})", m1.tag(), m2.tag()), move |k| {
        a.value(k) * b.value(k)
    })
}

/// `k ↦ m(k) - 1`, the multiplier of `T - I`.
pub fn subtract_identity(m: &MultiplierSequence) -> MultiplierSequence {
    let inner = m.clone();
    MultiplierSequence::from_fn(format!("({}) - I", m.tag()), move |k| inner.value(k) - 1.0)
}

/// `k ↦ 1 - m(k)`, the multiplier of `I - T`.
pub fn identity_minus(m: &MultiplierSequence) -> MultiplierSequence {
    let inner = m.clone();
    MultiplierSequence::from_fn(format!("I - ({})", m.tag()), move |k| 1.0 - inner.value(k))
}

/// Pointwise integer power `k ↦ m(k)^r`.
pub fn pow(m: &MultiplierSequence, r: usize) -> MultiplierSequence {
    let inner = m.clone();
    MultiplierSequence::from_fn(format!("({})^{r}", m.tag()), move |k| {
        inner.value(k).powi(r as i32)
    })
}
