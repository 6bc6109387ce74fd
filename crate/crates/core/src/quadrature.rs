//! Gauss quadrature for the zonal weight `(sin θ)^{2λ}`, sphere surface
//! measures, and zonal `L^p` norms.
//!
//! Rules are built by the Golub–Welsch method: the Jacobi matrix of the
//! Gegenbauer weight `(1-x²)^{λ-1/2}` has zero diagonal and off-diagonal
//! entries `√b_k` with
//!
//! ```text
//! b_k = k (k + 2λ - 1) / (4 (k + λ)(k + λ - 1)),
//! μ_0 = ∫_{-1}^1 (1-x²)^{λ-1/2} dx = 2^{2λ} Γ(λ+1/2)² / Γ(2λ+1),
//! ```
//!
//! so nodes are eigenvalues and weights come from first eigenvector
//! components, machine-precision accurate without root polishing.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Default θ-sample count for the sup-norm surrogate.
pub const SUP_NORM_GRID: usize = 4096;

/// A Gauss rule on `[-1, 1]` for the weight `(1-x²)^{λ-1/2}`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub lambda: f64,
    /// Nodes in strictly increasing order.
    pub nodes: Vec<f64>,
    /// Strictly positive weights, summing to the weight's total mass.
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Exact for polynomials up to this degree.
    pub fn exactness(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrates `f` over `[a, b]` by the affine image of this rule.
    ///
    /// Only meaningful for the flat weight (`λ = 1/2`, Gauss–Legendre).
    pub fn integrate_on(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.integrate(|x| f(mid + half * x))
    }
}

/// Total mass `μ_0` of the weight `(1-x²)^{λ-1/2}`.
pub fn weight_mass(lambda: f64) -> f64 {
    (2.0 * lambda * std::f64::consts::LN_2 + 2.0 * libm::lgamma(lambda + 0.5)
        - libm::lgamma(2.0 * lambda + 1.0))
    .exp()
}

/// Gauss–Gegenbauer rule with `n` nodes, exact through degree `2n - 1`.
pub fn gauss_gegenbauer(lambda: f64, n: usize) -> Result<GaussRule> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::param(format!("λ must be positive, got {lambda}")));
    }
    if n == 0 {
        return Err(Error::param("quadrature needs at least one node"));
    }
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let kf = k as f64;
        let b = kf * (kf + 2.0 * lambda - 1.0) / (4.0 * (kf + lambda) * (kf + lambda - 1.0));
        let beta = b.sqrt();
        jacobi[(k, k - 1)] = beta;
        jacobi[(k - 1, k)] = beta;
    }
    let eigen = SymmetricEigen::try_new(jacobi, f64::EPSILON, 200_000)
        .ok_or_else(|| Error::Eigensolver(format!("QL iteration stalled for n={n}, λ={lambda}")))?;

    let mu0 = weight_mass(lambda);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eigen.eigenvectors[(0, i)];
            (eigen.eigenvalues[i].clamp(-1.0, 1.0), mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let rule = GaussRule {
        lambda,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    };

    let wsum: f64 = rule.weights.iter().sum();
    if !rule.weights.iter().all(|&w| w > 0.0) || (wsum - mu0).abs() > 1e-12 * mu0 {
        return Err(Error::Eigensolver(format!(
            "weights failed sanity check for n={n}, λ={lambda}: Σw={wsum}, μ0={mu0}"
        )));
    }
    Ok(rule)
}

/// Gauss–Legendre rule (`λ = 1/2`) with `n` nodes.
pub fn gauss_legendre(n: usize) -> Result<GaussRule> {
    gauss_gegenbauer(0.5, n)
}

/// Quadrature on `[0, π]` for the measure `(sin θ)^{2λ} dθ`.
///
/// Obtained from the Gegenbauer rule through `x = cos θ`; the θ-nodes are
/// strictly increasing and the weights carry over unchanged.
#[derive(Debug, Clone)]
pub struct ThetaQuadrature {
    lambda: f64,
    nodes_theta: Vec<f64>,
    nodes_x: Vec<f64>,
    weights: Vec<f64>,
    exactness: usize,
}

impl ThetaQuadrature {
    pub fn build(lambda: f64, n_nodes: usize) -> Result<Self> {
        let rule = gauss_gegenbauer(lambda, n_nodes)?;
        // increasing x means decreasing θ
        let nodes_theta: Vec<f64> = rule.nodes.iter().rev().map(|&x| x.acos()).collect();
        let nodes_x: Vec<f64> = rule.nodes.iter().rev().copied().collect();
        let weights: Vec<f64> = rule.weights.iter().rev().copied().collect();
        Ok(ThetaQuadrature {
            lambda,
            nodes_theta,
            nodes_x,
            weights,
            exactness: rule.exactness(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.nodes_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes_x.is_empty()
    }

    /// θ-nodes, strictly increasing in `(0, π)`.
    pub fn nodes_theta(&self) -> &[f64] {
        &self.nodes_theta
    }

    /// The same nodes as `cos θ`, strictly decreasing.
    pub fn nodes_x(&self) -> &[f64] {
        &self.nodes_x
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Exact for integrands that are polynomials in `cos θ` up to this degree.
    pub fn exactness(&self) -> usize {
        self.exactness
    }

    /// `∫_0^π f(cos θ) (sin θ)^{2λ} dθ ≈ Σ w_i f(x_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes_x
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Surface area of the unit sphere in `R^s`: `2 π^{s/2} / Γ(s/2)`.
///
/// Accepts real `s ≥ 1` so that equator measures for non-integer zonal
/// parameters remain expressible.
pub fn sphere_area(s: f64) -> f64 {
    2.0 * std::f64::consts::PI.powf(s / 2.0) / libm::lgamma(s / 2.0).exp()
}

/// `|S^{d-1}|` for ambient dimension `d ≥ 3`.
pub fn surface_measure(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::param(format!(
            "ambient dimension must be at least 3 (λ > 0), got {d}"
        )));
    }
    Ok(sphere_area(d as f64))
}

/// Measure of the equatorial sphere paired with zonal parameter `λ`,
/// i.e. `|S^{d-2}|` with `d = 2λ + 2`.
pub fn equator_measure(lambda: f64) -> f64 {
    sphere_area(2.0 * lambda + 1.0)
}

/// Sphere bookkeeping for an integer ambient dimension.
#[derive(Debug, Clone, Copy)]
pub struct SphereMeasure {
    pub d: usize,
    pub area: f64,
    pub lambda: f64,
}

impl SphereMeasure {
    pub fn new(d: usize) -> Result<Self> {
        Ok(SphereMeasure {
            d,
            area: surface_measure(d)?,
            lambda: (d as f64 - 2.0) / 2.0,
        })
    }
}

/// Sup of `|φ(cos θ)|` over a dense uniform θ-grid with one refinement pass
/// around the grid maximizer. Deterministic surrogate for the C-norm.
pub fn zonal_sup_norm(phi: impl Fn(f64) -> f64, grid_points: usize) -> f64 {
    let n = grid_points.max(8);
    let step = std::f64::consts::PI / (n - 1) as f64;
    let mut best = 0.0f64;
    let mut best_i = 0usize;
    for i in 0..n {
        let v = phi((step * i as f64).cos()).abs();
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = step * best_i.saturating_sub(1) as f64;
    let hi = (step * (best_i + 1) as f64).min(std::f64::consts::PI);
    for j in 0..=64 {
        let theta = lo + (hi - lo) * j as f64 / 64.0;
        best = best.max(phi(theta.cos()).abs());
    }
    best
}

/// Zonal `L^p_λ` norm
/// `{ |S^{d-2}| ∫_0^π |φ(cos θ)|^p (sin θ)^{2λ} dθ }^{1/p}`,
/// where λ is taken from the quadrature rule. `p = ∞` falls back to the
/// dense-grid sup surrogate.
pub fn zonal_lp_norm(
    phi: impl Fn(f64) -> f64,
    p: f64,
    q: &ThetaQuadrature,
    d: usize,
) -> Result<f64> {
    if d < 3 {
        return Err(Error::param("ambient dimension must be at least 3"));
    }
    if p.is_infinite() && p > 0.0 {
        return Ok(zonal_sup_norm(phi, SUP_NORM_GRID));
    }
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(Error::param(format!("norm exponent must be in [1, ∞], got {p}")));
    }
    let equator = sphere_area(d as f64 - 1.0);
    let integral = q.integrate(|x| phi(x).abs().powf(p));
    Ok((equator * integral).powf(1.0 / p))
}

/// Same norm from samples already evaluated at the rule's `cos θ` nodes.
pub fn zonal_lp_norm_from_samples(
    samples: &[f64],
    p: f64,
    q: &ThetaQuadrature,
    d: usize,
) -> Result<f64> {
    if samples.len() != q.len() {
        return Err(Error::Data(format!(
            "sample count {} does not match rule size {}",
            samples.len(),
            q.len()
        )));
    }
    if d < 3 {
        return Err(Error::param("ambient dimension must be at least 3"));
    }
    if p.is_infinite() && p > 0.0 {
        return Ok(samples.iter().fold(0.0f64, |m, &v| m.max(v.abs())));
    }
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(Error::param(format!("norm exponent must be in [1, ∞], got {p}")));
    }
    let equator = sphere_area(d as f64 - 1.0);
    let integral: f64 = samples
        .iter()
        .zip(q.weights())
        .map(|(&v, &w)| w * v.abs().powf(p))
        .sum();
    Ok((equator * integral).powf(1.0 / p))
}
