//! Coefficient-space representation of sphere functions.
//!
//! Two kinds of expansions share one container:
//!
//! * **Zonal** (any `λ > 0`): coefficients `b_k` against the basis
//!   `e_k(cos θ) = √(c(k,λ)/|S^{d-2}|) P_k^λ(cos θ)`, orthonormal in the
//!   zonal `L²_λ` norm, with `d = 2λ + 2`.
//! * **General S²** (`λ = 1/2` only): coefficients `f_{k,m}` against real
//!   orthonormal spherical harmonics, `k = 0..N`, `|m| ≤ k`.
//!
//! With orthonormal bases Parseval is literal: the coefficient 2-norm is
//! the `L²` norm. Classical projection constants never enter the storage;
//! they belong to the operators that need them.

use crate::error::{Error, Result};
use crate::gegenbauer;
use crate::quadrature::{self, ThetaQuadrature};

/// Which basis a coefficient vector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    Zonal,
    GeneralS2,
}

/// A function represented by finitely many Laplace coefficients.
#[derive(Debug, Clone)]
pub struct LaplaceCoefficients {
    kind: CoeffKind,
    lambda: f64,
    n_max: usize,
    values: Vec<f64>,
}

fn s2_index(k: usize, m: i64) -> usize {
    k * k + (k as i64 + m) as usize
}

impl LaplaceCoefficients {
    /// Zonal coefficients `b_0..b_N` for parameter `λ`.
    pub fn zonal(lambda: f64, values: Vec<f64>) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::param(format!("λ must be positive, got {lambda}")));
        }
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data(
                "zonal coefficients must be finite and nonempty".into(),
            ));
        }
        Ok(LaplaceCoefficients {
            kind: CoeffKind::Zonal,
            lambda,
            n_max: values.len() - 1,
            values,
        })
    }

    /// General S² coefficients, flattened as `k² + k + m`, length `(N+1)²`.
    pub fn general_s2(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        let n_plus_1 = (len as f64).sqrt().round() as usize;
        if n_plus_1 == 0 || n_plus_1 * n_plus_1 != len {
            return Err(Error::Data(format!(
                "general-S² coefficient length must be a perfect square, got {len}"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("coefficients must be finite".into()));
        }
        Ok(LaplaceCoefficients {
            kind: CoeffKind::GeneralS2,
            lambda: 0.5,
            n_max: n_plus_1 - 1,
            values,
        })
    }

    pub fn zeros_zonal(lambda: f64, n_max: usize) -> Result<Self> {
        Self::zonal(lambda, vec![0.0; n_max + 1])
    }

    pub fn zeros_general_s2(n_max: usize) -> Self {
        LaplaceCoefficients {
            kind: CoeffKind::GeneralS2,
            lambda: 0.5,
            n_max,
            values: vec![0.0; (n_max + 1) * (n_max + 1)],
        }
    }

    /// The unit-norm zonal eigenfunction concentrated at degree `j`.
    pub fn unit_zonal(lambda: f64, n_max: usize, j: usize) -> Result<Self> {
        if j > n_max {
            return Err(Error::param(format!(
                "degree {j} exceeds band limit {n_max}"
            )));
        }
        let mut values = vec![0.0; n_max + 1];
        values[j] = 1.0;
        Self::zonal(lambda, values)
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn max_degree(&self) -> usize {
        self.n_max
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Zonal coefficient `b_k` (zero beyond the band limit).
    pub fn zonal_coeff(&self, k: usize) -> f64 {
        debug_assert_eq!(self.kind, CoeffKind::Zonal);
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// General coefficient `f_{k,m}` (zero beyond the band limit).
    pub fn s2_coeff(&self, k: usize, m: i64) -> f64 {
        debug_assert_eq!(self.kind, CoeffKind::GeneralS2);
        if k > self.n_max || m.unsigned_abs() as usize > k {
            return 0.0;
        }
        self.values[s2_index(k, m)]
    }

    pub fn set_s2_coeff(&mut self, k: usize, m: i64, v: f64) -> Result<()> {
        if self.kind != CoeffKind::GeneralS2 || k > self.n_max || m.unsigned_abs() as usize > k {
            return Err(Error::Data(format!("index ({k},{m}) out of range")));
        }
        self.values[s2_index(k, m)] = v;
        Ok(())
    }

    /// Sum of squared coefficients within degree `k`.
    pub fn degree_energy(&self, k: usize) -> f64 {
        match self.kind {
            CoeffKind::Zonal => self.zonal_coeff(k).powi(2),
            CoeffKind::GeneralS2 => {
                if k > self.n_max {
                    return 0.0;
                }
                let lo = k * k;
                let hi = (k + 1) * (k + 1);
                self.values[lo..hi].iter().map(|v| v * v).sum()
            }
        }
    }

    /// Applies a per-degree scalar: every order within degree `k` is
    /// multiplied by `m(k)`. This is the diagonal-operator action.
    pub fn scale_degrees(&self, m: impl Fn(usize) -> f64) -> Self {
        let mut out = self.clone();
        match self.kind {
            CoeffKind::Zonal => {
                for (k, v) in out.values.iter_mut().enumerate() {
                    *v *= m(k);
                }
            }
            CoeffKind::GeneralS2 => {
                for k in 0..=self.n_max {
                    let factor = m(k);
                    for v in &mut out.values[k * k..(k + 1) * (k + 1)] {
                        *v *= factor;
                    }
                }
            }
        }
        out
    }

    /// Keeps only degree `k`; a degree beyond the band limit yields zeros.
    pub fn project_degree(&self, k: usize) -> Self {
        self.scale_degrees(|j| if j == k { 1.0 } else { 0.0 })
    }

    /// Coefficient 2-norm; equals the `L²` norm by orthonormality.
    pub fn parseval_l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::Data("coefficient kinds differ".into()));
        }
        if (self.lambda - other.lambda).abs() > 1e-14 {
            return Err(Error::Data(format!(
                "λ mismatch: {} vs {}",
                self.lambda, other.lambda
            )));
        }
        Ok(())
    }

    fn binary(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.compatible(other)?;
        let n = self.n_max.max(other.n_max);
        match self.kind {
            CoeffKind::Zonal => {
                let mut out = Self::zeros_zonal(self.lambda, n)?;
                for (k, v) in out.values.iter_mut().enumerate() {
                    *v = op(self.zonal_coeff(k), other.zonal_coeff(k));
                }
                Ok(out)
            }
            CoeffKind::GeneralS2 => {
                let mut out = Self::zeros_general_s2(n);
                for k in 0..=n {
                    for m in -(k as i64)..=(k as i64) {
                        out.values[s2_index(k, m)] = op(self.s2_coeff(k, m), other.s2_coeff(k, m));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= c;
        }
        out
    }

    /// Serializes to the documented CSV layout: a `kind,lambda,N` header
    /// line, a metadata line with those three values, then `k,value` rows
    /// (zonal) or `k,m,value` rows (general S²). Floats use the shortest
    /// round-trip decimal form, so parsing reproduces the coefficients
    /// bit-exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,lambda,N\n");
        match self.kind {
            CoeffKind::Zonal => {
                out.push_str(&format!("zonal,{},{}\n", self.lambda, self.n_max));
                for (k, v) in self.values.iter().enumerate() {
                    out.push_str(&format!("{k},{v}\n"));
                }
            }
            CoeffKind::GeneralS2 => {
                out.push_str(&format!("general-s2,{},{}\n", self.lambda, self.n_max));
                for k in 0..=self.n_max {
                    for m in -(k as i64)..=(k as i64) {
                        out.push_str(&format!("{k},{m},{}\n", self.values[s2_index(k, m)]));
                    }
                }
            }
        }
        out
    }

    /// Parses the `to_csv` layout.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Data("empty CSV".into()))?;
        if header.trim() != "kind,lambda,N" {
            return Err(Error::Data(format!("unexpected header: {header}")));
        }
        let meta = lines
            .next()
            .ok_or_else(|| Error::Data("missing metadata row".into()))?;
        let parts: Vec<&str> = meta.trim().split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Data(format!("bad metadata row: {meta}")));
        }
        let lambda: f64 = parts[1]
            .parse()
            .map_err(|_| Error::Data(format!("bad λ: {}", parts[1])))?;
        let n_max: usize = parts[2]
            .parse()
            .map_err(|_| Error::Data(format!("bad N: {}", parts[2])))?;
        match parts[0] {
            "zonal" => {
                let mut values = vec![0.0; n_max + 1];
                for line in lines {
                    let cols: Vec<&str> = line.trim().split(',').collect();
                    if cols.len() != 2 {
                        return Err(Error::Data(format!("bad zonal row: {line}")));
                    }
                    let k: usize = cols[0]
                        .parse()
                        .map_err(|_| Error::Data(format!("bad degree: {}", cols[0])))?;
                    if k > n_max {
                        return Err(Error::Data(format!("degree {k} beyond N={n_max}")));
                    }
                    values[k] = cols[1]
                        .parse()
                        .map_err(|_| Error::Data(format!("bad value: {}", cols[1])))?;
                }
                Self::zonal(lambda, values)
            }
            "general-s2" => {
                let mut values = vec![0.0; (n_max + 1) * (n_max + 1)];
                for line in lines {
                    let cols: Vec<&str> = line.trim().split(',').collect();
                    if cols.len() != 3 {
                        return Err(Error::Data(format!("bad general row: {line}")));
                    }
                    let k: usize = cols[0]
                        .parse()
                        .map_err(|_| Error::Data(format!("bad degree: {}", cols[0])))?;
                    let m: i64 = cols[1]
                        .parse()
                        .map_err(|_| Error::Data(format!("bad order: {}", cols[1])))?;
                    if k > n_max || m.unsigned_abs() as usize > k {
                        return Err(Error::Data(format!("index ({k},{m}) out of range")));
                    }
                    values[s2_index(k, m)] = cols[2]
                        .parse()
                        .map_err(|_| Error::Data(format!("bad value: {}", cols[2])))?;
                }
                Self::general_s2(values)
            }
            other => Err(Error::Data(format!("unknown kind: {other}"))),
        }
    }
}

/// Scale factor turning `P_k^λ` into the orthonormal zonal basis element.
pub(crate) fn zonal_basis_scale(k: usize, lambda: f64) -> f64 {
    (gegenbauer::norm_constant(k, lambda).expect("validated λ")
        / quadrature::equator_measure(lambda))
    .sqrt()
}

/// Zonal analysis: `b_k = ⟨φ, e_k⟩_{L²_λ}` by quadrature.
///
/// Exact (to rounding) for band-limited `φ` of degree ≤ N when the rule
/// integrates products through degree `2N`.
pub fn analyze_zonal(
    phi: impl Fn(f64) -> f64,
    lambda: f64,
    n_max: usize,
    q: &ThetaQuadrature,
) -> Result<LaplaceCoefficients> {
    if (q.lambda() - lambda).abs() > 1e-14 {
        return Err(Error::param(format!(
            "quadrature λ {} does not match requested λ {}",
            q.lambda(),
            lambda
        )));
    }
    let equator = quadrature::equator_measure(lambda);
    let scales: Vec<f64> = (0..=n_max).map(|k| zonal_basis_scale(k, lambda)).collect();
    let mut coeffs = vec![0.0; n_max + 1];
    for (&x, &w) in q.nodes_x().iter().zip(q.weights()) {
        let v = phi(x);
        // accumulate P_k(x) across all degrees in one recurrence pass
        let mut pm1 = 0.0;
        let mut p = 1.0;
        for (k, cf) in coeffs.iter_mut().enumerate() {
            if k >= 1 {
                let kf = k as f64;
                let next = if k == 1 {
                    2.0 * lambda * x
                } else {
                    (2.0 * (kf + lambda - 1.0) * x * p - (kf + 2.0 * lambda - 2.0) * pm1) / kf
                };
                pm1 = p;
                p = next;
            }
            *cf += w * v * p * scales[k];
        }
    }
    for c in &mut coeffs {
        *c *= equator;
    }
    LaplaceCoefficients::zonal(lambda, coeffs)
}

/// Zonal synthesis at `x = cos θ`.
pub fn synth_zonal(c: &LaplaceCoefficients, x: f64) -> Result<f64> {
    if c.kind() != CoeffKind::Zonal {
        return Err(Error::Data("synth_zonal needs zonal coefficients".into()));
    }
    if !x.is_finite() || x.abs() > 1.0 + 1e-12 {
        return Err(Error::param(format!(
            "argument must lie in [-1, 1], got {x}"
        )));
    }
    let lambda = c.lambda();
    let scaled: Vec<f64> = c
        .values()
        .iter()
        .enumerate()
        .map(|(k, &b)| b * zonal_basis_scale(k, lambda))
        .collect();
    Ok(gegenbauer::eval_series(&scaled, lambda, x.clamp(-1.0, 1.0)))
}

/// Zonal synthesis on many points at once.
pub fn synth_zonal_at(c: &LaplaceCoefficients, xs: &[f64]) -> Result<Vec<f64>> {
    if c.kind() != CoeffKind::Zonal {
        return Err(Error::Data("synth_zonal needs zonal coefficients".into()));
    }
    let lambda = c.lambda();
    let scaled: Vec<f64> = c
        .values()
        .iter()
        .enumerate()
        .map(|(k, &b)| b * zonal_basis_scale(k, lambda))
        .collect();
    Ok(xs
        .iter()
        .map(|&x| gegenbauer::eval_series(&scaled, lambda, x.clamp(-1.0, 1.0)))
        .collect())
}

/// Fully normalized associated Legendre values for all `0 ≤ m ≤ l ≤ lmax`
/// at a single `x = cos θ`; index `l(l+1)/2 + m`.
///
/// Seeded so that `Y_{l,0} = P̄_l^0` and `Y_{l,m≠0} = √2 P̄_l^m trig(mφ)`
/// are orthonormal on S²; standard stable recurrence (diagonal, then up in
/// `l`), no Condon–Shortley phase.
pub(crate) fn plm_bar_table(lmax: usize, x: f64, sin_theta: f64) -> Vec<f64> {
    let idx = |l: usize, m: usize| l * (l + 1) / 2 + m;
    let mut t = vec![0.0; (lmax + 1) * (lmax + 2) / 2];
    t[0] = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    for m in 1..=lmax {
        t[idx(m, m)] = t[idx(m - 1, m - 1)]
            * ((2.0 * m as f64 + 1.0) / (2.0 * m as f64)).sqrt()
            * sin_theta;
    }
    for m in 0..lmax {
        t[idx(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * x * t[idx(m, m)];
    }
    for m in 0..=lmax {
        for l in (m + 2)..=lmax {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0) * (lf - 1.0) - mf * mf)
                / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0))
                .sqrt();
            t[idx(l, m)] = a * (x * t[idx(l - 1, m)] - b * t[idx(l - 2, m)]);
        }
    }
    t
}

/// Product grid on S²: Gauss–Legendre colatitudes × equispaced longitudes.
#[derive(Debug, Clone)]
pub struct SphereGridS2 {
    colat_x: Vec<f64>,
    colat_sin: Vec<f64>,
    colat_w: Vec<f64>,
    n_lon: usize,
    exact_degree: usize,
}

impl SphereGridS2 {
    /// A grid integrating spherical polynomials exactly through `degree`.
    pub fn with_exactness(degree: usize) -> Result<Self> {
        let n_colat = degree / 2 + 1;
        let n_lon = degree + 1;
        let rule = quadrature::gauss_legendre(n_colat)?;
        Ok(SphereGridS2 {
            colat_sin: rule
                .nodes
                .iter()
                .map(|&x| (1.0 - x * x).max(0.0).sqrt())
                .collect(),
            colat_x: rule.nodes,
            colat_w: rule.weights,
            n_lon,
            exact_degree: degree,
        })
    }

    /// Grid sized for analysis of band-limited functions of degree ≤ `n`,
    /// i.e. exact through `2n`.
    pub fn for_band_limit(n: usize) -> Result<Self> {
        Self::with_exactness(2 * n)
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn n_colat(&self) -> usize {
        self.colat_x.len()
    }

    pub fn n_lon(&self) -> usize {
        self.n_lon
    }

    pub fn n_points(&self) -> usize {
        self.n_colat() * self.n_lon
    }

    pub fn colat_x(&self) -> &[f64] {
        &self.colat_x
    }

    pub fn colat_sin(&self) -> &[f64] {
        &self.colat_sin
    }

    pub fn colat_w(&self) -> &[f64] {
        &self.colat_w
    }

    pub fn lon(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * j as f64 / self.n_lon as f64
    }

    /// Quadrature weight of any point on ring `i`: `w_i · 2π / M`.
    pub fn point_weight(&self, i: usize) -> f64 {
        self.colat_w[i] * 2.0 * std::f64::consts::PI / self.n_lon as f64
    }
}

/// Analysis on S²: orthonormal real-spherical-harmonic coefficients of `f`,
/// sampled as `f(cos θ, φ)`. Requires the grid exact through `2 n_max`.
pub fn analyze_s2(
    f: impl Fn(f64, f64) -> f64,
    n_max: usize,
    grid: &SphereGridS2,
) -> Result<LaplaceCoefficients> {
    if grid.exact_degree() < 2 * n_max {
        return Err(Error::param(format!(
            "grid exact through degree {} cannot analyze band limit {n_max}",
            grid.exact_degree()
        )));
    }
    let m_lon = grid.n_lon();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut out = LaplaceCoefficients::zeros_general_s2(n_max);

    // Fourier sums in φ per colatitude ring, then Legendre sums over rings.
    for i in 0..grid.n_colat() {
        let x = grid.colat_x()[i];
        let ring: Vec<f64> = (0..m_lon).map(|j| f(x, grid.lon(j))).collect();
        let mut cos_sum = vec![0.0; n_max + 1];
        let mut sin_sum = vec![0.0; n_max + 1];
        for (j, &v) in ring.iter().enumerate() {
            let phi = grid.lon(j);
            for m in 0..=n_max {
                let arg = m as f64 * phi;
                cos_sum[m] += v * arg.cos();
                sin_sum[m] += v * arg.sin();
            }
        }
        let w = grid.point_weight(i);
        let table = plm_bar_table(n_max, x, grid.colat_sin()[i]);
        let idx = |l: usize, m: usize| l * (l + 1) / 2 + m;
        for k in 0..=n_max {
            for m in 0..=k {
                let plm = table[idx(k, m)];
                if m == 0 {
                    out.values[s2_index(k, 0)] += w * plm * cos_sum[0];
                } else {
                    out.values[s2_index(k, m as i64)] += w * sqrt2 * plm * cos_sum[m];
                    out.values[s2_index(k, -(m as i64))] += w * sqrt2 * plm * sin_sum[m];
                }
            }
        }
    }
    Ok(out)
}

/// Pointwise synthesis on S² at `(cos θ, φ)`.
pub fn synth_s2(c: &LaplaceCoefficients, x: f64, phi: f64) -> Result<f64> {
    if c.kind() != CoeffKind::GeneralS2 {
        return Err(Error::Data("synth_s2 needs general-S² coefficients".into()));
    }
    let n = c.max_degree();
    let sin_theta = (1.0 - x * x).max(0.0).sqrt();
    let table = plm_bar_table(n, x, sin_theta);
    let idx = |l: usize, m: usize| l * (l + 1) / 2 + m;
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += c.s2_coeff(k, 0) * table[idx(k, 0)];
        for m in 1..=k {
            let plm = table[idx(k, m)];
            let arg = m as f64 * phi;
            acc += c.s2_coeff(k, m as i64) * sqrt2 * plm * arg.cos();
            acc += c.s2_coeff(k, -(m as i64)) * sqrt2 * plm * arg.sin();
        }
    }
    Ok(acc)
}

/// Synthesis on a whole grid, row-major `[i * M + j]`.
pub fn synth_s2_grid(c: &LaplaceCoefficients, grid: &SphereGridS2) -> Result<Vec<f64>> {
    if c.kind() != CoeffKind::GeneralS2 {
        return Err(Error::Data("synth_s2 needs general-S² coefficients".into()));
    }
    let mut out = vec![0.0; grid.n_points()];
    for i in 0..grid.n_colat() {
        for j in 0..grid.n_lon() {
            out[i * grid.n_lon() + j] = synth_s2(c, grid.colat_x()[i], grid.lon(j))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn legendre_quadrature(n: usize) -> ThetaQuadrature {
        ThetaQuadrature::build(0.5, n).unwrap()
    }

    #[test]
    fn constant_analyzes_to_total_mass() {
        let q = legendre_quadrature(24);
        let c = analyze_zonal(|_| 1.0, 0.5, 8, &q).unwrap();
        assert_abs_diff_eq!(c.zonal_coeff(0), (4.0 * PI).sqrt(), epsilon = 1e-12);
        for k in 1..=8 {
            assert!(c.zonal_coeff(k).abs() < 1e-12, "k={k}: {}", c.zonal_coeff(k));
        }
    }

    #[test]
    fn basis_element_analyzes_to_single_coeff() {
        let q = legendre_quadrature(24);
        let c = analyze_zonal(|x| gegenbauer::eval(3, 0.5, x).unwrap(), 0.5, 8, &q).unwrap();
        for k in 0..=8 {
            if k == 3 {
                assert!(c.zonal_coeff(k).abs() > 0.1);
            } else {
                assert!(c.zonal_coeff(k).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn x_squared_has_even_low_degrees_only() {
        let q = legendre_quadrature(24);
        let c = analyze_zonal(|x| x * x, 0.5, 10, &q).unwrap();
        for k in 0..=10 {
            let b = c.zonal_coeff(k);
            if k == 0 || k == 2 {
                assert!(b.abs() > 1e-3, "k={k} should be active, got {b}");
            } else {
                assert!(b.abs() < 1e-12, "k={k} should vanish, got {b}");
            }
        }
    }

    #[test]
    fn zonal_round_trip() {
        // analyze(synth(c)) = c to 1e-10 for random band-limited input
        let n = 16usize;
        for &lambda in &[0.5f64, 1.0, 1.5] {
            let q = ThetaQuadrature::build(lambda, 40).unwrap();
            let mut state = 0x2545F4914F6CDD1Du64;
            let mut rand = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            };
            let values: Vec<f64> = (0..=n).map(|_| rand()).collect();
            let c = LaplaceCoefficients::zonal(lambda, values).unwrap();
            let back = analyze_zonal(|x| synth_zonal(&c, x).unwrap(), lambda, n, &q).unwrap();
            for k in 0..=n {
                assert!(
                    (back.zonal_coeff(k) - c.zonal_coeff(k)).abs() <= 1e-10,
                    "λ={lambda} k={k}: {} vs {}",
                    back.zonal_coeff(k),
                    c.zonal_coeff(k)
                );
            }
            // synth∘analyze on grid values
            let xs: Vec<f64> = (0..50).map(|i| -1.0 + 2.0 * i as f64 / 49.0).collect();
            let direct = synth_zonal_at(&c, &xs).unwrap();
            let round = synth_zonal_at(&back, &xs).unwrap();
            for (a, b) in direct.iter().zip(&round) {
                assert!((a - b).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn zero_and_constant_synthesis() {
        let c = LaplaceCoefficients::zeros_zonal(0.5, 5).unwrap();
        assert_eq!(synth_zonal(&c, 0.3).unwrap(), 0.0);
        let mut v = vec![0.0; 6];
        v[0] = 2.0;
        let c = LaplaceCoefficients::zonal(0.5, v).unwrap();
        let at_a = synth_zonal(&c, -0.8).unwrap();
        let at_b = synth_zonal(&c, 0.9).unwrap();
        assert_abs_diff_eq!(at_a, at_b, epsilon = 1e-14);
    }

    #[test]
    fn parseval_matches_quadrature_l2_norm() {
        let n = 12usize;
        let q = legendre_quadrature(32);
        let mut state = 0xDEADBEEFu64;
        let mut rand = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..5 {
            let values: Vec<f64> = (0..=n).map(|_| rand()).collect();
            let c = LaplaceCoefficients::zonal(0.5, values).unwrap();
            let by_parseval = c.parseval_l2_norm();
            let by_grid =
                quadrature::zonal_lp_norm(|x| synth_zonal(&c, x).unwrap(), 2.0, &q, 3).unwrap();
            assert!(
                (by_parseval - by_grid).abs() <= 1e-8 * by_parseval.max(1e-30),
                "{by_parseval} vs {by_grid}"
            );
        }
    }

    #[test]
    fn projections_partition_identity() {
        let c = LaplaceCoefficients::zonal(0.5, vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        // idempotent
        let p2 = c.project_degree(2);
        let p2p2 = p2.project_degree(2);
        assert_eq!(p2.values(), p2p2.values());
        // mutually annihilating
        let p1_of_p2 = p2.project_degree(1);
        assert!(p1_of_p2.values().iter().all(|&v| v == 0.0));
        // sum to identity
        let mut sum = LaplaceCoefficients::zeros_zonal(0.5, 3).unwrap();
        for k in 0..=3 {
            sum = sum.add(&c.project_degree(k)).unwrap();
        }
        assert_eq!(sum.values(), c.values());
        // beyond the band limit: zero
        assert!(c.project_degree(9).values().iter().all(|&v| v == 0.0));
        // k=0 on constant unchanged, k=1 on constant zero
        let constant = LaplaceCoefficients::zonal(0.5, vec![1.5, 0.0]).unwrap();
        assert_eq!(constant.project_degree(0).values(), constant.values());
        assert!(constant
            .project_degree(1)
            .values()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn analysis_is_linear() {
        let q = legendre_quadrature(24);
        let f = |x: f64| x * x - 0.3;
        let g = |x: f64| 0.7 * x + x * x * x;
        let a = analyze_zonal(f, 0.5, 6, &q).unwrap();
        let b = analyze_zonal(g, 0.5, 6, &q).unwrap();
        let combo = analyze_zonal(|x| 2.0 * f(x) - 0.5 * g(x), 0.5, 6, &q).unwrap();
        let expect = a.scale(2.0).sub(&b.scale(0.5)).unwrap();
        for k in 0..=6 {
            assert_abs_diff_eq!(combo.zonal_coeff(k), expect.zonal_coeff(k), epsilon = 1e-12);
        }
    }

    #[test]
    fn plm_orthonormal_rows() {
        // ∫_{-1}^1 P̄_l^m P̄_{l'}^m dx = δ_{l l'} / (2π)
        let lmax = 12usize;
        let rule = quadrature::gauss_legendre(2 * lmax + 2).unwrap();
        let idx = |l: usize, m: usize| l * (l + 1) / 2 + m;
        for m in 0..=lmax {
            for l1 in m..=lmax {
                for l2 in m..=lmax {
                    let val = rule.integrate(|x| {
                        let t = plm_bar_table(lmax, x, (1.0 - x * x).max(0.0).sqrt());
                        t[idx(l1, m)] * t[idx(l2, m)]
                    });
                    let want = if l1 == l2 { 1.0 / (2.0 * PI) } else { 0.0 };
                    assert!(
                        (val - want).abs() <= 1e-12,
                        "m={m} l1={l1} l2={l2}: {val} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn s2_constant_and_zsquared() {
        let grid = SphereGridS2::for_band_limit(6).unwrap();
        let c = analyze_s2(|_, _| 1.0, 6, &grid).unwrap();
        assert_abs_diff_eq!(c.s2_coeff(0, 0), (4.0 * PI).sqrt(), epsilon = 1e-12);
        for k in 1..=6 {
            assert!(c.degree_energy(k) < 1e-24);
        }

        // f(x,y,z) = z² = cos²θ: only (0,0) and (2,0) survive
        let c = analyze_s2(|x, _| x * x, 6, &grid).unwrap();
        assert!(c.s2_coeff(0, 0).abs() > 0.1);
        assert!(c.s2_coeff(2, 0).abs() > 0.1);
        let active: f64 = c.s2_coeff(0, 0).powi(2) + c.s2_coeff(2, 0).powi(2);
        assert_abs_diff_eq!(
            active.sqrt(),
            c.parseval_l2_norm(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn s2_harmonic_basis_element_round_trip() {
        let grid = SphereGridS2::for_band_limit(5).unwrap();
        // take f = Y_{2,-1} via synthesis of a unit coefficient
        let mut unit = LaplaceCoefficients::zeros_general_s2(5);
        unit.set_s2_coeff(2, -1, 1.0).unwrap();
        let c = analyze_s2(|x, p| synth_s2(&unit, x, p).unwrap(), 5, &grid).unwrap();
        for k in 0..=5 {
            for m in -(k as i64)..=(k as i64) {
                let want = if (k, m) == (2, -1) { 1.0 } else { 0.0 };
                assert!(
                    (c.s2_coeff(k, m) - want).abs() <= 1e-12,
                    "({k},{m}): {}",
                    c.s2_coeff(k, m)
                );
            }
        }
    }

    #[test]
    fn s2_parseval_on_random_input() {
        let n = 8usize;
        let grid = SphereGridS2::for_band_limit(n).unwrap();
        let mut state = 0xABCDEFu64;
        let mut rand = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let values: Vec<f64> = (0..(n + 1) * (n + 1)).map(|_| rand()).collect();
        let c = LaplaceCoefficients::general_s2(values).unwrap();
        let back = analyze_s2(|x, p| synth_s2(&c, x, p).unwrap(), n, &grid).unwrap();
        for (a, b) in c.values().iter().zip(back.values()) {
            assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
        }
        // Parseval against direct grid quadrature of |f|²
        let vals = synth_s2_grid(&c, &grid).unwrap();
        let mut integral = 0.0;
        for i in 0..grid.n_colat() {
            for j in 0..grid.n_lon() {
                integral += grid.point_weight(i) * vals[i * grid.n_lon() + j].powi(2);
            }
        }
        assert!(
            (integral.sqrt() - c.parseval_l2_norm()).abs() <= 1e-8 * c.parseval_l2_norm(),
            "{} vs {}",
            integral.sqrt(),
            c.parseval_l2_norm()
        );
    }

    #[test]
    fn grid_exactness_precondition_enforced() {
        let grid = SphereGridS2::for_band_limit(4).unwrap();
        assert!(analyze_s2(|_, _| 1.0, 5, &grid).is_err());
    }

    #[test]
    fn csv_round_trip_zonal_bit_exact() {
        let c = LaplaceCoefficients::zonal(
            0.5,
            vec![1.0 / 3.0, -2.7182818284590455e-7, 0.1 + 0.2, 1e-300],
        )
        .unwrap();
        let back = LaplaceCoefficients::from_csv(&c.to_csv()).unwrap();
        assert_eq!(c.values(), back.values());
        assert_eq!(c.lambda(), back.lambda());
        // serialization is stable byte-for-byte
        assert_eq!(c.to_csv(), back.to_csv());
    }

    #[test]
    fn csv_round_trip_general_bit_exact() {
        let mut c = LaplaceCoefficients::zeros_general_s2(3);
        for (i, v) in c.values.iter_mut().enumerate() {
            *v = (i as f64 + 0.1).sin() * 1e-3;
        }
        let back = LaplaceCoefficients::from_csv(&c.to_csv()).unwrap();
        assert_eq!(c.values(), back.values());
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(LaplaceCoefficients::from_csv("").is_err());
        assert!(LaplaceCoefficients::from_csv("kind,lambda,N\nwible,0.5,2\n").is_err());
        assert!(LaplaceCoefficients::from_csv("kind,lambda,N\nzonal,0.5,1\n7,1.0\n").is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip_property(values in prop::collection::vec(-1e3f64..1e3, 1..20)) {
            let c = LaplaceCoefficients::zonal(1.5, values).unwrap();
            let back = LaplaceCoefficients::from_csv(&c.to_csv()).unwrap();
            prop_assert_eq!(c.values(), back.values());
        }

        #[test]
        fn parseval_scales(values in prop::collection::vec(-10.0f64..10.0, 1..12), s in -3.0f64..3.0) {
            let c = LaplaceCoefficients::zonal(0.5, values).unwrap();
            let scaled = c.scale(s);
            prop_assert!((scaled.parseval_l2_norm() - s.abs() * c.parseval_l2_norm()).abs() <= 1e-10);
        }
    }
}
