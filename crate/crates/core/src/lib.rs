//! Zonal harmonic analysis on the unit sphere.
//!
//! The crate provides the numerical machinery for studying diagonal
//! (multiplier) operators on Laplace series: Gegenbauer polynomial
//! evaluation, Gauss quadrature for the weight `(sin θ)^{2λ}`,
//! analysis/synthesis of zonal functions for any `λ > 0` and of general
//! functions on the 2-sphere, exponential-type multiplier semigroups with
//! their Booleans and generators, physical-space kernel synthesis with
//! rigorous truncation-tail bookkeeping, and smoothness functionals
//! (moduli of smoothness, K-functionals).
//!
//! Conventions used throughout:
//!
//! * The sphere is `S^{d-1} ⊂ R^d` with surface measure
//!   `|S^{d-1}| = 2 π^{d/2} / Γ(d/2)`; the Gegenbauer index is
//!   `λ = (d-2)/2`, so `d = 3` is the Legendre case `λ = 1/2`.
//! * Zonal norms carry the equator prefactor
//!   `‖φ‖_p = { |S^{d-2}| ∫_0^π |φ(cos θ)|^p (sin θ)^{2λ} dθ }^{1/p}`.
//! * Internal bases are orthonormal with respect to those norms; all
//!   classical projection constants appear only as explicit conversion
//!   factors at the interfaces that need them.

pub mod error;
pub mod gegenbauer;
pub mod kernel;
pub mod laplace;
pub mod multiplier;
pub mod quadrature;
pub mod smoothness;

pub use error::{Error, Result};
