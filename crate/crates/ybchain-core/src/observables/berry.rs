//! Ground-state Berry phase, finite-N and thermodynamic limit.
//!
//! As the flux φ winds 0 → 2π each momentum mode picks up the geometric
//! phase -πΔ/ε_k, giving
//!
//! ```text
//! β_g^± = -(π/N) Σ_k Δ/ε_k^±          (lattice)
//! β_g^± = -∫₀^π dφ Δ/ε_φ^±            (N → ∞)
//! ```
//!
//! with β⁺ = -β⁻. The positive band has 0 ≤ Δ/ε ≤ 1, so β⁺ ∈ [-π, 0].

use std::f64::consts::PI;

use crate::error::{ChainError, Result};
use crate::freefermion::{dispersion, momentum_grid, structure_factor, GAPLESS_TOL};
use crate::model::ModelParams;
use crate::quadrature;

/// Quasiparticle band label. Computing one band determines the other by
/// β⁺ = -β⁻.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Plus,
    Minus,
}

impl Band {
    fn sign(self) -> f64 {
        match self {
            Band::Plus => 1.0,
            Band::Minus => -1.0,
        }
    }
}

/// A Berry-phase value together with how it was obtained.
#[derive(Debug, Clone, Copy)]
pub struct BerryPhaseResult {
    pub value: f64,
    pub band: Band,
    /// `Some(N)` for the exact lattice sum, `None` for the thermodynamic limit.
    pub n_cells: Option<usize>,
    /// Quadrature error bound; 0 for the exact finite sum.
    pub quadrature_error_estimate: f64,
}

/// Exact finite-N Berry phase: -(π/N) Σ_k Δ/ε_k for the chosen band.
pub fn berry_phase_finite(params: &ModelParams, band: Band) -> Result<BerryPhaseResult> {
    let grid = momentum_grid(params.n_cells as i64)?;
    let mut sum = 0.0;
    for &angle in &grid.angles {
        let eps = dispersion(params.theta1, params.theta2, angle);
        if eps <= GAPLESS_TOL {
            return Err(ChainError::GaplessPoint);
        }
        let (_, delta) = structure_factor(params.theta1, params.theta2, angle);
        sum += delta / eps;
    }
    Ok(BerryPhaseResult {
        value: -band.sign() * PI * sum / params.n_cells as f64,
        band,
        n_cells: Some(params.n_cells),
        quadrature_error_estimate: 0.0,
    })
}

/// Thermodynamic-limit Berry phase at the default quadrature tolerance.
pub fn berry_phase_thermo(theta1: f64, theta2: f64, band: Band) -> Result<BerryPhaseResult> {
    berry_phase_thermo_with_tol(theta1, theta2, band, quadrature::DEFAULT_ABS_TOL)
}

/// Thermodynamic-limit Berry phase: -∫₀^π Δ/ε dφ by adaptive quadrature.
pub fn berry_phase_thermo_with_tol(
    theta1: f64,
    theta2: f64,
    band: Band,
    quad_tol: f64,
) -> Result<BerryPhaseResult> {
    check_not_gapless(theta1, theta2)?;
    let r = quadrature::adaptive(
        |phi| {
            let (xi, delta) = structure_factor(theta1, theta2, phi);
            delta / (xi.norm_sqr() + delta * delta).sqrt()
        },
        0.0,
        PI,
        quad_tol,
        quadrature::DEFAULT_MAX_PANELS,
    );
    if !r.converged {
        return Err(ChainError::QuadratureToleranceNotMet {
            value: -band.sign() * r.value,
            error: r.error_estimate,
        });
    }
    Ok(BerryPhaseResult {
        value: -band.sign() * r.value,
        band,
        n_cells: None,
        quadrature_error_estimate: r.error_estimate,
    })
}

/// The gapless parameter point is exactly θ₁ = θ₂ = π/2, where Δ = 0 (Δ ≥ 0
/// everywhere and vanishing Δ forces both sin 2θ's to vanish as well).
pub(crate) fn check_not_gapless(theta1: f64, theta2: f64) -> Result<()> {
    let (_, delta) = structure_factor(theta1, theta2, 0.0);
    if delta <= GAPLESS_TOL {
        Err(ChainError::GaplessPoint)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_params;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polarized_limit_is_minus_pi() {
        for &n in &[1i64, 3, 7, 99] {
            let p = validate_params(0.0, 0.0, 0.0, n).unwrap();
            let b = berry_phase_finite(&p, Band::Plus).unwrap();
            assert_abs_diff_eq!(b.value, -PI, epsilon = 1e-13);
        }
        let b = berry_phase_thermo(0.0, 0.0, Band::Plus).unwrap();
        assert_abs_diff_eq!(b.value, -PI, epsilon = 1e-10);
    }

    #[test]
    fn gapless_point_errors() {
        let p = validate_params(PI / 2.0, PI / 2.0, 0.0, 5).unwrap();
        assert!(matches!(
            berry_phase_finite(&p, Band::Plus),
            Err(ChainError::GaplessPoint)
        ));
        assert!(matches!(
            berry_phase_thermo(PI / 2.0, PI / 2.0, Band::Plus),
            Err(ChainError::GaplessPoint)
        ));
    }

    #[test]
    fn dimer_limit_value() {
        // θ₂ = π/2 makes Δ/ε = |cosθ₁| for every momentum
        let p = validate_params(PI / 3.0, PI / 2.0, 0.0, 5).unwrap();
        let b = berry_phase_finite(&p, Band::Plus).unwrap();
        assert_abs_diff_eq!(b.value, -PI / 2.0, epsilon = 1e-13);
        let bt = berry_phase_thermo(PI / 3.0, PI / 2.0, Band::Plus).unwrap();
        assert_abs_diff_eq!(bt.value, -PI / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn bands_are_opposite() {
        let p = validate_params(0.9, 1.4, 0.0, 7).unwrap();
        let plus = berry_phase_finite(&p, Band::Plus).unwrap();
        let minus = berry_phase_finite(&p, Band::Minus).unwrap();
        assert_abs_diff_eq!(plus.value, -minus.value, epsilon = 1e-15);
        assert!((-PI..=0.0).contains(&plus.value));
    }

    #[test]
    fn lattice_converges_to_thermo() {
        let bt = berry_phase_thermo_with_tol(0.8, 1.9, Band::Plus, 1e-12).unwrap();
        let mut prev = f64::INFINITY;
        for &n in &[11i64, 101, 1001] {
            let p = validate_params(0.8, 1.9, 0.0, n).unwrap();
            let b = berry_phase_finite(&p, Band::Plus).unwrap();
            let dev = (b.value - bt.value).abs();
            assert!(dev < prev, "N={n}: deviation {dev} did not shrink from {prev}");
            prev = dev;
        }
        assert!(prev < 1e-6);
    }
}
