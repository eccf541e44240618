//! Momentum-space free-fermion solution of the chain.
//!
//! After a Jordan-Wigner transformation the chain becomes a quadratic fermion
//! problem with structure factors
//!
//! ```text
//! ξ_k = sin 2θ₂ e^{i·2πk/N} - sin 2θ₁,    Δ = cos 2θ₁ + cos 2θ₂ + 2,
//! ```
//!
//! quasiparticle bands ε_k = ±√(|ξ_k|² + Δ²), and Bogoliubov coefficients
//! ū, v̄ (and u = -ū, v = v̄*) mixing the odd- and even-sublattice modes. The
//! same code path evaluates lattice momenta 2πk/N and the continuum variable
//! φ ∈ [0, π], mirroring the replacement (1/N)Σ_k → (1/π)∫₀^π dφ.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{ChainError, Result};
use crate::model::ModelParams;

/// Dispersion below this is treated as gapless: Bogoliubov coefficients are
/// genuinely undefined there (0/0), so callers get an error instead of junk.
pub const GAPLESS_TOL: f64 = 1e-14;

/// Reduced momenta k = -M..M with M = (N-1)/2 and their angles 2πk/N.
#[derive(Debug, Clone)]
pub struct MomentumGrid {
    pub n_cells: usize,
    pub k_values: Vec<i64>,
    pub angles: Vec<f64>,
}

/// Build the momentum grid for N (odd) unit cells.
pub fn momentum_grid(n_cells: i64) -> Result<MomentumGrid> {
    if n_cells < 1 || n_cells % 2 == 0 {
        return Err(ChainError::InvalidParams(format!(
            "momentum grid needs odd n_cells >= 1, got {n_cells}"
        )));
    }
    let m = (n_cells - 1) / 2;
    let k_values: Vec<i64> = (-m..=m).collect();
    let angles = k_values
        .iter()
        .map(|&k| 2.0 * PI * k as f64 / n_cells as f64)
        .collect();
    Ok(MomentumGrid {
        n_cells: n_cells as usize,
        k_values,
        angles,
    })
}

/// Everything the solution knows about one momentum.
#[derive(Debug, Clone, Copy)]
pub struct ModeData {
    /// 2πk/N on the lattice, or the continuum variable φ ∈ [0, π].
    pub k_angle: f64,
    pub xi: C64,
    pub delta: f64,
    /// Positive band value √(|ξ|² + Δ²).
    pub epsilon: f64,
    pub u: C64,
    pub v: C64,
    pub u_bar: C64,
    pub v_bar: C64,
}

/// Structure factors (ξ, Δ) at one momentum angle.
pub fn structure_factor(theta1: f64, theta2: f64, k_angle: f64) -> (C64, f64) {
    let s1 = (2.0 * theta1).sin();
    let s2 = (2.0 * theta2).sin();
    let xi = C64::from_polar(s2, k_angle) - C64::new(s1, 0.0);
    let delta = (2.0 * theta1).cos() + (2.0 * theta2).cos() + 2.0;
    (xi, delta)
}

/// Positive quasiparticle band ε = √(|ξ|² + Δ²). Returns 0 at the gapless
/// point; callers needing 1/ε must check.
pub fn dispersion(theta1: f64, theta2: f64, k_angle: f64) -> f64 {
    let (xi, delta) = structure_factor(theta1, theta2, k_angle);
    (xi.norm_sqr() + delta * delta).sqrt()
}

/// Bogoliubov coefficients for the positive band at one momentum.
///
/// ū = (Δ+ε)/√(2ε(Δ+ε)) is constructed real ≥ 0, fixing the U(1) gauge of
/// each mode once and for all; v̄ = -ξ/√(2ε(Δ+ε)), u = -ū, v = v̄*.
pub fn bogoliubov_coefficients(theta1: f64, theta2: f64, k_angle: f64) -> Result<ModeData> {
    let (xi, delta) = structure_factor(theta1, theta2, k_angle);
    let epsilon = (xi.norm_sqr() + delta * delta).sqrt();
    if epsilon <= GAPLESS_TOL {
        return Err(ChainError::GaplessPoint);
    }
    let denom = (2.0 * epsilon * (delta + epsilon)).sqrt();
    let u_bar = C64::new((delta + epsilon) / denom, 0.0);
    let v_bar = -xi / denom;
    Ok(ModeData {
        k_angle,
        xi,
        delta,
        epsilon,
        u: -u_bar,
        v: v_bar.conj(),
        u_bar,
        v_bar,
    })
}

/// Residual of ū u* + v̄ v* at one momentum.
///
/// The coefficient conventions above do not make this combination vanish
/// identically (it equals v̄² - ū², which is complex and generically O(1));
/// this probe exists so the cross-check report can record the measured value
/// rather than asserting a cancellation that the algebra does not provide.
pub fn bogoliubov_cross_residual(theta1: f64, theta2: f64, k_angle: f64) -> Result<C64> {
    let m = bogoliubov_coefficients(theta1, theta2, k_angle)?;
    Ok(m.u_bar * m.u.conj() + m.v_bar * m.v.conj())
}

/// Ground-state (quasiparticle vacuum) energy: -½ Σ_k ε_k over the momentum
/// grid. Extensive in N.
pub fn ground_energy(params: &ModelParams) -> f64 {
    let grid = momentum_grid(params.n_cells as i64).expect("params are validated");
    -0.5 * grid
        .angles
        .iter()
        .map(|&a| dispersion(params.theta1, params.theta2, a))
        .sum::<f64>()
}

/// Thermodynamic-limit ground-state energy density per site:
/// -(1/4π) ∫₀^π ε(φ) dφ.
pub fn ground_energy_density_thermo(theta1: f64, theta2: f64, quad_tol: f64) -> f64 {
    let r = crate::quadrature::adaptive(
        |phi| dispersion(theta1, theta2, phi),
        0.0,
        PI,
        quad_tol,
        crate::quadrature::DEFAULT_MAX_PANELS,
    );
    -r.value / (4.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_params;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_small_cases() {
        let g = momentum_grid(1).unwrap();
        assert_eq!(g.k_values, vec![0]);
        let g = momentum_grid(3).unwrap();
        assert_eq!(g.k_values, vec![-1, 0, 1]);
        let g = momentum_grid(5).unwrap();
        let expect = [-4.0 * PI / 5.0, -2.0 * PI / 5.0, 0.0, 2.0 * PI / 5.0, 4.0 * PI / 5.0];
        for (a, e) in g.angles.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(a, e, epsilon = 1e-15);
        }
        assert!(momentum_grid(4).is_err());
        assert!(momentum_grid(0).is_err());
    }

    #[test]
    fn grid_symmetric_about_zero() {
        let g = momentum_grid(9).unwrap();
        assert_eq!(g.k_values.len(), 9);
        for (&k, &a) in g.k_values.iter().zip(g.angles.iter()) {
            assert!(g.k_values.contains(&-k));
            let ma = g.angles[g.k_values.iter().position(|&x| x == -k).unwrap()];
            assert_abs_diff_eq!(a, -ma, epsilon = 1e-15);
        }
    }

    #[test]
    fn structure_factor_limits() {
        let (xi, delta) = structure_factor(PI / 2.0, PI / 2.0, 1.1);
        assert_abs_diff_eq!(xi.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(delta, 0.0, epsilon = 1e-15);

        let (xi, delta) = structure_factor(0.0, 0.0, 2.2);
        assert_abs_diff_eq!(xi.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(delta, 4.0, epsilon = 1e-15);

        let (xi, delta) = structure_factor(PI / 4.0, PI / 4.0, 0.0);
        assert_abs_diff_eq!(xi.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(delta, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn dispersion_limits() {
        assert_abs_diff_eq!(dispersion(PI / 2.0, PI / 2.0, 0.4), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dispersion(0.0, 0.0, 0.4), 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dispersion(PI / 4.0, PI / 4.0, PI), 8.0f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn coefficients_zero_pairing_limit() {
        let m = bogoliubov_coefficients(0.0, 0.0, 0.9).unwrap();
        assert_abs_diff_eq!(m.u_bar.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.u_bar.im, 0.0);
        assert_abs_diff_eq!(m.v_bar.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coefficients_dimer_limit_moduli() {
        // at θ₂ = π/2: Δ = 2cos²θ₁, ε = 2|cosθ₁|, so
        // |ū|² = (1+|cosθ₁|)/2 and |v̄|² = (1-|cosθ₁|)/2
        for &theta1 in &[0.3f64, 0.9, 1.4, 2.0, 2.8] {
            let c = theta1.cos().abs();
            let m = bogoliubov_coefficients(theta1, PI / 2.0, 0.7).unwrap();
            assert_abs_diff_eq!(m.epsilon, 2.0 * c, epsilon = 1e-13);
            assert_abs_diff_eq!(m.u_bar.norm(), ((1.0 + c) / 2.0).sqrt(), epsilon = 1e-13);
            assert_abs_diff_eq!(m.v_bar.norm(), ((1.0 - c) / 2.0).sqrt(), epsilon = 1e-13);
        }
    }

    #[test]
    fn gapless_mode_is_an_error() {
        assert!(matches!(
            bogoliubov_coefficients(PI / 2.0, PI / 2.0, 0.3),
            Err(ChainError::GaplessPoint)
        ));
    }

    #[test]
    fn ground_energy_limits() {
        let p = validate_params(PI / 2.0, PI / 2.0, 0.0, 5).unwrap();
        assert_abs_diff_eq!(ground_energy(&p), 0.0, epsilon = 1e-14);
        // dimer limit: ε_k = 2|cosθ₁| for every k, so E = -N|cosθ₁|
        for &(theta1, n) in &[(PI / 3.0, 3i64), (0.7, 5), (1.1, 7)] {
            let p = validate_params(theta1, PI / 2.0, 0.0, n).unwrap();
            assert_abs_diff_eq!(
                ground_energy(&p),
                -(n as f64) * theta1.cos().abs(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn energy_density_converges_with_n() {
        // Cauchy differences of E(N)/(2N) must shrink toward the integral
        let e_inf = ground_energy_density_thermo(PI / 4.0, PI / 4.0, 1e-12);
        let dev: Vec<f64> = [3i64, 9, 27, 81]
            .iter()
            .map(|&n| {
                let p = validate_params(PI / 4.0, PI / 4.0, 0.0, n).unwrap();
                (ground_energy(&p) / (2.0 * n as f64) - e_inf).abs()
            })
            .collect();
        for w in dev.windows(2) {
            assert!(w[1] < w[0], "deviations should shrink: {dev:?}");
        }
    }

    #[test]
    fn cross_residual_is_finite_and_generically_nonzero() {
        // documents the measured behaviour of ū u* + v̄ v*: it does not vanish
        let r = bogoliubov_cross_residual(0.8, 1.9, 0.6).unwrap();
        assert!(r.norm().is_finite());
        assert!(r.norm() > 1e-3);
    }
}
