//! The two momentum-summed correlator functions F and G.
//!
//! Every spin correlator of the chain reduces to
//!
//! ```text
//! F(|n-m|) = (1/N) Σ_k e^{i(2πk/N)(n-m)} (|ū_k|² - |v̄_k|²)
//!          = (1/N) Σ_k cos[(2πk/N)d] Δ/ε_k,
//! G(m-n)   = (1/N) Σ_k e^{-i(2πk/N)(n-m)} 2u_k v_k
//!          = (1/N) Σ_k {sin2θ₂ cos[(2πk/N)(d-1)] - sin2θ₁ cos[(2πk/N)d]}/ε_k,
//! ```
//!
//! with 2u_k v_k = ξ_k*/ε_k and d = m-n. In the thermodynamic limit the sums
//! become (1/π)∫₀^π dφ of the same integrands. F(0) is the Berry phase up to
//! the factor -π.

use num_complex::Complex64 as C64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{ChainError, Result};
use crate::freefermion::{bogoliubov_coefficients, momentum_grid};
use crate::quadrature;

use super::berry::check_not_gapless;

/// Where the momentum average is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelatorMode {
    /// Exact sum over the N-point momentum grid.
    Lattice(usize),
    /// (1/π)∫₀^π dφ by adaptive quadrature.
    Thermodynamic,
}

impl std::fmt::Display for CorrelatorMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorrelatorMode::Lattice(n) => write!(f, "lattice({n})"),
            CorrelatorMode::Thermodynamic => write!(f, "thermodynamic"),
        }
    }
}

/// F and G evaluated at a set of distances, for fixed (θ₁, θ₂, φ).
#[derive(Debug, Clone)]
pub struct CorrelatorSet {
    pub theta1: f64,
    pub theta2: f64,
    pub phi: f64,
    pub mode: CorrelatorMode,
    f_values: BTreeMap<u32, f64>,
    g_values: BTreeMap<i32, f64>,
}

impl CorrelatorSet {
    /// F at separation d ≥ 0.
    pub fn f(&self, d: u32) -> Result<f64> {
        self.f_values
            .get(&d)
            .copied()
            .ok_or_else(|| ChainError::DistanceNotPrecomputed(format!("F({d})")))
    }

    /// G at (possibly negative) argument d = m-n.
    pub fn g(&self, d: i32) -> Result<f64> {
        self.g_values
            .get(&d)
            .copied()
            .ok_or_else(|| ChainError::DistanceNotPrecomputed(format!("G({d})")))
    }

    pub fn f_distances(&self) -> impl Iterator<Item = u32> + '_ {
        self.f_values.keys().copied()
    }

    pub fn g_distances(&self) -> impl Iterator<Item = i32> + '_ {
        self.g_values.keys().copied()
    }
}

/// Evaluate F(|d|) and G(d) for every requested distance, at the default
/// quadrature tolerance in thermodynamic mode.
pub fn ff_functions(
    theta1: f64,
    theta2: f64,
    phi: f64,
    distances: &[i32],
    mode: CorrelatorMode,
) -> Result<CorrelatorSet> {
    ff_functions_with_tol(theta1, theta2, phi, distances, mode, quadrature::DEFAULT_ABS_TOL)
}

/// Same as [`ff_functions`] with an explicit quadrature tolerance.
pub fn ff_functions_with_tol(
    theta1: f64,
    theta2: f64,
    phi: f64,
    distances: &[i32],
    mode: CorrelatorMode,
    quad_tol: f64,
) -> Result<CorrelatorSet> {
    check_not_gapless(theta1, theta2)?;
    let mut f_values = BTreeMap::new();
    let mut g_values = BTreeMap::new();
    match mode {
        CorrelatorMode::Lattice(n_cells) => {
            let grid = momentum_grid(n_cells as i64)?;
            let modes: Vec<_> = grid
                .angles
                .iter()
                .map(|&a| bogoliubov_coefficients(theta1, theta2, a))
                .collect::<Result<_>>()?;
            let n = n_cells as f64;
            for &d in distances {
                let fd = d.unsigned_abs();
                f_values.entry(fd).or_insert_with(|| {
                    // complex defining sum; imaginary parts cancel by k ↔ -k
                    let sum: C64 = modes
                        .iter()
                        .map(|m| {
                            C64::from_polar(1.0, m.k_angle * fd as f64) * (m.delta / m.epsilon)
                        })
                        .sum();
                    let val = sum / n;
                    debug_assert!(val.im.abs() < 1e-12, "Im F({fd}) = {}", val.im);
                    val.re
                });
                g_values.entry(d).or_insert_with(|| {
                    let sum: C64 = modes
                        .iter()
                        .map(|m| {
                            let two_uv = m.xi.conj() / m.epsilon;
                            C64::from_polar(1.0, m.k_angle * d as f64) * two_uv
                        })
                        .sum();
                    let val = sum / n;
                    debug_assert!(val.im.abs() < 1e-12, "Im G({d}) = {}", val.im);
                    val.re
                });
            }
        }
        CorrelatorMode::Thermodynamic => {
            let s1 = (2.0 * theta1).sin();
            let s2 = (2.0 * theta2).sin();
            for &d in distances {
                let fd = d.unsigned_abs();
                if let std::collections::btree_map::Entry::Vacant(e) = f_values.entry(fd) {
                    let r = quadrature::adaptive(
                        |phi_k| {
                            let eps = crate::freefermion::dispersion(theta1, theta2, phi_k);
                            let (_, delta) =
                                crate::freefermion::structure_factor(theta1, theta2, phi_k);
                            (phi_k * fd as f64).cos() * delta / eps
                        },
                        0.0,
                        PI,
                        quad_tol,
                        quadrature::DEFAULT_MAX_PANELS,
                    );
                    if !r.converged {
                        return Err(ChainError::QuadratureToleranceNotMet {
                            value: r.value / PI,
                            error: r.error_estimate,
                        });
                    }
                    e.insert(r.value / PI);
                }
                if let std::collections::btree_map::Entry::Vacant(e) = g_values.entry(d) {
                    let r = quadrature::adaptive(
                        |phi_k| {
                            let eps = crate::freefermion::dispersion(theta1, theta2, phi_k);
                            (s2 * (phi_k * (d - 1) as f64).cos() - s1 * (phi_k * d as f64).cos())
                                / eps
                        },
                        0.0,
                        PI,
                        quad_tol,
                        quadrature::DEFAULT_MAX_PANELS,
                    );
                    if !r.converged {
                        return Err(ChainError::QuadratureToleranceNotMet {
                            value: r.value / PI,
                            error: r.error_estimate,
                        });
                    }
                    e.insert(r.value / PI);
                }
            }
        }
    }
    Ok(CorrelatorSet {
        theta1,
        theta2,
        phi,
        mode,
        f_values,
        g_values,
    })
}
