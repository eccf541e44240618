//! Finite-difference derivative maps over the (θ₁, θ₂) plane.
//!
//! Central stencils with optional Richardson extrapolation; the mixed second
//! derivative uses the 4-point cross stencil. Cells whose stencil touches a
//! gapless evaluation are marked invalid, never extrapolated.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::Result;
use crate::freefermion::structure_factor;
use crate::quadrature;
use crate::scan::{ScanGrid, ScanMetadata};

/// Derivative stencils used by the phase-diagram figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivKind {
    /// ∂/∂θ₂ by central difference.
    FirstTheta2,
    /// ∂²/∂θ₁∂θ₂ by the 4-point cross stencil.
    SecondMixed,
}

/// One derivative evaluation at (θ₁, θ₂).
pub fn derivative_at<F>(
    f: F,
    kind: DerivKind,
    theta1: f64,
    theta2: f64,
    step: f64,
    richardson: bool,
) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let d = |h: f64| -> Result<f64> {
        match kind {
            DerivKind::FirstTheta2 => {
                Ok((f(theta1, theta2 + h)? - f(theta1, theta2 - h)?) / (2.0 * h))
            }
            DerivKind::SecondMixed => Ok((f(theta1 + h, theta2 + h)?
                - f(theta1 + h, theta2 - h)?
                - f(theta1 - h, theta2 + h)?
                + f(theta1 - h, theta2 - h)?)
                / (4.0 * h * h)),
        }
    };
    if richardson {
        // both stencils have O(h²) error, so (4 D(h/2) - D(h)) / 3 cancels it
        let coarse = d(step)?;
        let fine = d(step / 2.0)?;
        Ok((4.0 * fine - coarse) / 3.0)
    } else {
        d(step)
    }
}

/// Evaluate a derivative of `f` on every cell of a (θ₁, θ₂) grid.
pub fn derivative_map<F>(
    f: F,
    kind: DerivKind,
    theta1_axis: &[f64],
    theta2_axis: &[f64],
    step: f64,
    richardson: bool,
) -> ScanGrid
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let label = match kind {
        DerivKind::FirstTheta2 => "d/dtheta2",
        DerivKind::SecondMixed => "d2/dtheta1 dtheta2",
    };
    let metadata = ScanMetadata::new(0.0, "derivative".into(), step, 0.0);
    let mut grid = ScanGrid::new(
        theta1_axis.to_vec(),
        theta2_axis.to_vec(),
        label.to_string(),
        metadata,
    );
    let n2 = theta2_axis.len();
    let cells: Vec<Option<f64>> = (0..theta1_axis.len() * n2)
        .into_par_iter()
        .map(|idx| {
            let t1 = theta1_axis[idx / n2];
            let t2 = theta2_axis[idx % n2];
            derivative_at(&f, kind, t1, t2, step, richardson).ok()
        })
        .collect();
    grid.set_cells(cells);
    grid
}

/// ∂β⁺/∂θ₂ by differentiating the Berry integrand under the integral sign —
/// the analytic oracle the finite-difference path is checked against.
pub fn dberry_dtheta2_analytic(theta1: f64, theta2: f64, quad_tol: f64) -> Result<f64> {
    crate::observables::berry::check_not_gapless(theta1, theta2)?;
    let s1 = (2.0 * theta1).sin();
    let r = quadrature::adaptive(
        |phi| {
            let (xi, delta) = structure_factor(theta1, theta2, phi);
            let eps_sq = xi.norm_sqr() + delta * delta;
            let eps = eps_sq.sqrt();
            let ddelta = -2.0 * (2.0 * theta2).sin();
            // d|ξ|²/dθ₂ with |ξ|² = s₁² + s₂² - 2 s₁ s₂ cos φ
            let dxi_sq = 4.0 * (2.0 * theta2).cos() * ((2.0 * theta2).sin() - s1 * phi.cos());
            let deps = (dxi_sq + 2.0 * delta * ddelta) / (2.0 * eps);
            (ddelta * eps - delta * deps) / eps_sq
        },
        0.0,
        PI,
        quad_tol,
        quadrature::DEFAULT_MAX_PANELS,
    );
    if !r.converged {
        return Err(crate::error::ChainError::QuadratureToleranceNotMet {
            value: -r.value,
            error: r.error_estimate,
        });
    }
    Ok(-r.value)
}
