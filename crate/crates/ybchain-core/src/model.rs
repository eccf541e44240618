//! Chain parameters and the exactly solvable two-site dimer.
//!
//! The dimer is the analytic anchor for everything else: when θ₂ = π/2 the
//! chain decouples into N isolated (θ₁) dimers, so its eigensystem pins down
//! sign and phase conventions for the full solution.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{ChainError, Result};

/// Basis ordering used for every 4×4 two-site matrix in this crate:
/// index = 2·s_i + s_j with s = 0 for |↑⟩ and s = 1 for |↓⟩, i.e.
/// {|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}.
pub const TWO_SITE_BASIS: [&str; 4] = ["uu", "ud", "du", "dd"];

/// Validated physical parameters of the chain.
///
/// Angles are stored canonicalized: θ₁, θ₂ are folded into [0, π) by
/// `θ mod π` (every chain quantity depends on θ only through cos 2θ and
/// sin 2θ, both π-periodic, and the bond Hamiltonian itself is quadratic in
/// (cos θ, sin θ), hence also π-periodic); φ is folded into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub theta1: f64,
    pub theta2: f64,
    pub phi: f64,
    /// Number of unit cells N (odd); the chain has 2N sites.
    pub n_cells: usize,
    /// ħω, fixed to 1: all energies are reported in these units.
    pub energy_scale: f64,
}

impl ModelParams {
    /// Validate raw user input and canonicalize angles.
    pub fn new(theta1: f64, theta2: f64, phi: f64, n_cells: i64) -> Result<Self> {
        if !(theta1.is_finite() && theta2.is_finite() && phi.is_finite()) {
            return Err(ChainError::InvalidParams(
                "angles must be finite".to_string(),
            ));
        }
        if n_cells < 1 {
            return Err(ChainError::InvalidParams(format!(
                "n_cells must be positive, got {n_cells}"
            )));
        }
        if n_cells % 2 == 0 {
            return Err(ChainError::InvalidParams(format!(
                "n_cells must be odd, got {n_cells}"
            )));
        }
        Ok(ModelParams {
            theta1: fold_theta(theta1),
            theta2: fold_theta(theta2),
            phi: fold_phi(phi),
            n_cells: n_cells as usize,
            energy_scale: 1.0,
        })
    }

    /// Number of sites 2N.
    pub fn n_sites(&self) -> usize {
        2 * self.n_cells
    }
}

/// Validate raw input; alias for [`ModelParams::new`].
pub fn validate_params(theta1: f64, theta2: f64, phi: f64, n_cells: i64) -> Result<ModelParams> {
    ModelParams::new(theta1, theta2, phi, n_cells)
}

/// Fold θ into [0, π). Preserves cos 2θ and sin 2θ exactly (mod rounding),
/// which is all any chain quantity sees.
pub fn fold_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    // rem_euclid can return PI itself for inputs just below a period boundary
    if t >= PI {
        t - PI
    } else {
        t
    }
}

/// Fold φ into [0, 2π).
pub fn fold_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(2.0 * PI);
    if p >= 2.0 * PI {
        p - 2.0 * PI
    } else {
        p
    }
}

/// Eigensystem of a single bond (dimer) Hamiltonian.
///
/// The two nontrivial eigenpairs live in span{|↑↑⟩, |↓↓⟩}; |↑↓⟩ and |↓↑⟩ are
/// annihilated. The minus state, cos(θ/2)|↑↑⟩ + sin(θ/2)e^{-iφ}|↓↓⟩, carries
/// energy −cos θ and is the dimer ground state for cos θ > 0; the plus state
/// is its orthogonal complement with energy +cos θ. The pairing is fixed by
/// dense diagonalization of the 4×4 bond matrix, not by convention.
#[derive(Debug, Clone)]
pub struct DimerEigensystem {
    pub energy_plus: f64,
    pub energy_minus: f64,
    pub state_plus: [C64; 4],
    pub state_minus: [C64; 4],
}

/// Dense 4×4 matrix of the two-site bond Hamiltonian in [`TWO_SITE_BASIS`].
pub fn dimer_hamiltonian(theta: f64, phi: f64) -> [[C64; 4]; 4] {
    let c = theta.cos();
    let s = theta.sin();
    let zero = C64::new(0.0, 0.0);
    let mut h = [[zero; 4]; 4];
    // -cosθ [cosθ (Sz_i + Sz_j) + sinθ (e^{iφ} S+S+ + e^{-iφ} S-S-)]
    h[0][0] = C64::new(-c * c, 0.0); // <uu| Sz_i+Sz_j |uu> = +1
    h[3][3] = C64::new(c * c, 0.0); // <dd| ... |dd> = -1
    let pair = C64::from_polar(-c * s, phi); // <uu|H|dd> via e^{iφ} S+S+
    h[0][3] = pair;
    h[3][0] = pair.conj();
    h
}

/// Analytic eigensystem of [`dimer_hamiltonian`].
pub fn dimer_eigensystem(theta: f64, phi: f64) -> DimerEigensystem {
    let c = theta.cos();
    let half = theta / 2.0;
    let zero = C64::new(0.0, 0.0);
    let phase = C64::from_polar(1.0, -phi);
    let state_minus = [C64::new(half.cos(), 0.0), zero, zero, phase * half.sin()];
    let state_plus = [C64::new(half.sin(), 0.0), zero, zero, -phase * half.cos()];
    DimerEigensystem {
        energy_plus: c,
        energy_minus: -c,
        state_plus,
        state_minus,
    }
}

/// Concurrence of either dimer eigenstate: |sin θ|.
pub fn dimer_concurrence(theta: f64) -> f64 {
    theta.sin().abs()
}
