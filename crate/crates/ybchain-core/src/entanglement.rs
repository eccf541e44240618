//! Two-site reduced density matrices and Wootters concurrence.
//!
//! A two-site state of this chain is fully determined by the correlators of
//! [`crate::observables::spin`]:
//!
//! ```text
//! ρ = (I + ⟨σᶻᵢ⟩ σᶻ⊗1 + ⟨σᶻⱼ⟩ 1⊗σᶻ + ⟨σᶻσᶻ⟩ σᶻ⊗σᶻ + Σ_{X,Y∈{x,y}} ⟨σˣᵢσʸⱼ⟩ σˣ⊗σʸ) / 4
//! ```
//!
//! in the fixed basis {|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}. The concurrence is
//! C = max{r₁-r₂-r₃-r₄, 0} with r_i the descending square roots of the
//! eigenvalues of ρρ̃, ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ). The r_i are computed through
//! the Hermitian product √ρ ρ̃ √ρ, which has the same spectrum as ρρ̃ but
//! needs only Hermitian eigensolves.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{ChainError, Result};
use crate::observables::correlators::CorrelatorSet;
use crate::observables::spin::{spin_correlators, PairKind, SpinCorrelatorRecord};

/// Eigenvalues of ρ (and of ρρ̃) in [-PSD_CLIP, 0) are rounding debris and
/// get clipped to zero; anything below PSD_FLOOR means the input correlators
/// were inconsistent.
const PSD_CLIP: f64 = 1e-10;
const PSD_FLOOR: f64 = -1e-8;

/// A 4×4 two-site density matrix with its pair labeling.
#[derive(Debug, Clone)]
pub struct TwoSiteState {
    /// Density matrix in the basis {|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}.
    pub matrix: DMatrix<C64>,
    /// Which translation class the pair belongs to; `None` for a generic
    /// exact-diagonalization pair that is not one of the three classes.
    pub pair_kind: Option<PairKind>,
    pub phi: f64,
}

/// Wootters concurrence with its intermediate quantities.
#[derive(Debug, Clone, Copy)]
pub struct ConcurrenceResult {
    /// max(raw, 0), clamped into [0, 1] up to rounding.
    pub value: f64,
    /// Square roots of the eigenvalues of ρρ̃, descending.
    pub r_roots: [f64; 4],
    /// r₁ - r₂ - r₃ - r₄ before clamping.
    pub raw: f64,
}

fn pauli(which: char) -> DMatrix<C64> {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match which {
        'i' => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        'x' => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        'y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'z' => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => unreachable!(),
    }
}

fn kron2(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

/// Assemble the two-site density matrix from a correlator record.
pub fn two_site_rho(
    rec: &SpinCorrelatorRecord,
    pair_kind: PairKind,
    phi: f64,
) -> Result<TwoSiteState> {
    let rho = rho_from_record(rec);
    validate_density_matrix(&rho)?;
    Ok(TwoSiteState {
        matrix: rho,
        pair_kind: Some(pair_kind),
        phi,
    })
}

pub(crate) fn rho_from_record(rec: &SpinCorrelatorRecord) -> DMatrix<C64> {
    let id = pauli('i');
    let x = pauli('x');
    let y = pauli('y');
    let z = pauli('z');
    let mut m = kron2(&id, &id);
    m += kron2(&z, &id) * C64::new(rec.z_i, 0.0);
    m += kron2(&id, &z) * C64::new(rec.z_j, 0.0);
    m += kron2(&z, &z) * C64::new(rec.zz, 0.0);
    m += kron2(&x, &x) * C64::new(rec.xx, 0.0);
    m += kron2(&x, &y) * C64::new(rec.xy, 0.0);
    m += kron2(&y, &x) * C64::new(rec.yx, 0.0);
    m += kron2(&y, &y) * C64::new(rec.yy, 0.0);
    m / C64::new(4.0, 0.0)
}

/// Hermiticity, unit trace, and positivity (up to the numerical floor).
pub(crate) fn validate_density_matrix(rho: &DMatrix<C64>) -> Result<()> {
    let herm_dev = (rho - rho.adjoint()).norm();
    if herm_dev > 1e-12 {
        return Err(ChainError::InvalidParams(format!(
            "density matrix not Hermitian: deviation {herm_dev:.3e}"
        )));
    }
    let trace_dev = (rho.trace() - C64::new(1.0, 0.0)).norm();
    if trace_dev > 1e-12 {
        return Err(ChainError::InvalidParams(format!(
            "density matrix trace deviates from 1 by {trace_dev:.3e}"
        )));
    }
    let eigs = SymmetricEigen::new(rho.clone()).eigenvalues;
    if let Some(&min) = eigs
        .iter()
        .min_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"))
    {
        if min < PSD_FLOOR {
            return Err(ChainError::NotPsd(min));
        }
    }
    Ok(())
}

/// Wootters concurrence of a validated two-site state.
pub fn concurrence(state: &TwoSiteState) -> Result<ConcurrenceResult> {
    concurrence_of_matrix(&state.matrix)
}

/// Wootters concurrence of a raw 4×4 density matrix.
pub fn concurrence_of_matrix(rho: &DMatrix<C64>) -> Result<ConcurrenceResult> {
    assert_eq!(rho.nrows(), 4);
    assert_eq!(rho.ncols(), 4);
    let yy = kron2(&pauli('y'), &pauli('y'));
    let rho_tilde = &yy * rho.map(|z| z.conj()) * &yy;

    // √ρ from the (clipped) Hermitian eigendecomposition
    let eig = SymmetricEigen::new(rho.clone());
    let mut sqrt_vals = eig.eigenvalues.clone();
    for v in sqrt_vals.iter_mut() {
        if *v < PSD_FLOOR {
            return Err(ChainError::NotPsd(*v));
        }
        *v = v.max(0.0).sqrt();
    }
    let u = &eig.eigenvectors;
    let sqrt_rho = u * DMatrix::from_diagonal(&sqrt_vals.map(C64::from)) * u.adjoint();

    // √ρ ρ̃ √ρ is Hermitian PSD with the spectrum of ρρ̃
    let mut m = &sqrt_rho * rho_tilde * &sqrt_rho;
    let m_adj = m.adjoint();
    m = (m + m_adj) * C64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    for l in lambdas.iter_mut() {
        if *l < -PSD_CLIP {
            return Err(ChainError::NotPsd(*l));
        }
        *l = l.max(0.0);
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let r: Vec<f64> = lambdas.iter().map(|l| l.sqrt()).collect();
    let raw = r[0] - r[1] - r[2] - r[3];
    Ok(ConcurrenceResult {
        value: raw.max(0.0),
        r_roots: [r[0], r[1], r[2], r[3]],
        raw,
    })
}

/// Closed-form nearest-neighbor concurrences:
/// C_o(1) = max{0, |G(0)| - ½|F(0)² + G(0)² - 1|} for the odd-even pair and
/// C_e(1) = max{0, |G(1)| - ½|F(0)² + G(1)² - 1|} for the even-odd pair.
pub fn concurrence_closed_form(c: &CorrelatorSet, kind: PairKind) -> Result<f64> {
    let f0 = c.f(0)?;
    let g = match kind {
        PairKind::OddEven => c.g(0)?,
        PairKind::EvenOdd => c.g(1)?,
        PairKind::OddOddDistance2 => {
            return Err(ChainError::InvalidParams(
                "closed form exists only for nearest-neighbor pairs".to_string(),
            ))
        }
    };
    Ok((g.abs() - 0.5 * (f0 * f0 + g * g - 1.0).abs()).max(0.0))
}

/// Next-nearest-neighbor (odd-odd, distance 2) concurrence through the full
/// Wootters pipeline. Expected to vanish identically across the phase
/// diagram; the returned `raw` field shows how far below zero it sits.
pub fn concurrence_distance2(c: &CorrelatorSet) -> Result<ConcurrenceResult> {
    let rec = spin_correlators(c, PairKind::OddOddDistance2)?;
    let state = two_site_rho(&rec, PairKind::OddOddDistance2, c.phi)?;
    concurrence(&state)
}
