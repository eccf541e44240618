//! Brute-force exact diagonalization of the spin chain on small sizes.
//!
//! This module is the independent oracle: it never touches the free-fermion
//! solution. The Hamiltonian acts directly in the 2^{2N}-dimensional spin
//! basis (site n ↔ bit n-1, bit 0 = |↑⟩, bit 1 = |↓⟩), bond by bond:
//! a diagonal field part -cos²θ (Sᶻᵢ + Sᶻⱼ) and a pair flip part
//! -cosθ sinθ (e^{iφ}|↑↑⟩⟨↓↓| + e^{-iφ}|↓↓⟩⟨↑↑|) on the bond.
//!
//! Periodic chain of 2N sites: θ₁ on bonds (2n-1, 2n), θ₂ on bonds
//! (2n, 2n+1) including the wrap bond (2N, 1). A single-cell chain (N = 1)
//! is one isolated θ₁ dimer: the would-be θ₂ bond connects the same two
//! sites and is omitted rather than double-counted.
//!
//! Finite-size comparisons against the analytic solution are convergence
//! tests, not equality tests (the momentum diagonalization drops the
//! Jordan-Wigner boundary term), except in the exactly decoupled limits.

pub mod lanczos;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::entanglement::{concurrence_of_matrix, validate_density_matrix, TwoSiteState};
use crate::error::{ChainError, Result};
use crate::freefermion::ground_energy_density_thermo;
use crate::model::ModelParams;
use crate::observables::correlators::{ff_functions_with_tol, CorrelatorMode};
use crate::observables::spin::PairKind;

use lanczos::{dot, lowest_eigenpair, norm, pseudo_random_state};

/// Full-spectrum (dense) work is capped at 2N ≤ 10 sites.
pub const DENSE_CAP_SITES: usize = 10;
/// Lanczos ground states are capped at 2N ≤ 16 sites.
pub const LANCZOS_CAP_SITES: usize = 16;
/// Reduced density matrices are capped at 2N ≤ 12 sites.
pub const RDM_CAP_SITES: usize = 12;

/// Two eigenvalues closer than this flag a degenerate ground state.
pub const DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy)]
struct Bond {
    /// 0-based bit positions of the two sites.
    i: usize,
    j: usize,
    theta: f64,
}

/// The spin Hamiltonian as a sparse action on state vectors.
#[derive(Debug, Clone)]
pub struct SpinHamiltonian {
    pub theta1: f64,
    pub theta2: f64,
    pub phi: f64,
    pub n_cells: usize,
    pub n_sites: usize,
    bonds: Vec<Bond>,
}

/// Build the periodic chain Hamiltonian. Angles and flux come from `params`;
/// the chain size is the explicit `n_cells` (which, unlike the momentum
/// grid, may be even — the oracle has no parity restriction).
pub fn build_hamiltonian(params: &ModelParams, n_cells: usize) -> Result<SpinHamiltonian> {
    let n_sites = 2 * n_cells;
    if n_cells == 0 {
        return Err(ChainError::InvalidParams("n_cells must be >= 1".into()));
    }
    if n_sites > LANCZOS_CAP_SITES {
        return Err(ChainError::SizeCapExceeded {
            requested: n_sites,
            cap: LANCZOS_CAP_SITES,
        });
    }
    let mut bonds = Vec::with_capacity(2 * n_cells);
    for n in 0..n_cells {
        bonds.push(Bond {
            i: 2 * n,
            j: 2 * n + 1,
            theta: params.theta1,
        });
    }
    if n_cells > 1 {
        for n in 0..n_cells {
            bonds.push(Bond {
                i: 2 * n + 1,
                j: (2 * n + 2) % n_sites,
                theta: params.theta2,
            });
        }
    }
    Ok(SpinHamiltonian {
        theta1: params.theta1,
        theta2: params.theta2,
        phi: params.phi,
        n_cells,
        n_sites,
        bonds,
    })
}

impl SpinHamiltonian {
    pub fn dim(&self) -> usize {
        1usize << self.n_sites
    }

    /// H|v⟩ without materializing the matrix.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        let mut out = vec![C64::new(0.0, 0.0); dim];
        let raise = C64::from_polar(1.0, self.phi); // e^{iφ} S⁺S⁺ amplitude sign applied below
        for bond in &self.bonds {
            let c = bond.theta.cos();
            let s = bond.theta.sin();
            let flip = -c * s;
            let mask = (1usize << bond.i) | (1usize << bond.j);
            for (b, &amp) in v.iter().enumerate() {
                if amp == C64::new(0.0, 0.0) {
                    continue;
                }
                let bi = (b >> bond.i) & 1;
                let bj = (b >> bond.j) & 1;
                // Sᶻ eigenvalue is +1/2 for bit 0, -1/2 for bit 1
                let sz_sum = 1.0 - (bi + bj) as f64;
                out[b] += -c * c * sz_sum * amp;
                if bi == 1 && bj == 1 {
                    // S⁺S⁺ lifts |↓↓⟩ to |↑↑⟩ with e^{iφ}
                    out[b & !mask] += flip * raise * amp;
                } else if bi == 0 && bj == 0 {
                    // S⁻S⁻ drops |↑↑⟩ to |↓↓⟩ with e^{-iφ}
                    out[b | mask] += flip * raise.conj() * amp;
                }
            }
        }
        out
    }

    /// Materialized matrix; only for 2N ≤ DENSE_CAP_SITES.
    pub fn dense(&self) -> Result<DMatrix<C64>> {
        if self.n_sites > DENSE_CAP_SITES {
            return Err(ChainError::SizeCapExceeded {
                requested: self.n_sites,
                cap: DENSE_CAP_SITES,
            });
        }
        let dim = self.dim();
        let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        let raise = C64::from_polar(1.0, self.phi);
        for bond in &self.bonds {
            let c = bond.theta.cos();
            let s = bond.theta.sin();
            let flip = -c * s;
            let mask = (1usize << bond.i) | (1usize << bond.j);
            for b in 0..dim {
                let bi = (b >> bond.i) & 1;
                let bj = (b >> bond.j) & 1;
                let sz_sum = 1.0 - (bi + bj) as f64;
                m[(b, b)] += C64::new(-c * c * sz_sum, 0.0);
                if bi == 1 && bj == 1 {
                    m[(b & !mask, b)] += flip * raise;
                } else if bi == 0 && bj == 0 {
                    m[(b | mask, b)] += flip * raise.conj();
                }
            }
        }
        Ok(m)
    }

    /// Max deviation of ⟨x|H|y⟩ from conj(⟨y|H|x⟩) on deterministic
    /// pseudo-random vector pairs.
    pub fn hermiticity_residual(&self, pairs: usize) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for p in 0..pairs {
            let x = pseudo_random_state(dim, 1000 + p as u64);
            let y = pseudo_random_state(dim, 2000 + p as u64);
            let hx = self.apply(&x);
            let hy = self.apply(&y);
            let a = dot(&x, &hy);
            let b = dot(&y, &hx);
            worst = worst.max((a - b.conj()).norm());
        }
        worst
    }

    /// ‖[H, Πσᶻ] v‖ on a deterministic pseudo-random vector.
    pub fn z2_commutator_residual(&self, seed: u64) -> f64 {
        let dim = self.dim();
        let v = pseudo_random_state(dim, seed);
        let pv = apply_parity(&v);
        let hpv = self.apply(&pv);
        let hv = self.apply(&v);
        let phv = apply_parity(&hv);
        let diff: f64 = hpv
            .iter()
            .zip(phv.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        diff.sqrt()
    }
}

/// Πσᶻ acts diagonally: (-1)^{number of down spins}.
pub fn apply_parity(v: &[C64]) -> Vec<C64> {
    v.iter()
        .enumerate()
        .map(|(b, &amp)| {
            if (b.count_ones() & 1) == 1 {
                -amp
            } else {
                amp
            }
        })
        .collect()
}

/// Lowest eigenpair of the chain with convergence metadata.
#[derive(Debug, Clone)]
pub struct GroundStateSolution {
    pub energy: f64,
    pub vector: Vec<C64>,
    pub residual: f64,
    pub degeneracy_flag: bool,
    /// Second-lowest eigenvalue estimate used for the degeneracy flag.
    pub second_energy: f64,
}

/// Ground state by dense diagonalization (small dims) or restarted Lanczos.
pub fn ground_state(h: &SpinHamiltonian) -> Result<GroundStateSolution> {
    let dim = h.dim();
    let tol = 1e-11;
    if dim <= 256 {
        let m = dense_any_size(h);
        let eig = SymmetricEigen::new(m);
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let energy = eig.eigenvalues[order[0]];
        let second_energy = eig.eigenvalues[order[1]];
        let vector: Vec<C64> = eig.eigenvectors.column(order[0]).iter().copied().collect();
        let hv = h.apply(&vector);
        let residual = hv
            .iter()
            .zip(vector.iter())
            .map(|(a, b)| (a - energy * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        Ok(GroundStateSolution {
            energy,
            vector,
            residual,
            degeneracy_flag: (second_energy - energy).abs() < DEGENERACY_TOL,
            second_energy,
        })
    } else {
        let matvec = |v: &[C64]| h.apply(v);
        let ground = lowest_eigenpair(&matvec, dim, &[], tol, 42)?;
        let excited = lowest_eigenpair(&matvec, dim, &[ground.vector.clone()], 1e-8, 17)?;
        Ok(GroundStateSolution {
            energy: ground.value,
            degeneracy_flag: (excited.value - ground.value).abs() < DEGENERACY_TOL,
            second_energy: excited.value,
            residual: ground.residual,
            vector: ground.vector,
        })
    }
}

// dense matrix without the DENSE_CAP guard, for internal small-dim use
fn dense_any_size(h: &SpinHamiltonian) -> DMatrix<C64> {
    let dim = h.dim();
    let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for b in 0..dim {
        let mut e = vec![C64::new(0.0, 0.0); dim];
        e[b] = C64::new(1.0, 0.0);
        let col = h.apply(&e);
        for (r, val) in col.into_iter().enumerate() {
            m[(r, b)] = val;
        }
    }
    m
}

/// ‖H|Ψ¹⟩‖ and ‖H|Ψ²⟩‖ for the two Néel product states |↑↓⟩^{⊗N}, |↓↑⟩^{⊗N}.
pub fn neel_zero_mode_check(h: &SpinHamiltonian) -> (f64, f64) {
    let dim = h.dim();
    // |↑↓↑↓...⟩: even sites (bits 1, 3, ...) down
    let mut neel1 = 0usize;
    let mut neel2 = 0usize;
    for site in 0..h.n_sites {
        if site % 2 == 1 {
            neel1 |= 1 << site;
        } else {
            neel2 |= 1 << site;
        }
    }
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[neel1] = C64::new(1.0, 0.0);
    let r1 = norm(&h.apply(&v));
    v[neel1] = C64::new(0.0, 0.0);
    v[neel2] = C64::new(1.0, 0.0);
    let r2 = norm(&h.apply(&v));
    (r1, r2)
}

/// Sorted full spectrum (dense path).
pub fn full_spectrum(h: &SpinHamiltonian) -> Result<Vec<f64>> {
    let m = h.dense()?;
    let mut vals: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Max absolute difference between the sorted spectra at two flux values.
pub fn isospectrality_check(params: &ModelParams, phi_a: f64, phi_b: f64) -> Result<f64> {
    let pa = ModelParams { phi: phi_a, ..*params };
    let pb = ModelParams { phi: phi_b, ..*params };
    let sa = full_spectrum(&build_hamiltonian(&pa, params.n_cells)?)?;
    let sb = full_spectrum(&build_hamiltonian(&pb, params.n_cells)?)?;
    Ok(sa
        .iter()
        .zip(sb.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Max-entry deviation of g(φ/2) H(φ) g(φ/2)† from H(0), where g(φ) is the
/// sublattice-uniform z rotation Π_l e^{-i σᶻ_l φ/2}.
pub fn gauge_conjugation_residual(params: &ModelParams, n_cells: usize) -> Result<f64> {
    let h_phi = build_hamiltonian(params, n_cells)?.dense()?;
    let p0 = ModelParams { phi: 0.0, ..*params };
    let h_zero = build_hamiltonian(&p0, n_cells)?.dense()?;
    let dim = h_phi.nrows();
    let n_sites = 2 * n_cells;
    // g(φ/2)|b⟩ = exp(-i (φ/4) Σ_l σᶻ_l(b)) |b⟩
    let phases: Vec<C64> = (0..dim)
        .map(|b| {
            let downs = (b as u64).count_ones() as i64;
            let sz_sum = n_sites as i64 - 2 * downs;
            C64::from_polar(1.0, -params.phi / 4.0 * sz_sum as f64)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            let conj = phases[r] * h_phi[(r, c)] * phases[c].conj();
            worst = worst.max((conj - h_zero[(r, c)]).norm());
        }
    }
    Ok(worst)
}

/// Two-site reduced density matrix of a ground-state vector; sites are
/// 1-based, ordered (site_i = first qubit, site_j = second qubit).
pub fn reduced_density_matrix(
    solution: &GroundStateSolution,
    n_sites: usize,
    site_i: usize,
    site_j: usize,
    phi: f64,
) -> Result<TwoSiteState> {
    if n_sites > RDM_CAP_SITES {
        return Err(ChainError::SizeCapExceeded {
            requested: n_sites,
            cap: RDM_CAP_SITES,
        });
    }
    if site_i == site_j || site_i < 1 || site_j < 1 || site_i > n_sites || site_j > n_sites {
        return Err(ChainError::InvalidSite {
            site: site_i.max(site_j),
            n_sites,
        });
    }
    let dim = 1usize << n_sites;
    assert_eq!(solution.vector.len(), dim);
    let bit_i = site_i - 1;
    let bit_j = site_j - 1;
    let mask = (1usize << bit_i) | (1usize << bit_j);
    let mut rho = DMatrix::from_element(4, 4, C64::new(0.0, 0.0));
    for (x, &amp) in solution.vector.iter().enumerate() {
        if amp == C64::new(0.0, 0.0) {
            continue;
        }
        let si = (x >> bit_i) & 1;
        let sj = (x >> bit_j) & 1;
        let row = 2 * si + sj; // ↑=0 ↓=1 in the {uu, ud, du, dd} ordering
        let rest = x & !mask;
        for col in 0..4usize {
            let ti = (col >> 1) & 1;
            let tj = col & 1;
            let y = rest | (ti << bit_i) | (tj << bit_j);
            rho[(row, col)] += amp * solution.vector[y].conj();
        }
    }
    validate_density_matrix(&rho)?;
    Ok(TwoSiteState {
        matrix: rho,
        pair_kind: classify_pair(site_i, site_j, n_sites),
        phi,
    })
}

/// Map a site pair onto one of the translation classes, if it is one.
pub fn classify_pair(site_i: usize, site_j: usize, n_sites: usize) -> Option<PairKind> {
    let (a, b) = (site_i.min(site_j), site_i.max(site_j));
    let adjacent = b == a + 1 || (a == 1 && b == n_sites);
    if adjacent {
        // the wrap pair (2N, 1) is an even-odd bond
        let first = if b == a + 1 { a } else { n_sites };
        return if first % 2 == 1 {
            Some(PairKind::OddEven)
        } else {
            Some(PairKind::EvenOdd)
        };
    }
    if b == a + 2 && a % 2 == 1 {
        return Some(PairKind::OddOddDistance2);
    }
    None
}

/// ⟨σᶻ_site⟩ in a ground-state vector (1-based site).
pub fn sigma_z_expectation(solution: &GroundStateSolution, site: usize) -> f64 {
    let bit = site - 1;
    solution
        .vector
        .iter()
        .enumerate()
        .map(|(b, amp)| {
            let sign = if (b >> bit) & 1 == 1 { -1.0 } else { 1.0 };
            sign * amp.norm_sqr()
        })
        .sum()
}

/// Which analytic quantity a size-sweep comparison targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleQuantity {
    GroundEnergyDensity,
    PairConcurrence,
    SigmaZ,
}

impl OracleQuantity {
    pub fn name(self) -> &'static str {
        match self {
            OracleQuantity::GroundEnergyDensity => "ground-energy-density",
            OracleQuantity::PairConcurrence => "pair-concurrence",
            OracleQuantity::SigmaZ => "sigma-z",
        }
    }
}

/// Per-size entry of a comparison report.
#[derive(Debug, Clone)]
pub struct SizeDeviation {
    pub n_cells: usize,
    pub ed_value: f64,
    pub analytic_value: f64,
    pub deviation: f64,
    /// Set when the ground state was degenerate and the comparison skipped.
    pub skipped: bool,
}

/// ED-vs-analytic comparison across chain sizes.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub quantity: OracleQuantity,
    pub entries: Vec<SizeDeviation>,
    /// Deviations shrink with N (exact-zero plateaus count as shrinking).
    pub shrinking: bool,
}

/// Compare an ED quantity against its thermodynamic analytic value over a
/// list of chain sizes (in unit cells).
pub fn oracle_compare(
    params: &ModelParams,
    quantity: OracleQuantity,
    sizes: &[usize],
) -> Result<ComparisonReport> {
    let (t1, t2, phi) = (params.theta1, params.theta2, params.phi);
    let analytic = match quantity {
        OracleQuantity::GroundEnergyDensity => ground_energy_density_thermo(t1, t2, 1e-12),
        OracleQuantity::PairConcurrence => {
            let c = ff_functions_with_tol(t1, t2, phi, &[0, 1], CorrelatorMode::Thermodynamic, 1e-12)?;
            crate::entanglement::concurrence_closed_form(&c, PairKind::OddEven)?
        }
        OracleQuantity::SigmaZ => {
            let c = ff_functions_with_tol(t1, t2, phi, &[0], CorrelatorMode::Thermodynamic, 1e-12)?;
            c.f(0)?
        }
    };
    let mut entries = Vec::new();
    for &n in sizes {
        let n_sites = 2 * n;
        let cap = match quantity {
            OracleQuantity::PairConcurrence => RDM_CAP_SITES,
            _ => LANCZOS_CAP_SITES,
        };
        if n_sites > cap {
            return Err(ChainError::SizeCapExceeded {
                requested: n_sites,
                cap,
            });
        }
        let h = build_hamiltonian(params, n)?;
        let sol = ground_state(&h)?;
        if sol.degeneracy_flag && quantity != OracleQuantity::GroundEnergyDensity {
            entries.push(SizeDeviation {
                n_cells: n,
                ed_value: f64::NAN,
                analytic_value: analytic,
                deviation: f64::NAN,
                skipped: true,
            });
            continue;
        }
        let ed_value = match quantity {
            OracleQuantity::GroundEnergyDensity => sol.energy / n_sites as f64,
            OracleQuantity::PairConcurrence => {
                let rho = reduced_density_matrix(&sol, n_sites, 1, 2, phi)?;
                concurrence_of_matrix(&rho.matrix)?.value
            }
            OracleQuantity::SigmaZ => sigma_z_expectation(&sol, 1),
        };
        entries.push(SizeDeviation {
            n_cells: n,
            ed_value,
            analytic_value: analytic,
            deviation: (ed_value - analytic).abs(),
            skipped: false,
        });
    }
    let devs: Vec<f64> = entries
        .iter()
        .filter(|e| !e.skipped)
        .map(|e| e.deviation)
        .collect();
    let shrinking = devs
        .windows(2)
        .all(|w| w[1] < w[0] || (w[0] < 1e-10 && w[1] < 1e-10));
    Ok(ComparisonReport {
        quantity,
        entries,
        shrinking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_params;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn two_site_chain_is_a_single_dimer() {
        let p = validate_params(0.8, 1.9, 0.4, 1).unwrap();
        let h = build_hamiltonian(&p, 1).unwrap();
        let spec = full_spectrum(&h).unwrap();
        let c = 0.8f64.cos();
        let expect = {
            let mut v = vec![-c, 0.0, 0.0, c];
            v.sort_by(f64::total_cmp);
            v
        };
        for (a, b) in spec.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn hamiltonian_vanishes_at_the_critical_point() {
        let p = validate_params(PI / 2.0, PI / 2.0, 0.9, 3).unwrap();
        let h = build_hamiltonian(&p, 3).unwrap();
        let m = h.dense().unwrap();
        assert!(m.norm() < 1e-14);
        let sol = ground_state(&h).unwrap();
        assert_abs_diff_eq!(sol.energy, 0.0, epsilon = 1e-14);
        assert!(sol.degeneracy_flag);
    }

    #[test]
    fn hermitian_on_random_vectors() {
        let p = validate_params(0.7, 2.1, 1.3, 3).unwrap();
        let h = build_hamiltonian(&p, 3).unwrap();
        assert!(h.hermiticity_residual(4) < 1e-12);
    }

    #[test]
    fn polarized_ground_state() {
        let p = validate_params(0.0, 0.0, 0.0, 3).unwrap();
        let h = build_hamiltonian(&p, 3).unwrap();
        let sol = ground_state(&h).unwrap();
        // every site sits in two bonds, each contributing -cos²θ·1 = -1 per
        // bond at full polarization: E = -2N bonds × 1 = -6
        assert_abs_diff_eq!(sol.energy, -6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.vector[0].norm(), 1.0, epsilon = 1e-10);
        assert!(!sol.degeneracy_flag);
    }

    #[test]
    fn dimer_limit_energy_and_rdm() {
        // θ₂ = π/2 decouples the chain into N isolated dimers
        let p = validate_params(PI / 3.0, PI / 2.0, 0.6, 3).unwrap();
        let h = build_hamiltonian(&p, 4).unwrap(); // 2N = 8
        let sol = ground_state(&h).unwrap();
        assert_abs_diff_eq!(sol.energy, -4.0 * (PI / 3.0).cos(), epsilon = 1e-10);

        let p6 = validate_params(PI / 3.0, PI / 2.0, 0.6, 3).unwrap();
        let h6 = build_hamiltonian(&p6, 3).unwrap();
        let sol6 = ground_state(&h6).unwrap();
        let rho = reduced_density_matrix(&sol6, 6, 1, 2, 0.6).unwrap();
        // pure dimer ground state: ρ(1,2) = |E⁻⟩⟨E⁻|
        let sys = crate::model::dimer_eigensystem(PI / 3.0, 0.6);
        for r in 0..4 {
            for c in 0..4 {
                let expect = sys.state_minus[r] * sys.state_minus[c].conj();
                assert_abs_diff_eq!((rho.matrix[(r, c)] - expect).norm(), 0.0, epsilon = 1e-9);
            }
        }
        let conc = concurrence_of_matrix(&rho.matrix).unwrap();
        assert_abs_diff_eq!(conc.value, (PI / 3.0).sin(), epsilon = 1e-9);
    }

    #[test]
    fn neel_states_are_zero_modes() {
        for &(t1, t2, phi) in &[(0.3, 1.9, 0.0), (1.1, 0.6, 2.2), (2.4, 2.9, 4.0)] {
            let p = validate_params(t1, t2, phi, 3).unwrap();
            let h = build_hamiltonian(&p, 3).unwrap();
            let (r1, r2) = neel_zero_mode_check(&h);
            assert!(r1 < 1e-12 && r2 < 1e-12, "residuals {r1} {r2}");
        }
    }

    #[test]
    fn isospectral_in_flux() {
        let p = validate_params(0.9, 1.7, 0.0, 3).unwrap();
        let dev = isospectrality_check(&p, 0.0, 1.3).unwrap();
        assert!(dev < 1e-10, "spectral deviation {dev}");
        let same = isospectrality_check(&p, 0.7, 0.7).unwrap();
        assert_abs_diff_eq!(same, 0.0);
    }

    #[test]
    fn gauge_rotation_removes_the_flux() {
        let p = validate_params(0.8, 1.2, 1.9, 1).unwrap();
        let dev = gauge_conjugation_residual(&p, 2).unwrap();
        assert!(dev < 1e-12, "gauge residual {dev}");
    }

    #[test]
    fn z2_symmetry_commutator() {
        for seed in 0..3 {
            let p = validate_params(1.3, 0.4, 0.8, 3).unwrap();
            let h = build_hamiltonian(&p, 3).unwrap();
            assert!(h.z2_commutator_residual(seed) < 1e-12);
        }
    }

    #[test]
    fn ground_state_respects_z2() {
        let p = validate_params(0.9, 1.7, 0.5, 3).unwrap();
        let h = build_hamiltonian(&p, 3).unwrap();
        let sol = ground_state(&h).unwrap();
        if !sol.degeneracy_flag {
            let pv = apply_parity(&sol.vector);
            let overlap = dot(&sol.vector, &pv).norm();
            assert_abs_diff_eq!(overlap, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn lanczos_path_matches_dense_path() {
        // 2N = 10 exercised through both code paths
        let p = validate_params(0.9, 1.7, 0.3, 5).unwrap();
        let h = build_hamiltonian(&p, 5).unwrap();
        let m = h.dense().unwrap();
        let eig = SymmetricEigen::new(m);
        let e_dense = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let sol = ground_state(&h).unwrap();
        assert_abs_diff_eq!(sol.energy, e_dense, epsilon = 1e-9);
        assert!(sol.residual <= 1e-10 * sol.energy.abs().max(1.0));
    }

    #[test]
    fn size_caps_are_enforced() {
        let p = validate_params(0.5, 0.5, 0.0, 9).unwrap();
        assert!(matches!(
            build_hamiltonian(&p, 9),
            Err(ChainError::SizeCapExceeded { .. })
        ));
        let h = build_hamiltonian(&p, 7).unwrap();
        assert!(matches!(h.dense(), Err(ChainError::SizeCapExceeded { .. })));
    }

    #[test]
    fn dimer_limit_oracle_deviations_vanish_at_all_sizes() {
        let p = validate_params(PI / 3.0, PI / 2.0, 0.0, 3).unwrap();
        let rep = oracle_compare(&p, OracleQuantity::GroundEnergyDensity, &[3, 5]).unwrap();
        for e in &rep.entries {
            assert!(e.deviation < 1e-9, "deviation {} at N={}", e.deviation, e.n_cells);
        }
        assert!(rep.shrinking);
    }

    #[test]
    fn invalid_sites_rejected() {
        let p = validate_params(0.5, 1.0, 0.0, 3).unwrap();
        let h = build_hamiltonian(&p, 3).unwrap();
        let sol = ground_state(&h).unwrap();
        assert!(reduced_density_matrix(&sol, 6, 1, 1, 0.0).is_err());
        assert!(reduced_density_matrix(&sol, 6, 0, 2, 0.0).is_err());
        assert!(reduced_density_matrix(&sol, 6, 1, 7, 0.0).is_err());
    }

    #[test]
    fn pair_classification() {
        assert_eq!(classify_pair(1, 2, 6), Some(PairKind::OddEven));
        assert_eq!(classify_pair(2, 3, 6), Some(PairKind::EvenOdd));
        assert_eq!(classify_pair(6, 1, 6), Some(PairKind::EvenOdd));
        assert_eq!(classify_pair(1, 3, 6), Some(PairKind::OddOddDistance2));
        assert_eq!(classify_pair(2, 4, 6), None);
        assert_eq!(classify_pair(1, 4, 6), None);
    }
}
