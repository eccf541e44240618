//! Rectangular (θ₁, θ₂) parameter scans for phase diagrams.
//!
//! Cells inside a small exclusion disk around the gapless point (π/2, π/2),
//! and cells whose evaluation fails (gapless stencil points, unconverged
//! quadrature), are marked invalid rather than interpolated: the diagrams
//! have one genuinely non-analytic point and it stays visible.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::entanglement::{concurrence, concurrence_closed_form, concurrence_distance2, two_site_rho};
use crate::error::{ChainError, Result};
use crate::freefermion::{ground_energy, ground_energy_density_thermo};
use crate::model::ModelParams;
use crate::observables::berry::{berry_phase_finite, berry_phase_thermo_with_tol, Band};
use crate::observables::correlators::{ff_functions_with_tol, CorrelatorMode};
use crate::observables::derivatives::{derivative_at, DerivKind};
use crate::observables::spin::{spin_correlators, PairKind};

/// Default radius of the invalid disk around (π/2, π/2).
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-3;

/// Scan provenance captured alongside the values.
#[derive(Debug, Clone)]
pub struct ScanMetadata {
    pub phi: f64,
    pub mode: String,
    pub fd_step: f64,
    pub quad_tol: f64,
    /// Unix seconds at creation; carried in reports, never in CSV/SVG output
    /// (those must be byte-identical across reruns).
    pub timestamp: u64,
    pub tool_version: String,
}

impl ScanMetadata {
    pub fn new(phi: f64, mode: String, fd_step: f64, quad_tol: f64) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ScanMetadata {
            phi,
            mode,
            fd_step,
            quad_tol,
            timestamp,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// A filled (θ₁, θ₂) grid; invalid cells carry no numeric value.
#[derive(Debug, Clone)]
pub struct ScanGrid {
    pub theta1_axis: Vec<f64>,
    pub theta2_axis: Vec<f64>,
    values: Vec<Option<f64>>,
    pub quantity_label: String,
    pub metadata: ScanMetadata,
}

impl ScanGrid {
    pub fn new(
        theta1_axis: Vec<f64>,
        theta2_axis: Vec<f64>,
        quantity_label: String,
        metadata: ScanMetadata,
    ) -> Self {
        let n = theta1_axis.len() * theta2_axis.len();
        ScanGrid {
            theta1_axis,
            theta2_axis,
            values: vec![None; n],
            quantity_label,
            metadata,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.theta1_axis.len(), self.theta2_axis.len())
    }

    fn index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.theta2_axis.len() + i2
    }

    pub fn get(&self, i1: usize, i2: usize) -> Option<f64> {
        self.values[self.index(i1, i2)]
    }

    pub fn set(&mut self, i1: usize, i2: usize, v: Option<f64>) {
        let idx = self.index(i1, i2);
        self.values[idx] = v;
    }

    /// Row-major cell storage (θ₁ major), one entry per cell.
    pub fn cells(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn set_cells(&mut self, cells: Vec<Option<f64>>) {
        assert_eq!(cells.len(), self.values.len());
        self.values = cells;
    }

    pub fn valid_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().filter_map(|v| *v)
    }

    pub fn n_invalid(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

/// Uniform axis of `resolution` points over [lo, hi] inclusive.
pub fn linear_axis(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    assert!(resolution >= 2, "grid resolution must be at least 2x2");
    (0..resolution)
        .map(|i| lo + (hi - lo) * i as f64 / (resolution - 1) as f64)
        .collect()
}

/// Everything a scan needs besides the axes.
#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub phi: f64,
    /// `None` = thermodynamic limit, `Some(N)` = lattice sums.
    pub n_cells: Option<usize>,
    pub fd_step: f64,
    pub quad_tol: f64,
    pub exclusion_radius: f64,
    pub richardson: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            phi: 0.0,
            n_cells: None,
            fd_step: 1e-4,
            quad_tol: crate::quadrature::DEFAULT_ABS_TOL,
            exclusion_radius: DEFAULT_EXCLUSION_RADIUS,
            richardson: false,
        }
    }
}

impl ScanConfig {
    fn correlator_mode(&self) -> CorrelatorMode {
        match self.n_cells {
            Some(n) => CorrelatorMode::Lattice(n),
            None => CorrelatorMode::Thermodynamic,
        }
    }

    fn mode_label(&self) -> String {
        self.correlator_mode().to_string()
    }
}

/// Scannable quantities; names match the CLI spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Berry,
    DBerryDtheta2,
    D2Berry,
    Ce1,
    Co1,
    C2,
    DCe1Dtheta2,
    D2Ce1,
    F0,
    G0,
    G1,
    EnergyDensity,
}

impl Quantity {
    pub const ALL: [Quantity; 12] = [
        Quantity::Berry,
        Quantity::DBerryDtheta2,
        Quantity::D2Berry,
        Quantity::Ce1,
        Quantity::Co1,
        Quantity::C2,
        Quantity::DCe1Dtheta2,
        Quantity::D2Ce1,
        Quantity::F0,
        Quantity::G0,
        Quantity::G1,
        Quantity::EnergyDensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Berry => "berry",
            Quantity::DBerryDtheta2 => "dberry-dtheta2",
            Quantity::D2Berry => "d2berry",
            Quantity::Ce1 => "Ce1",
            Quantity::Co1 => "Co1",
            Quantity::C2 => "C2",
            Quantity::DCe1Dtheta2 => "dCe1-dtheta2",
            Quantity::D2Ce1 => "d2Ce1",
            Quantity::F0 => "F0",
            Quantity::G0 => "G0",
            Quantity::G1 => "G1",
            Quantity::EnergyDensity => "energy-density",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .iter()
            .copied()
            .find(|q| q.name() == s)
            .ok_or_else(|| ChainError::UnknownQuantity(s.to_string()))
    }
}

/// Evaluate one quantity at a single parameter point.
pub fn evaluate_quantity(q: Quantity, theta1: f64, theta2: f64, cfg: &ScanConfig) -> Result<f64> {
    let mode = cfg.correlator_mode();
    let correlators = |d: &[i32]| ff_functions_with_tol(theta1, theta2, cfg.phi, d, mode, cfg.quad_tol);
    match q {
        Quantity::Berry => match cfg.n_cells {
            Some(n) => {
                let p = ModelParams::new(theta1, theta2, cfg.phi, n as i64)?;
                Ok(berry_phase_finite(&p, Band::Plus)?.value)
            }
            None => Ok(berry_phase_thermo_with_tol(theta1, theta2, Band::Plus, cfg.quad_tol)?.value),
        },
        Quantity::DBerryDtheta2 => derivative_at(
            |t1, t2| evaluate_quantity(Quantity::Berry, t1, t2, cfg),
            DerivKind::FirstTheta2,
            theta1,
            theta2,
            cfg.fd_step,
            cfg.richardson,
        ),
        Quantity::D2Berry => derivative_at(
            |t1, t2| evaluate_quantity(Quantity::Berry, t1, t2, cfg),
            DerivKind::SecondMixed,
            theta1,
            theta2,
            cfg.fd_step,
            cfg.richardson,
        ),
        Quantity::Ce1 => concurrence_closed_form(&correlators(&[0, 1])?, PairKind::EvenOdd),
        Quantity::Co1 => concurrence_closed_form(&correlators(&[0, 1])?, PairKind::OddEven),
        Quantity::C2 => Ok(concurrence_distance2(&correlators(&[0, 1])?)?.value),
        Quantity::DCe1Dtheta2 => derivative_at(
            |t1, t2| evaluate_quantity(Quantity::Ce1, t1, t2, cfg),
            DerivKind::FirstTheta2,
            theta1,
            theta2,
            cfg.fd_step,
            cfg.richardson,
        ),
        Quantity::D2Ce1 => derivative_at(
            |t1, t2| evaluate_quantity(Quantity::Ce1, t1, t2, cfg),
            DerivKind::SecondMixed,
            theta1,
            theta2,
            cfg.fd_step,
            cfg.richardson,
        ),
        Quantity::F0 => correlators(&[0])?.f(0),
        Quantity::G0 => correlators(&[0])?.g(0),
        Quantity::G1 => correlators(&[1])?.g(1),
        Quantity::EnergyDensity => match cfg.n_cells {
            Some(n) => {
                let p = ModelParams::new(theta1, theta2, cfg.phi, n as i64)?;
                Ok(ground_energy(&p) / (2.0 * n as f64))
            }
            None => Ok(ground_energy_density_thermo(theta1, theta2, cfg.quad_tol)),
        },
    }
}

/// Full Wootters-pipeline concurrence at a point (the closed form's
/// independent partner; used by the point command and cross-checks).
pub fn concurrence_pipeline(
    kind: PairKind,
    theta1: f64,
    theta2: f64,
    cfg: &ScanConfig,
) -> Result<f64> {
    let c = ff_functions_with_tol(
        theta1,
        theta2,
        cfg.phi,
        &[0, 1],
        cfg.correlator_mode(),
        cfg.quad_tol,
    )?;
    let rec = spin_correlators(&c, kind)?;
    let state = two_site_rho(&rec, kind, cfg.phi)?;
    Ok(concurrence(&state)?.value)
}

/// Scan a quantity over the rectangular grid; cells inside the exclusion
/// disk around (π/2, π/2) or whose evaluation fails come back invalid.
pub fn phase_diagram(
    q: Quantity,
    theta1_axis: &[f64],
    theta2_axis: &[f64],
    cfg: &ScanConfig,
) -> ScanGrid {
    assert!(
        theta1_axis.len() >= 2 && theta2_axis.len() >= 2,
        "grid resolution must be at least 2x2"
    );
    let metadata = ScanMetadata::new(cfg.phi, cfg.mode_label(), cfg.fd_step, cfg.quad_tol);
    let mut grid = ScanGrid::new(
        theta1_axis.to_vec(),
        theta2_axis.to_vec(),
        q.name().to_string(),
        metadata,
    );
    let n2 = theta2_axis.len();
    let cells: Vec<Option<f64>> = (0..theta1_axis.len() * n2)
        .into_par_iter()
        .map(|idx| {
            let t1 = theta1_axis[idx / n2];
            let t2 = theta2_axis[idx % n2];
            let d = ((t1 - PI / 2.0).powi(2) + (t2 - PI / 2.0).powi(2)).sqrt();
            if d <= cfg.exclusion_radius {
                return None;
            }
            evaluate_quantity(q, t1, t2, cfg).ok()
        })
        .collect();
    grid.set_cells(cells);
    grid
}

/// Flag cells where the gradient magnitude jumps well above the grid median:
/// the finite discontinuity at the separable/entangled border shows up here
/// while the quantity itself stays bounded.
pub fn detect_discontinuities(grid: &ScanGrid, threshold_factor: f64) -> Vec<(usize, usize)> {
    let (n1, n2) = grid.dims();
    if n1 < 3 || n2 < 3 {
        return Vec::new();
    }
    let h1 = grid.theta1_axis[1] - grid.theta1_axis[0];
    let h2 = grid.theta2_axis[1] - grid.theta2_axis[0];
    let mut mags: Vec<Option<f64>> = vec![None; n1 * n2];
    for i1 in 1..n1 - 1 {
        for i2 in 1..n2 - 1 {
            let (Some(xp), Some(xm), Some(yp), Some(ym)) = (
                grid.get(i1 + 1, i2),
                grid.get(i1 - 1, i2),
                grid.get(i1, i2 + 1),
                grid.get(i1, i2 - 1),
            ) else {
                continue;
            };
            let gx = (xp - xm) / (2.0 * h1);
            let gy = (yp - ym) / (2.0 * h2);
            mags[i1 * n2 + i2] = Some((gx * gx + gy * gy).sqrt());
        }
    }
    let mut sorted: Vec<f64> = mags.iter().filter_map(|m| *m).collect();
    if sorted.is_empty() {
        return Vec::new();
    }
    sorted.sort_by(|a, b| a.total_cmp(b));
    let median = sorted[sorted.len() / 2];
    let threshold = threshold_factor * median.max(f64::MIN_POSITIVE);
    let mut flagged = Vec::new();
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            if let Some(m) = mags[i1 * n2 + i2] {
                if m > threshold {
                    flagged.push((i1, i2));
                }
            }
        }
    }
    flagged
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            let parsed: Quantity = q.name().parse().unwrap();
            assert_eq!(parsed, q);
        }
        assert!("nonsense".parse::<Quantity>().is_err());
    }

    #[test]
    fn point_evaluation_polarized_limit() {
        let cfg = ScanConfig::default();
        assert_abs_diff_eq!(
            evaluate_quantity(Quantity::Berry, 0.0, 0.0, &cfg).unwrap(),
            -PI,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            evaluate_quantity(Quantity::F0, 0.0, 0.0, &cfg).unwrap(),
            1.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            evaluate_quantity(Quantity::Ce1, 0.0, 0.0, &cfg).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dimer_point_co1() {
        let cfg = ScanConfig::default();
        let v = evaluate_quantity(Quantity::Co1, PI / 3.0, PI / 2.0, &cfg).unwrap();
        assert_abs_diff_eq!(v, (PI / 3.0).sin(), epsilon = 1e-9);
    }

    #[test]
    fn grid_marks_exclusion_disk_invalid() {
        let axis = linear_axis(0.0, PI, 21);
        let cfg = ScanConfig {
            exclusion_radius: 0.05,
            ..Default::default()
        };
        let grid = phase_diagram(Quantity::F0, &axis, &axis, &cfg);
        // (π/2, π/2) is the center cell of an odd-resolution grid
        assert!(grid.get(10, 10).is_none());
        assert!(grid.get(0, 0).is_some());
        assert!(grid.n_invalid() >= 1);
    }

    #[test]
    fn exchange_symmetry_on_a_small_grid() {
        let axis = linear_axis(0.1, PI - 0.1, 9);
        let cfg = ScanConfig::default();
        let ce = phase_diagram(Quantity::Ce1, &axis, &axis, &cfg);
        let co = phase_diagram(Quantity::Co1, &axis, &axis, &cfg);
        for i1 in 0..9 {
            for i2 in 0..9 {
                if let (Some(a), Some(b)) = (co.get(i1, i2), ce.get(i2, i1)) {
                    assert_abs_diff_eq!(a, b, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn discontinuity_detector_sees_a_step() {
        let axis = linear_axis(0.0, 1.0, 21);
        let metadata = ScanMetadata::new(0.0, "synthetic".into(), 0.0, 0.0);
        let mut grid = ScanGrid::new(axis.clone(), axis.clone(), "step".into(), metadata);
        for i1 in 0..21 {
            for i2 in 0..21 {
                let v = if axis[i2] > 0.5 { 1.0 } else { 0.0 };
                grid.set(i1, i2, Some(v + 0.001 * axis[i1]));
            }
        }
        let flagged = detect_discontinuities(&grid, 10.0);
        assert!(!flagged.is_empty());
        // flags concentrate along the step column
        assert!(flagged.iter().all(|&(_, i2)| (9..=12).contains(&i2)));
    }
}
