//! Spin correlators of the nearest- and next-nearest-neighbor pairs.
//!
//! Closed forms in terms of F, G and the flux φ (cφ = cos φ, sφ = sin φ):
//!
//! | pair          | xx            | yy            | xy = yx   | zz            |
//! |---------------|---------------|---------------|-----------|---------------|
//! | odd-even      | -cφ G(0)      | +cφ G(0)      | sφ G(0)   | F(0)² + G(0)² |
//! | even-odd      | +cφ G(1)      | -cφ G(1)      | -sφ G(1)  | F(0)² + G(1)² |
//! | odd-odd, d=2  | -G0G1 - F0F1  | -G0G1 - F0F1  | 0         | F(0)² - F(1)² |
//!
//! plus the one-point function ⟨σᶻ⟩ = F(0) on both sublattices. The same
//! entries also follow from [`wick_contract`] applied to the Jordan-Wigner
//! Majorana strings; [`spin_correlators_wick`] keeps that independent route
//! alive so the two can be tested against each other.

use crate::error::Result;

use super::correlators::CorrelatorSet;
use super::wick::{majorana_pair_table, wick_contract, MajoranaLabel};

/// Which translation-inequivalent site pair a correlator refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Sites (2m-1, 2m): the θ₁ bond.
    OddEven,
    /// Sites (2m, 2m+1): the θ₂ bond.
    EvenOdd,
    /// Sites (2m-1, 2m+1): next-nearest neighbors on the odd sublattice.
    OddOddDistance2,
}

impl PairKind {
    /// Representative 1-based sites used by the Wick route.
    fn sites(self) -> (usize, usize) {
        match self {
            PairKind::OddEven => (1, 2),
            PairKind::EvenOdd => (2, 3),
            PairKind::OddOddDistance2 => (1, 3),
        }
    }
}

/// All two-point entries a two-site density matrix needs, plus the one-point
/// ⟨σᶻ⟩ values. Everything is real.
#[derive(Debug, Clone, Copy)]
pub struct SpinCorrelatorRecord {
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
    pub yx: f64,
    pub zz: f64,
    pub z_i: f64,
    pub z_j: f64,
}

/// Closed-form correlators for the requested pair kind.
pub fn spin_correlators(c: &CorrelatorSet, kind: PairKind) -> Result<SpinCorrelatorRecord> {
    let (sin_phi, cos_phi) = c.phi.sin_cos();
    let f0 = c.f(0)?;
    let rec = match kind {
        PairKind::OddEven => {
            let g0 = c.g(0)?;
            SpinCorrelatorRecord {
                xx: -cos_phi * g0,
                yy: cos_phi * g0,
                xy: sin_phi * g0,
                yx: sin_phi * g0,
                zz: f0 * f0 + g0 * g0,
                z_i: f0,
                z_j: f0,
            }
        }
        PairKind::EvenOdd => {
            let g1 = c.g(1)?;
            SpinCorrelatorRecord {
                xx: cos_phi * g1,
                yy: -cos_phi * g1,
                xy: -sin_phi * g1,
                yx: -sin_phi * g1,
                zz: f0 * f0 + g1 * g1,
                z_i: f0,
                z_j: f0,
            }
        }
        PairKind::OddOddDistance2 => {
            let g0 = c.g(0)?;
            let g1 = c.g(1)?;
            let f1 = c.f(1)?;
            let q = -g0 * g1 - f0 * f1;
            SpinCorrelatorRecord {
                xx: q,
                yy: q,
                xy: 0.0,
                yx: 0.0,
                zz: f0 * f0 - f1 * f1,
                z_i: f0,
                z_j: f0,
            }
        }
    };
    Ok(rec)
}

/// The same record computed through the Wick engine on Majorana strings.
///
/// Jordan-Wigner gives, for adjacent sites m, m+1:
/// σˣσˣ = -i B_m A_{m+1},  σʸσʸ = i A_m B_{m+1},
/// σˣσʸ = -i B_m B_{m+1},  σʸσˣ = i A_m A_{m+1},
/// and for distance 2 the strings pick up the intervening -iA_lB_l.
pub fn spin_correlators_wick(c: &CorrelatorSet, kind: PairKind) -> Result<SpinCorrelatorRecord> {
    use MajoranaLabel as L;
    let table = majorana_pair_table(c);
    let (i, j) = kind.sites();
    let re = |v: num_complex::Complex64| -> f64 {
        debug_assert!(v.im.abs() < 1e-10, "correlator should be real, got {v}");
        v.re
    };
    let minus_i = num_complex::Complex64::new(0.0, -1.0);
    let plus_i = num_complex::Complex64::new(0.0, 1.0);

    let (xx, yy, xy, yx) = match kind {
        PairKind::OddEven | PairKind::EvenOdd => (
            re(minus_i * wick_contract(&[L::b(i), L::a(j)], &table)?),
            re(plus_i * wick_contract(&[L::a(i), L::b(j)], &table)?),
            re(minus_i * wick_contract(&[L::b(i), L::b(j)], &table)?),
            re(plus_i * wick_contract(&[L::a(i), L::a(j)], &table)?),
        ),
        PairKind::OddOddDistance2 => {
            let mid = i + 1;
            (
                re(-wick_contract(&[L::b(i), L::a(mid), L::b(mid), L::a(j)], &table)?),
                re(wick_contract(&[L::a(i), L::a(mid), L::b(mid), L::b(j)], &table)?),
                re(-wick_contract(&[L::b(i), L::a(mid), L::b(mid), L::b(j)], &table)?),
                re(wick_contract(&[L::a(i), L::a(mid), L::b(mid), L::a(j)], &table)?),
            )
        }
    };
    let zz = re(-wick_contract(&[L::a(i), L::b(i), L::a(j), L::b(j)], &table)?);
    let z_i = re(minus_i * wick_contract(&[L::a(i), L::b(i)], &table)?);
    let z_j = re(minus_i * wick_contract(&[L::a(j), L::b(j)], &table)?);
    Ok(SpinCorrelatorRecord {
        xx,
        yy,
        xy,
        yx,
        zz,
        z_i,
        z_j,
    })
}
