//! Majorana pair expectations and the Wick-contraction engine.
//!
//! Each fermion mode splits into Hermitian Majorana operators A = a† + a and
//! B = i(a† - a). Under the ground state the only nonzero pair expectations
//! are (n, m are unit-cell indices; 2n even site, 2m-1 odd site):
//!
//! ```text
//! ⟨A_{2n}A_{2m}⟩     = ⟨A_{2n-1}A_{2m-1}⟩     = δ_{n,m}
//! ⟨B_{2n}B_{2m}⟩     = ⟨B_{2n-1}B_{2m-1}⟩     = δ_{n,m}
//! ⟨A_{2n}(-iB_{2m})⟩ = ⟨A_{2n-1}(-iB_{2m-1})⟩ = F(|n-m|)
//! ⟨A_{2n}A_{2m-1}⟩   = ⟨(-iB_{2n})(-iB_{2m-1})⟩ = i sinφ G(m-n)
//! ⟨A_{2n}(-iB_{2m-1})⟩ = ⟨(-iB_{2n})A_{2m-1}⟩ = cosφ G(m-n)
//! ```
//!
//! Distinct Majoranas anticommute, so reversing a pair flips its sign. A
//! product of 2p Majoranas contracts to the Pfaffian of the p(2p-1) pair
//! values — computed by direct recursive expansion for short strings and by
//! tridiagonalization under congruence for longer ones.

use num_complex::Complex64 as C64;

use crate::error::{ChainError, Result};

use super::correlators::CorrelatorSet;

/// Majorana flavor: A = a† + a, B = i(a† - a).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    A,
    B,
}

/// One Majorana operator, addressed by 1-based chain site and flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MajoranaLabel {
    pub site: usize,
    pub flavor: Flavor,
}

impl MajoranaLabel {
    pub fn a(site: usize) -> Self {
        MajoranaLabel {
            site,
            flavor: Flavor::A,
        }
    }

    pub fn b(site: usize) -> Self {
        MajoranaLabel {
            site,
            flavor: Flavor::B,
        }
    }

    /// Unit-cell index: site 2m-1 and site 2m both live in cell m.
    fn cell(&self) -> i64 {
        ((self.site + 1) / 2) as i64
    }

    fn is_odd_site(&self) -> bool {
        self.site % 2 == 1
    }
}

/// Pair-expectation lookup backed by a [`CorrelatorSet`].
#[derive(Debug, Clone)]
pub struct MajoranaPairTable<'a> {
    correlators: &'a CorrelatorSet,
}

/// Build the pair table for a correlator set (which fixes θ₁, θ₂, φ and the
/// precomputed distances).
pub fn majorana_pair_table(correlators: &CorrelatorSet) -> MajoranaPairTable<'_> {
    MajoranaPairTable { correlators }
}

impl<'a> MajoranaPairTable<'a> {
    /// Ordered pair expectation ⟨x y⟩ for distinct Majorana labels.
    pub fn pair(&self, x: MajoranaLabel, y: MajoranaLabel) -> Result<C64> {
        if x == y {
            // x² = 1, but a contraction string never pairs an operator with itself
            return Ok(C64::new(1.0, 0.0));
        }
        let c = self.correlators;
        let i = C64::new(0.0, 1.0);
        if x.is_odd_site() == y.is_odd_site() {
            // same sublattice
            let d = x.cell().abs_diff(y.cell()) as u32;
            return match (x.flavor, y.flavor) {
                (Flavor::A, Flavor::A) | (Flavor::B, Flavor::B) => Ok(C64::new(0.0, 0.0)),
                (Flavor::A, Flavor::B) => Ok(i * c.f(d)?),
                (Flavor::B, Flavor::A) => Ok(-i * c.f(d)?),
            };
        }
        // mixed sublattice: orient as (even-site op, odd-site op), flip sign
        // if the given order was the other way round (anticommutation)
        let (even, odd, swap_sign) = if x.is_odd_site() {
            (y, x, -1.0)
        } else {
            (x, y, 1.0)
        };
        let g = c.g((odd.cell() - even.cell()) as i32)?;
        let (sin_phi, cos_phi) = c.phi.sin_cos();
        let value = match (even.flavor, odd.flavor) {
            (Flavor::A, Flavor::A) => i * sin_phi * g,
            (Flavor::B, Flavor::B) => -i * sin_phi * g,
            (Flavor::A, Flavor::B) | (Flavor::B, Flavor::A) => i * cos_phi * g,
        };
        Ok(swap_sign * value)
    }
}

/// Contract an ordered Majorana string to its ground-state expectation.
///
/// Builds the skew matrix of pair expectations and returns its Pfaffian
/// (the signed sum over perfect matchings).
pub fn wick_contract(ops: &[MajoranaLabel], table: &MajoranaPairTable<'_>) -> Result<C64> {
    let n = ops.len();
    if n % 2 != 0 {
        return Err(ChainError::OddOperatorCount(n));
    }
    for (idx, op) in ops.iter().enumerate() {
        if ops[idx + 1..].contains(op) {
            return Err(ChainError::RepeatedOperator);
        }
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = table.pair(ops[i], ops[j])?;
            m[i][j] = v;
            m[j][i] = -v;
        }
    }
    Ok(pfaffian(m))
}

/// Pfaffian of a skew-symmetric matrix (consumed). Dispatches to recursive
/// expansion for dimension ≤ 8 and to tridiagonalization above.
pub fn pfaffian(m: Vec<Vec<C64>>) -> C64 {
    let n = m.len();
    if n % 2 != 0 {
        return C64::new(0.0, 0.0);
    }
    if n <= 8 {
        pfaffian_recursive(&m, &(0..n).collect::<Vec<_>>())
    } else {
        pfaffian_tridiag(m)
    }
}

/// Pf(A) = Σ_j (-1)^j A[r0][rj] Pf(A with rows/cols r0, rj removed).
fn pfaffian_recursive(m: &[Vec<C64>], rows: &[usize]) -> C64 {
    let n = rows.len();
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    if n == 2 {
        return m[rows[0]][rows[1]];
    }
    let mut acc = C64::new(0.0, 0.0);
    let mut sign = 1.0;
    for j in 1..n {
        let a = m[rows[0]][rows[j]];
        if a.norm_sqr() != 0.0 {
            let rest: Vec<usize> = rows[1..]
                .iter()
                .copied()
                .filter(|&r| r != rows[j])
                .collect();
            acc += sign * a * pfaffian_recursive(m, &rest);
        }
        sign = -sign;
    }
    acc
}

/// Reduce to skew tridiagonal form by congruence (Parlett-Reid with partial
/// pivoting); the Pfaffian is then the product of alternate superdiagonal
/// entries, corrected by the permutation sign.
fn pfaffian_tridiag(mut m: Vec<Vec<C64>>) -> C64 {
    let n = m.len();
    let mut sign = 1.0;
    for k in 0..n.saturating_sub(2) {
        // pivot: largest |entry| in column k below row k
        let (p, best) = (k + 1..n)
            .map(|r| (r, m[r][k].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if best == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if p != k + 1 {
            m.swap(p, k + 1);
            for row in m.iter_mut() {
                row.swap(p, k + 1);
            }
            sign = -sign;
        }
        let pivot = m[k + 1][k];
        for r in (k + 2)..n {
            let factor = m[r][k] / pivot;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            // row_r -= factor * row_{k+1}; col_r -= factor * col_{k+1}
            for c in 0..n {
                let delta = factor * m[k + 1][c];
                m[r][c] -= delta;
            }
            for row in m.iter_mut() {
                let delta = factor * row[k + 1];
                row[r] -= delta;
            }
        }
    }
    let mut pf = C64::new(sign, 0.0);
    let mut k = 0;
    while k + 1 < n {
        pf *= m[k][k + 1];
        k += 2;
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::correlators::{ff_functions, CorrelatorMode};
    use approx::assert_abs_diff_eq;

    fn table_at(theta1: f64, theta2: f64, phi: f64) -> CorrelatorSet {
        let distances: Vec<i32> = (-6..=6).collect();
        ff_functions(theta1, theta2, phi, &distances, CorrelatorMode::Lattice(41)).unwrap()
    }

    #[test]
    fn same_flavor_same_sublattice_pairs() {
        let c = table_at(0.9, 1.3, 0.6);
        let t = majorana_pair_table(&c);
        // ⟨A_2 A_4⟩ = 0 (different cells), ⟨A_2 A_2⟩ = 1
        let z = t.pair(MajoranaLabel::a(2), MajoranaLabel::a(4)).unwrap();
        assert_abs_diff_eq!(z.norm(), 0.0);
        let one = t.pair(MajoranaLabel::a(2), MajoranaLabel::a(2)).unwrap();
        assert_abs_diff_eq!(one.re, 1.0);
    }

    #[test]
    fn mixed_sublattice_aa_vanishes_at_zero_flux() {
        let c = table_at(0.9, 1.3, 0.0);
        let t = majorana_pair_table(&c);
        let z = t.pair(MajoranaLabel::a(2), MajoranaLabel::a(1)).unwrap();
        assert_abs_diff_eq!(z.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn same_site_ab_pair_gives_f0() {
        let c = table_at(0.9, 1.3, 0.6);
        let t = majorana_pair_table(&c);
        let f0 = c.f(0).unwrap();
        // ⟨A_n (-iB_n)⟩ = F(0) i.e. ⟨A_n B_n⟩ = i F(0)
        for site in [1, 2, 5, 6] {
            let v = t
                .pair(MajoranaLabel::a(site), MajoranaLabel::b(site))
                .unwrap();
            assert_abs_diff_eq!(v.im, f0, epsilon = 1e-14);
            assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn pair_antisymmetry() {
        let c = table_at(1.1, 0.4, 1.3);
        let t = majorana_pair_table(&c);
        let labels = [
            MajoranaLabel::a(1),
            MajoranaLabel::b(1),
            MajoranaLabel::a(2),
            MajoranaLabel::b(3),
            MajoranaLabel::a(4),
            MajoranaLabel::b(6),
        ];
        for &x in &labels {
            for &y in &labels {
                if x == y {
                    continue;
                }
                let xy = t.pair(x, y).unwrap();
                let yx = t.pair(y, x).unwrap();
                assert_abs_diff_eq!((xy + yx).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn two_operator_contraction_is_the_table_entry() {
        let c = table_at(1.1, 0.4, 1.3);
        let t = majorana_pair_table(&c);
        let x = MajoranaLabel::b(1);
        let y = MajoranaLabel::a(2);
        let w = wick_contract(&[x, y], &t).unwrap();
        assert_abs_diff_eq!((w - t.pair(x, y).unwrap()).norm(), 0.0);
    }

    #[test]
    fn four_operator_zz_identity() {
        // ⟨A_1 (-iB_1) A_2 (-iB_2)⟩ = F(0)² + G(0)²
        let c = table_at(1.1, 0.4, 1.3);
        let t = majorana_pair_table(&c);
        let ops = [
            MajoranaLabel::a(1),
            MajoranaLabel::b(1),
            MajoranaLabel::a(2),
            MajoranaLabel::b(2),
        ];
        let w = wick_contract(&ops, &t).unwrap();
        // prefactor (-i)² = -1
        let zz = -w;
        let expect = c.f(0).unwrap().powi(2) + c.g(0).unwrap().powi(2);
        assert_abs_diff_eq!(zz.re, expect, epsilon = 1e-13);
        assert_abs_diff_eq!(zz.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn odd_count_and_repeats_are_errors() {
        let c = table_at(1.1, 0.4, 0.0);
        let t = majorana_pair_table(&c);
        assert!(matches!(
            wick_contract(&[MajoranaLabel::a(1)], &t),
            Err(ChainError::OddOperatorCount(1))
        ));
        assert!(matches!(
            wick_contract(&[MajoranaLabel::a(1), MajoranaLabel::a(1)], &t),
            Err(ChainError::RepeatedOperator)
        ));
    }

    #[test]
    fn swapping_adjacent_labels_flips_the_sign() {
        let c = table_at(0.7, 2.1, 0.9);
        let t = majorana_pair_table(&c);
        let mut ops = vec![
            MajoranaLabel::b(1),
            MajoranaLabel::a(2),
            MajoranaLabel::b(2),
            MajoranaLabel::a(3),
        ];
        let w1 = wick_contract(&ops, &t).unwrap();
        ops.swap(1, 2);
        let w2 = wick_contract(&ops, &t).unwrap();
        assert_abs_diff_eq!((w1 + w2).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn tridiagonal_path_matches_recursive() {
        // build a deterministic skew-symmetric complex matrix, n = 10 and 12
        for n in [10usize, 12] {
            let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
            let mut seed = 1.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    seed = (seed * 997.0 + 13.7).rem_euclid(100.0);
                    let re = seed / 50.0 - 1.0;
                    seed = (seed * 997.0 + 13.7).rem_euclid(100.0);
                    let im = seed / 50.0 - 1.0;
                    m[i][j] = C64::new(re, im);
                    m[j][i] = -m[i][j];
                }
            }
            let rows: Vec<usize> = (0..n).collect();
            let rec = pfaffian_recursive(&m, &rows);
            let tri = pfaffian_tridiag(m);
            assert!(
                (rec - tri).norm() < 1e-10 * rec.norm().max(1.0),
                "n={n}: {rec} vs {tri}"
            );
        }
    }
}
