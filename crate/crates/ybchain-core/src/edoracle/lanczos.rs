//! Lanczos iteration for the lowest eigenpair of a Hermitian operator,
//! given only its action on a vector.
//!
//! Full reorthogonalization against the Krylov basis keeps the iteration
//! stable; if the residual target is not met within one Krylov pass the
//! iteration restarts from the current Ritz vector. Optional deflation
//! vectors confine the search to their orthogonal complement, which is how
//! the first excited level (for the degeneracy flag) is obtained.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{ChainError, Result};

pub const MAX_KRYLOV: usize = 120;
pub const MAX_RESTARTS: usize = 60;

pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [C64], alpha: C64, x: &[C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(v: &mut [C64], s: f64) {
    for x in v.iter_mut() {
        *x *= s;
    }
}

/// Deterministic start vector (xorshift64*), normalized.
pub fn pseudo_random_state(dim: usize, seed: u64) -> Vec<C64> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = || {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        let x = state.wrapping_mul(0x2545_F491_4F6C_DD1D);
        (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<C64> = (0..dim).map(|_| C64::new(next(), next())).collect();
    let n = norm(&v);
    scale(&mut v, 1.0 / n);
    v
}

fn project_out(v: &mut [C64], basis: &[Vec<C64>]) {
    for b in basis {
        let overlap = dot(b, v);
        axpy(v, -overlap, b);
    }
}

pub struct LanczosOutcome {
    pub value: f64,
    pub vector: Vec<C64>,
    pub residual: f64,
}

/// Lowest eigenpair of the Hermitian operator `matvec`, restricted to the
/// orthogonal complement of `deflate`. `tol` is relative to max(1, |E|).
pub fn lowest_eigenpair<F>(
    matvec: &F,
    dim: usize,
    deflate: &[Vec<C64>],
    tol: f64,
    seed: u64,
) -> Result<LanczosOutcome>
where
    F: Fn(&[C64]) -> Vec<C64>,
{
    let m_max = MAX_KRYLOV.min(dim);
    let mut start = pseudo_random_state(dim, seed);
    project_out(&mut start, deflate);
    let n0 = norm(&start);
    if n0 < 1e-12 {
        return Err(ChainError::NonConvergence(f64::INFINITY));
    }
    scale(&mut start, 1.0 / n0);

    let mut best_residual = f64::INFINITY;
    for _restart in 0..MAX_RESTARTS {
        let mut q_vecs: Vec<Vec<C64>> = vec![start.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();

        for j in 0..m_max {
            let mut w = matvec(&q_vecs[j]);
            project_out(&mut w, deflate);
            let alpha = dot(&q_vecs[j], &w).re;
            alphas.push(alpha);
            axpy(&mut w, C64::new(-alpha, 0.0), &q_vecs[j]);
            if j > 0 {
                axpy(&mut w, C64::new(-betas[j - 1], 0.0), &q_vecs[j - 1]);
            }
            // full reorthogonalization
            for q in &q_vecs {
                let overlap = dot(q, &w);
                axpy(&mut w, -overlap, q);
            }
            let beta = norm(&w);
            if beta < 1e-13 || j == m_max - 1 {
                break;
            }
            betas.push(beta);
            scale(&mut w, 1.0 / beta);
            q_vecs.push(w);
        }

        // lowest Ritz pair of the tridiagonal projection
        let m = alphas.len();
        let mut t = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alphas[i];
            if i > 0 {
                t[(i, i - 1)] = betas[i - 1];
                t[(i - 1, i)] = betas[i - 1];
            }
        }
        let eig = SymmetricEigen::new(t);
        let mut idx_min = 0;
        for i in 1..m {
            if eig.eigenvalues[i] < eig.eigenvalues[idx_min] {
                idx_min = i;
            }
        }
        let value = eig.eigenvalues[idx_min];
        let mut v = vec![C64::new(0.0, 0.0); dim];
        for (i, q) in q_vecs.iter().enumerate().take(m) {
            axpy(&mut v, C64::new(eig.eigenvectors[(i, idx_min)], 0.0), q);
        }
        project_out(&mut v, deflate);
        let nv = norm(&v);
        if nv < 1e-12 {
            return Err(ChainError::NonConvergence(best_residual));
        }
        scale(&mut v, 1.0 / nv);

        let mut hv = matvec(&v);
        project_out(&mut hv, deflate);
        axpy(&mut hv, C64::new(-value, 0.0), &v);
        let residual = norm(&hv);
        best_residual = best_residual.min(residual);
        if residual <= tol * value.abs().max(1.0) {
            return Ok(LanczosOutcome {
                value,
                vector: v,
                residual,
            });
        }
        start = v;
    }
    Err(ChainError::NonConvergence(best_residual))
}
