//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while solving the chain.
#[derive(Debug, Clone, Error)]
pub enum ChainError {
    /// Parameter validation failed (bad cell count, non-finite angle, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The dispersion vanishes, so quantities with ε in a denominator are
    /// undefined. Happens exactly at θ₁ = θ₂ = π/2.
    #[error("gapless point: dispersion vanishes, quantity undefined")]
    GaplessPoint,

    /// Adaptive quadrature hit the panel cap before reaching the requested
    /// tolerance. The best estimate and its error bound are attached.
    #[error("quadrature tolerance not met: best estimate {value:.17e}, error {error:.3e}")]
    QuadratureToleranceNotMet { value: f64, error: f64 },

    /// A correlator was requested at a distance that was not precomputed.
    #[error("distance not precomputed: {0}")]
    DistanceNotPrecomputed(String),

    /// Wick contraction needs an even number of Majorana operators.
    #[error("odd operator count: {0} Majorana operators cannot be fully paired")]
    OddOperatorCount(usize),

    /// Wick contraction received the same Majorana label twice.
    #[error("repeated Majorana operator in contraction string")]
    RepeatedOperator,

    /// Exact-diagonalization size cap exceeded.
    #[error("size cap exceeded: {requested} sites > cap {cap}")]
    SizeCapExceeded { requested: usize, cap: usize },

    /// Site index outside the chain.
    #[error("invalid site index {site} for a chain of {n_sites} sites")]
    InvalidSite { site: usize, n_sites: usize },

    /// A density matrix eigenvalue was more negative than the numerical
    /// floor, signalling inconsistent correlator input.
    #[error("not positive semidefinite: eigenvalue {0:.3e} below floor")]
    NotPsd(f64),

    /// Iterative eigensolver did not converge; best residual attached.
    #[error("eigensolver did not converge: best residual {0:.3e}")]
    NonConvergence(f64),

    /// Unknown scan quantity name.
    #[error("unknown quantity '{0}'")]
    UnknownQuantity(String),
}

pub type Result<T> = std::result::Result<T, ChainError>;
