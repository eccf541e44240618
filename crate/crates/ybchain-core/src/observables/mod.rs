//! Ground-state observables: Berry phase, correlator functions, and the
//! Wick-contraction engine behind every spin correlator.

pub mod berry;
pub mod correlators;
pub mod derivatives;
pub mod spin;
pub mod wick;

pub use berry::{berry_phase_finite, berry_phase_thermo, berry_phase_thermo_with_tol, Band, BerryPhaseResult};
pub use correlators::{ff_functions, CorrelatorMode, CorrelatorSet};
pub use derivatives::{derivative_map, DerivKind};
pub use spin::{spin_correlators, spin_correlators_wick, PairKind, SpinCorrelatorRecord};
pub use wick::{majorana_pair_table, wick_contract, Flavor, MajoranaLabel, MajoranaPairTable};
