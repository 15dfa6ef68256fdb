//! Quantum Otto engine whose working medium is a spin-1/2 coupled to a
//! spin-s by isotropic Heisenberg exchange in a homogeneous field,
//! `H = 8J s_A·S_B + 2B (s_A^z + S_B^z)` with `ħ = k_B = μ_B = 1`.
//!
//! The crate diagonalizes the pair exactly, builds Gibbs states, and runs
//! the Otto cycle to report global heat, work and efficiency, the per-spin
//! (local) thermodynamics, and the cooperative-work split for cycles that
//! also vary the coupling. [`sweep`] drives parameter scans and CSV output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod coop;
pub mod eigen;
pub mod error;
pub mod local;
pub mod matrix;
pub mod otto;
pub mod plot;
pub mod quantity;
pub mod spin;
pub mod sweep;
pub mod thermal;

pub use coop::{
    closed_form_ratio, cooperativity_ratio, mean_field_split, run_generalized_cycle, CoopResult, GeneralizedConfig,
    MeanFieldSplit,
};
pub use eigen::{diagonalize, jacobi_eigen, Spectrum};
pub use error::{Error, Result};
pub use local::{
    adiabatic_temperature_map, effective_temperature, local_analysis, local_efficiency, LocalFigure, LocalMode,
    LocalResult, TemperatureAssessment,
};
pub use matrix::{DenseMatrix, RealSymMatrix};
pub use otto::{
    efficiency_bound, run_cycle, run_cycle_analytic, strong_coupling_limits, CycleMode, CycleResult, EngineConfig,
    StrokePoint,
};
pub use quantity::Quantity;
pub use spin::{
    analytic_spectrum, build_hamiltonian, spin_operators, PairHamiltonian, PairOperators, SpinQuantumNumber,
};
pub use thermal::{gibbs_state, partial_trace, ReducedState, Subsystem, ThermalState};
