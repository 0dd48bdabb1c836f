//! Simulator for the three-spin Heisenberg XY chain and its liquid-state NMR
//! realization.
//!
//! * [`spinops`]: dense operators, Pauli strings, exponentials.
//! * [`xymodel`]: the XY Hamiltonian, its six-factor decomposition and the
//!   perfect-state-transfer propagator.
//! * [`nmrcompile`]: rf pulses, J-coupling delays and composite blocks that
//!   compile the propagator into a pulse sequence.
//! * [`experiment`]: product-operator state preparation, evolution, amplitude
//!   sweeps and state transfer.

pub mod error;
pub mod experiment;
pub mod format;
pub mod nmrcompile;
pub mod spinops;
pub mod xymodel;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use experiment::{
    amplitude_curve, apply_gradient, apply_sequence, branch_propagator, equilibrium_state, evolve, fit_cos2,
    preparation_sequence, pst_transfer, AmplitudeSample, Branch, CosineFit, DeviationState,
    Propagator, PstOutcome, QubitState,
};
pub use nmrcompile::{
    compile_u, compile_ua, compile_ub, coupling_delay_unitary, fidelity, rf_pulse_unitary,
    selective_x_block, simulate_sequence, z_double_block, zzz_block, Axis, PulseEvent,
    PulseSequence, SpinSystem, ZzzSense,
};
pub use spinops::{
    commutator, embed, exp_hermitian, exp_pauli_string, hs_coefficient, pauli_matrix, Operator,
    PauliLetter, PauliString, Phase,
};
pub use xymodel::{
    angular_momentum_triples, build_xy_hamiltonian, decompose_factors, operators_ab,
    propagator_analytic, pst_unitary, FactorSequence, PhaseAngle, XYChainSpec,
};

/// Entrywise tolerance for operator equality checks.
pub const EQ_TOL: f64 = 1e-10;

/// Entrywise tolerance when comparing against the eigendecomposition oracle.
pub const ORACLE_TOL: f64 = 1e-9;
