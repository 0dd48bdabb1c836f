//! NMR realization of the XY propagator.
//!
//! Pulse events are idealized: rf pulses are instantaneous, and a coupling
//! delay `[τ_jl]` evolves only under `J_jl` with every other coupling and all
//! chemical shifts refocused. Rf pulses follow `[θ]_a^S = exp(+i θ/2 Σ_{j∈S} σ_a^j)`
//! and z-rotations use the same sign, `exp(+i θ/2 σ_z^j)`.
//!
//! Spins are labelled from 1 throughout this module.

mod blocks;
mod compile;
mod text;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spinops::{exp_pauli_string, Operator, PauliLetter, PauliString};

pub use blocks::{selective_x_block, z_double_block, zzz_block, ZzzSense};
pub use compile::{compile_u, compile_ua, compile_ub};

/// Coupling constants of the C1-H2-C3 sample (Hz).
pub const TCE_J12: f64 = 200.9;
pub const TCE_J23: f64 = 9.16;
pub const TCE_J13: f64 = 103.1;
/// Offset of C3 relative to C1 (Hz).
pub const TCE_NU3_MINUS_NU1: f64 = 904.4;
/// Gyromagnetic ratio of ¹H relative to ¹³C.
pub const GAMMA_H_OVER_C: f64 = 3.977;

/// Spin count, resonance offsets, scalar couplings and relative gyromagnetic
/// weights of an NMR register.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystem {
    nu: Vec<f64>,
    j: Vec<Vec<f64>>,
    gamma: Vec<f64>,
}

impl SpinSystem {
    pub fn new(nu: Vec<f64>, j: Vec<Vec<f64>>, gamma: Vec<f64>) -> Result<Self> {
        let n = nu.len();
        if n == 0 || n > 12 {
            return Err(Error::InvalidSpinSystem(format!("unsupported spin count {n}")));
        }
        if gamma.len() != n || j.len() != n || j.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpinSystem(format!(
                "nu, gamma and the {n}x{n} coupling matrix must agree in size"
            )));
        }
        let all_values = nu.iter().chain(&gamma).chain(j.iter().flatten());
        if all_values.clone().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpinSystem("non-finite constant".into()));
        }
        for a in 0..n {
            if j[a][a] != 0.0 {
                return Err(Error::InvalidSpinSystem(format!("J_{0}{0} must be zero", a + 1)));
            }
            for b in 0..a {
                if j[a][b] != j[b][a] {
                    return Err(Error::InvalidSpinSystem(format!(
                        "coupling matrix is not symmetric at ({}, {})",
                        b + 1,
                        a + 1
                    )));
                }
            }
        }
        Ok(Self { nu, j, gamma })
    }

    /// Builds a three-spin system from the three couplings.
    pub fn three_spin(nu: [f64; 3], j12: f64, j23: f64, j13: f64, gamma: [f64; 3]) -> Result<Self> {
        Self::new(
            nu.to_vec(),
            vec![vec![0.0, j12, j13], vec![j12, 0.0, j23], vec![j13, j23, 0.0]],
            gamma.to_vec(),
        )
    }

    /// The trichloroethylene sample: C1, H2, C3.
    ///
    /// Offsets are relative to each nucleus's own carrier, with C1 and H2 on
    /// resonance. Gyromagnetic weights are relative to ¹³C.
    pub fn trichloroethylene() -> Self {
        Self::three_spin(
            [0.0, 0.0, TCE_NU3_MINUS_NU1],
            TCE_J12,
            TCE_J23,
            TCE_J13,
            [1.0, GAMMA_H_OVER_C, 1.0],
        )
        .expect("sample constants are valid")
    }

    pub fn n_spins(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn coupling_matrix(&self) -> &[Vec<f64>] {
        &self.j
    }

    /// `J_jl` in Hz for 1-based labels.
    pub fn coupling(&self, j: usize, l: usize) -> Result<f64> {
        self.check_spin(j)?;
        self.check_spin(l)?;
        if j == l {
            return Err(Error::InvalidEvent(format!("coupling pair ({j}, {l}) repeats a spin")));
        }
        Ok(self.j[j - 1][l - 1])
    }

    fn check_spin(&self, spin: usize) -> Result<()> {
        if spin == 0 || spin > self.n_spins() {
            Err(Error::InvalidEvent(format!(
                "spin {spin} outside 1..={}",
                self.n_spins()
            )))
        } else {
            Ok(())
        }
    }
}

impl Default for SpinSystem {
    fn default() -> Self {
        Self::trichloroethylene()
    }
}

/// Rf phase axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn letter(self) -> PauliLetter {
        match self {
            Axis::X => PauliLetter::X,
            Axis::Y => PauliLetter::Y,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// One step of a pulse sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum PulseEvent {
    /// Hard pulse `exp(+i angle/2 Σ_{j∈spins} σ_axis^j)`.
    Rf { angle: f64, axis: Axis, spins: Vec<usize> },
    /// Free evolution `exp(-i π J_jl τ/2 σ_z^j σ_z^l)` with `pair = (j, l)`, `j < l`.
    Delay { pair: (usize, usize), tau: f64 },
    /// Frame rotation `exp(+i angle/2 σ_z^spin)`.
    ZRotation { angle: f64, spin: usize },
    /// Field gradient along z. Dephases transverse coherence; not unitary.
    Gradient,
    /// Uncompiled multi-spin rotation `exp(-i angle P)`.
    PauliRotation { angle: f64, pauli: PauliString },
}

impl PulseEvent {
    pub fn rf(angle: f64, axis: Axis, spins: &[usize]) -> Self {
        PulseEvent::Rf {
            angle,
            axis,
            spins: spins.to_vec(),
        }
    }

    pub fn delay(j: usize, l: usize, tau: f64) -> Self {
        PulseEvent::Delay { pair: (j, l), tau }
    }

    pub fn zrot(spin: usize, angle: f64) -> Self {
        PulseEvent::ZRotation { angle, spin }
    }

    pub fn duration(&self) -> f64 {
        match self {
            PulseEvent::Delay { tau, .. } => *tau,
            _ => 0.0,
        }
    }

    /// Checks the event against a register of `n_spins` spins.
    pub fn validate(&self, n_spins: usize) -> Result<()> {
        let in_range = |s: usize| (1..=n_spins).contains(&s);
        let finite = |x: f64, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidEvent(format!("non-finite {what}")))
            }
        };
        match self {
            PulseEvent::Rf { angle, spins, .. } => {
                finite(*angle, "rf angle")?;
                if spins.is_empty() {
                    return Err(Error::InvalidEvent("rf pulse addresses no spins".into()));
                }
                if let Some(s) = spins.iter().find(|s| !in_range(**s)) {
                    return Err(Error::InvalidEvent(format!("rf spin {s} outside 1..={n_spins}")));
                }
                let mut sorted = spins.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != spins.len() {
                    return Err(Error::InvalidEvent("rf pulse repeats a spin".into()));
                }
            }
            PulseEvent::Delay { pair: (j, l), tau } => {
                finite(*tau, "delay")?;
                if *tau < 0.0 {
                    return Err(Error::InvalidEvent(format!("negative delay {tau}")));
                }
                if !(j < l && in_range(*j) && in_range(*l)) {
                    return Err(Error::InvalidEvent(format!(
                        "coupling pair ({j}, {l}) must satisfy 1 <= j < l <= {n_spins}"
                    )));
                }
            }
            PulseEvent::ZRotation { angle, spin } => {
                finite(*angle, "z-rotation angle")?;
                if !in_range(*spin) {
                    return Err(Error::InvalidEvent(format!("z-rotation spin {spin} outside 1..={n_spins}")));
                }
            }
            PulseEvent::Gradient => {}
            PulseEvent::PauliRotation { angle, pauli } => {
                finite(*angle, "rotation angle")?;
                if pauli.n_spins() != n_spins {
                    return Err(Error::DimensionMismatch {
                        expected: n_spins,
                        found: pauli.n_spins(),
                    });
                }
                if !pauli.is_hermitian() {
                    return Err(Error::NonHermitianGenerator(pauli.to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Time-ordered pulse events; the first event acts first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSequence {
    events: Vec<PulseEvent>,
}

impl PulseSequence {
    pub fn new(events: Vec<PulseEvent>) -> Self {
        Self { events }
    }

    pub fn events(&self) -> &[PulseEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn push(&mut self, event: PulseEvent) {
        self.events.push(event);
    }

    pub fn append(&mut self, other: PulseSequence) {
        self.events.extend(other.events);
    }

    /// `self` followed by `other`.
    pub fn then(mut self, other: PulseSequence) -> Self {
        self.append(other);
        self
    }

    /// Total free-evolution time in seconds; pulses are taken as instantaneous.
    pub fn total_delay(&self) -> f64 {
        self.events.iter().map(PulseEvent::duration).sum()
    }

    pub fn split_at(&self, mid: usize) -> (PulseSequence, PulseSequence) {
        let (a, b) = self.events.split_at(mid);
        (PulseSequence::new(a.to_vec()), PulseSequence::new(b.to_vec()))
    }
}

impl FromIterator<PulseEvent> for PulseSequence {
    fn from_iter<I: IntoIterator<Item = PulseEvent>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// `Π_{j∈spins} exp(+i angle/2 σ_axis^j)` on `n_spins` spins.
pub fn rf_pulse_unitary(n_spins: usize, angle: f64, axis: Axis, spins: &[usize]) -> Result<Operator> {
    PulseEvent::rf(angle, axis, spins).validate(n_spins)?;
    spins.iter().try_fold(Operator::identity_spins(n_spins), |acc, &s| {
        let p = PauliString::single(n_spins, s - 1, axis.letter());
        Ok(&acc * &exp_pauli_string(-angle / 2.0, &p)?)
    })
}

/// `[τ_jl] = exp(-i π J_jl τ/2 σ_z^j σ_z^l)`.
pub fn coupling_delay_unitary(pair: (usize, usize), tau: f64, sys: &SpinSystem) -> Result<Operator> {
    let n = sys.n_spins();
    PulseEvent::Delay { pair, tau }.validate(n)?;
    let j = sys.coupling(pair.0, pair.1)?;
    let zz = PauliString::from_sites(n, &[(pair.0 - 1, PauliLetter::Z), (pair.1 - 1, PauliLetter::Z)]);
    exp_pauli_string(PI * j * tau / 2.0, &zz)
}

/// `exp(+i angle/2 σ_z^spin)`.
pub fn z_rotation_unitary(n_spins: usize, spin: usize, angle: f64) -> Result<Operator> {
    PulseEvent::zrot(spin, angle).validate(n_spins)?;
    exp_pauli_string(-angle / 2.0, &PauliString::single(n_spins, spin - 1, PauliLetter::Z))
}

/// Propagator of a single event. Gradients are rejected.
pub fn event_unitary(event: &PulseEvent, sys: &SpinSystem) -> Result<Operator> {
    let n = sys.n_spins();
    event.validate(n)?;
    match event {
        PulseEvent::Rf { angle, axis, spins } => rf_pulse_unitary(n, *angle, *axis, spins),
        PulseEvent::Delay { pair, tau } => coupling_delay_unitary(*pair, *tau, sys),
        PulseEvent::ZRotation { angle, spin } => z_rotation_unitary(n, *spin, *angle),
        PulseEvent::Gradient => Err(Error::GradientInUnitary),
        PulseEvent::PauliRotation { angle, pauli } => exp_pauli_string(*angle, pauli),
    }
}

/// `U_k ⋯ U_2 U_1` for events `1..k` in time order.
pub fn simulate_sequence(seq: &PulseSequence, sys: &SpinSystem) -> Result<Operator> {
    seq.events()
        .iter()
        .try_fold(Operator::identity_spins(sys.n_spins()), |acc, e| {
            Ok(&event_unitary(e, sys)? * &acc)
        })
}

/// Global-phase-insensitive overlap `|tr(U†V)| / d`.
pub fn fidelity(u: &Operator, v: &Operator) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let n = u.dim();
    let tr: Complex64 = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| u.get(r, c).conj() * v.get(r, c))
        .sum();
    Ok(tr.norm() / n as f64)
}
