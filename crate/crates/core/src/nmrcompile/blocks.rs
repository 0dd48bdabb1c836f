//! Composite pulse blocks for operations the spectrometer cannot apply directly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

use super::{Axis, PulseEvent, PulseSequence, SpinSystem};
use crate::error::{Error, Result};
use crate::spinops::{exp_pauli_string, Operator, PauliString};

/// Direction of the three-body rotation `exp(∓i π/8 Z₁Z₂Z₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZzzSense {
    /// `exp(-i π/8 Z₁Z₂Z₃)`.
    Forward,
    /// `exp(+i π/8 Z₁Z₂Z₃)`.
    Reverse,
}

impl ZzzSense {
    /// Rotation angle `θ` in `exp(-i θ Z₁Z₂Z₃)`.
    pub fn angle(self) -> f64 {
        match self {
            ZzzSense::Forward => FRAC_PI_8,
            ZzzSense::Reverse => -FRAC_PI_8,
        }
    }

    /// Number of half-periods `k` in the `k/(2 J₁₂)` delays of the block.
    fn j12_half_periods(self) -> f64 {
        match self {
            ZzzSense::Forward => 9.0,
            ZzzSense::Reverse => 7.0,
        }
    }

    pub fn target(self) -> Operator {
        exp_pauli_string(self.angle(), &"ZZZ".parse::<PauliString>().expect("literal"))
            .expect("ZZZ is Hermitian")
    }
}

/// Three-body `exp(∓i π/8 Z₁Z₂Z₃)` built from pulses on H2 and the
/// J₁₂ and J₂₃ couplings:
///
/// `[-π/2]_x² [-π]_y² [k/(2J₁₂)] [π/2]_y² [1/(4J₂₃)] [π/2]_y² [k/(2J₁₂)] [π/2]_x²`
///
/// with `k = 9` for the forward sense and `k = 7` for the reverse sense.
/// Equal to the target up to a global phase.
pub fn zzz_block(sense: ZzzSense, sys: &SpinSystem) -> Result<PulseSequence> {
    if sys.n_spins() != 3 {
        return Err(Error::InvalidSpinSystem(format!(
            "three-body block needs three spins, got {}",
            sys.n_spins()
        )));
    }
    let j12 = sys.coupling(1, 2)?;
    let j23 = sys.coupling(2, 3)?;
    if j12 <= 0.0 || j23 <= 0.0 {
        return Err(Error::InvalidSpinSystem(
            "three-body block needs positive J12 and J23".into(),
        ));
    }
    let tau12 = sense.j12_half_periods() / (2.0 * j12);
    let tau23 = 1.0 / (4.0 * j23);
    Ok(PulseSequence::new(vec![
        PulseEvent::rf(-FRAC_PI_2, Axis::X, &[2]),
        PulseEvent::rf(-PI, Axis::Y, &[2]),
        PulseEvent::delay(1, 2, tau12),
        PulseEvent::rf(FRAC_PI_2, Axis::Y, &[2]),
        PulseEvent::delay(2, 3, tau23),
        PulseEvent::rf(FRAC_PI_2, Axis::Y, &[2]),
        PulseEvent::delay(1, 2, tau12),
        PulseEvent::rf(FRAC_PI_2, Axis::X, &[2]),
    ]))
}

/// Selective `[angle]_x` on carbon 1 or 3 from nonselective y pulses and a
/// z-rotation: `[π/2]_y^{1,3} – exp(+i angle/2 σ_z^spin) – [-π/2]_y^{1,3}`.
///
/// The y pulses map `σ_z` onto `σ_x` for the addressed spin and cancel on the
/// other carbon, so the block equals `exp(+i angle/2 σ_x^spin)` for any angle.
pub fn selective_x_block(spin: usize, angle: f64) -> Result<PulseSequence> {
    if spin != 1 && spin != 3 {
        return Err(Error::InvalidEvent(format!(
            "selective x block addresses spin 1 or 3, got {spin}"
        )));
    }
    Ok(PulseSequence::new(vec![
        PulseEvent::rf(FRAC_PI_2, Axis::Y, &[1, 3]),
        PulseEvent::zrot(spin, angle),
        PulseEvent::rf(-FRAC_PI_2, Axis::Y, &[1, 3]),
    ]))
}

/// `exp(+i π/2 (σ_z¹ + σ_z³))` as `[π]_x^{1,3} – [π]_y^{1,3}`, up to global phase.
pub fn z_double_block() -> PulseSequence {
    PulseSequence::new(vec![
        PulseEvent::rf(PI, Axis::X, &[1, 3]),
        PulseEvent::rf(PI, Axis::Y, &[1, 3]),
    ])
}
