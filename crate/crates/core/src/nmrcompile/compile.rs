//! Compilation of `U(φ)`, `U_A(φ)` and `U_B(φ)` into pulse sequences.
//!
//! Each propagator is first written as a product of NMR-native factors in
//! operator order (leftmost acts last), then lowered to time-ordered events.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::blocks::{selective_x_block, z_double_block, zzz_block, ZzzSense};
use super::{Axis, PulseEvent, PulseSequence, SpinSystem};
use crate::error::{Error, Result};
use crate::xymodel::PhaseAngle;

const H: usize = 2;

/// One factor of the compiled product, in operator order.
#[derive(Debug, Clone, Copy)]
enum Factor {
    /// `[angle]_axis^spins`.
    Rf { axis: Axis, angle: f64, spins: &'static [usize] },
    /// `exp(+i angle/2 σ_z^spin)`.
    ZRot { spin: usize, angle: f64 },
    /// `exp(-i θ σ_z^j σ_z^l)`.
    Zz { pair: (usize, usize), theta: f64 },
    /// `exp(∓i π/8 Z₁Z₂Z₃)`.
    Zzz(ZzzSense),
    /// `exp(+i π/2 (σ_z¹ + σ_z³))`.
    DoubleZ,
}

use Factor::*;

fn rf(axis: Axis, angle: f64, spins: &'static [usize]) -> Factor {
    Rf { axis, angle, spins }
}

/// `U_A = e^{-iπ/8 XZY} e^{-iφ X₁X₂} e^{+iπ/8 XZY}` with both three-body
/// rotations conjugated down to `Z₁Z₂Z₃` and `X₁X₂` down to `Z₁Z₂`. The
/// inner basis changes on spins 1 and 3 cancel pairwise.
fn ua_factors(phi: f64) -> Vec<Factor> {
    vec![
        rf(Axis::Y, -FRAC_PI_2, &[1]),
        rf(Axis::X, FRAC_PI_2, &[3]),
        Zzz(ZzzSense::Forward),
        rf(Axis::Y, -FRAC_PI_2, &[H]),
        Zz { pair: (1, 2), theta: phi },
        rf(Axis::Y, FRAC_PI_2, &[H]),
        Zzz(ZzzSense::Reverse),
        rf(Axis::Y, FRAC_PI_2, &[1]),
        rf(Axis::X, -FRAC_PI_2, &[3]),
    ]
}

/// `U_B = e^{-iπ/8 YZX} e^{-iφ X₂X₃} e^{+iπ/8 YZX}`, same construction as `U_A`.
fn ub_factors(phi: f64) -> Vec<Factor> {
    vec![
        rf(Axis::X, FRAC_PI_2, &[1]),
        rf(Axis::Y, -FRAC_PI_2, &[3]),
        Zzz(ZzzSense::Forward),
        rf(Axis::Y, -FRAC_PI_2, &[H]),
        Zz { pair: (2, 3), theta: phi },
        rf(Axis::Y, FRAC_PI_2, &[H]),
        Zzz(ZzzSense::Reverse),
        rf(Axis::X, -FRAC_PI_2, &[1]),
        rf(Axis::Y, FRAC_PI_2, &[3]),
    ]
}

/// The simplified product for `U = U_A U_B` with the junction between the
/// halves merged into a nonselective pulse, a double z-rotation and a
/// z-rotation on spin 1.
fn u_factors(phi: f64) -> Vec<Factor> {
    vec![
        rf(Axis::Y, -FRAC_PI_2, &[1]),
        rf(Axis::X, FRAC_PI_2, &[3]),
        Zzz(ZzzSense::Forward),
        rf(Axis::Y, -FRAC_PI_2, &[H]),
        Zz { pair: (1, 2), theta: phi },
        rf(Axis::Y, FRAC_PI_2, &[H]),
        Zzz(ZzzSense::Reverse),
        rf(Axis::X, FRAC_PI_2, &[1, 3]),
        rf(Axis::Y, -FRAC_PI_2, &[3]),
        DoubleZ,
        ZRot { spin: 1, angle: -FRAC_PI_2 },
        Zzz(ZzzSense::Forward),
        rf(Axis::Y, -FRAC_PI_2, &[H]),
        Zz { pair: (2, 3), theta: phi },
        rf(Axis::Y, FRAC_PI_2, &[H]),
        Zzz(ZzzSense::Reverse),
        rf(Axis::X, -FRAC_PI_2, &[1]),
        rf(Axis::Y, FRAC_PI_2, &[3]),
    ]
}

/// Delay realizing `exp(-i θ Z_j Z_l)` under `[τ_jl]`.
///
/// `θ = π J τ / 2`, so `τ = 2θ / (π J)`. The angle is first shifted by a
/// multiple of 2π (exact, since `exp(-2πi ZZ) = I`) so that `τ ≥ 0`.
fn zz_delay(pair: (usize, usize), theta: f64, sys: &SpinSystem) -> Result<PulseEvent> {
    let j = sys.coupling(pair.0, pair.1)?;
    if j == 0.0 {
        return Err(Error::InvalidSpinSystem(format!(
            "J_{}{} is zero; the ZZ rotation cannot be realized by a delay",
            pair.0, pair.1
        )));
    }
    let mut theta = theta.rem_euclid(TAU);
    if j < 0.0 && theta > 0.0 {
        theta -= TAU;
    }
    Ok(PulseEvent::delay(pair.0, pair.1, 2.0 * theta / (PI * j)))
}

fn lower(factors: &[Factor], expand: bool, sys: &SpinSystem) -> Result<PulseSequence> {
    if sys.n_spins() != 3 {
        return Err(Error::InvalidSpinSystem(format!(
            "the XY compiler targets three spins, got {}",
            sys.n_spins()
        )));
    }
    let mut seq = PulseSequence::default();
    // Operator order → time order.
    for factor in factors.iter().rev() {
        match *factor {
            Rf { axis: Axis::X, angle, spins: &[spin] } if expand && spin != H => {
                seq.append(selective_x_block(spin, angle)?);
            }
            Rf { axis, angle, spins } => seq.push(PulseEvent::rf(angle, axis, spins)),
            ZRot { spin, angle } => seq.push(PulseEvent::zrot(spin, angle)),
            Zz { pair, theta } => seq.push(zz_delay(pair, theta, sys)?),
            Zzz(sense) if expand => seq.append(zzz_block(sense, sys)?),
            Zzz(sense) => seq.push(PulseEvent::PauliRotation {
                angle: sense.angle(),
                pauli: "ZZZ".parse().expect("literal"),
            }),
            DoubleZ if expand => seq.append(z_double_block()),
            DoubleZ => {
                seq.push(PulseEvent::zrot(1, PI));
                seq.push(PulseEvent::zrot(3, PI));
            }
        }
    }
    Ok(seq)
}

fn reduced(phi: PhaseAngle) -> f64 {
    phi.radians().rem_euclid(TAU)
}

/// Pulse sequence for the full XY propagator `U(φ)`.
///
/// `φ` is reduced into `[0, 2π)`. The two variable delays are
/// `τ₁₂ = 2φ/(π J₁₂)` and `τ₂₃ = 2φ/(π J₂₃)`. With `expand = false` the
/// three-body rotations stay as `PauliRotation` events and the double
/// z-rotation as two z-rotations; with `expand = true` they are replaced by
/// the composite blocks, and selective x pulses on spins 1 and 3 by
/// [`selective_x_block`]. Selective y pulses are kept as single-spin rf.
///
/// The simulated sequence equals the XY propagator up to a global phase.
pub fn compile_u(phi: PhaseAngle, expand: bool, sys: &SpinSystem) -> Result<PulseSequence> {
    lower(&u_factors(reduced(phi)), expand, sys)
}

/// Pulse sequence for `U_A(φ) = exp(-i J t (X₁X₂ + Y₂Y₃)/2)`.
pub fn compile_ua(phi: PhaseAngle, expand: bool, sys: &SpinSystem) -> Result<PulseSequence> {
    lower(&ua_factors(reduced(phi)), expand, sys)
}

/// Pulse sequence for `U_B(φ) = exp(-i J t (Y₁Y₂ + X₂X₃)/2)`.
pub fn compile_ub(phi: PhaseAngle, expand: bool, sys: &SpinSystem) -> Result<PulseSequence> {
    lower(&ub_factors(reduced(phi)), expand, sys)
}
