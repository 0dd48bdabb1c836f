//! Product-operator simulation of the transfer experiment: preparation from
//! thermal equilibrium, evolution under `U_A`, `U_B` or `U`, amplitude sweeps,
//! the `cos²φ`/`sin²φ` fit and pure-state transfer.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nmrcompile::{event_unitary, Axis, PulseEvent, PulseSequence, SpinSystem};
use crate::spinops::{hs_coefficient, pauli_decompose, pauli_sum, Operator, PauliLetter, PauliString};
use crate::xymodel::{pst_unitary, PhaseAngle};
use crate::EQ_TOL;

/// Fitted amplitudes reported for the ¹³C signals (arbitrary spectrometer units).
/// Kept as reference metadata; the simulator's noiseless fit gives 1.
pub const EXPERIMENTAL_A1: f64 = 6.20;
pub const EXPERIMENTAL_A3: f64 = 5.65;

/// Traceless Hermitian deviation density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationState {
    matrix: Operator,
}

impl DeviationState {
    pub fn new(matrix: Operator) -> Result<Self> {
        if matrix.n_spins().is_none() {
            return Err(Error::DimensionMismatch {
                expected: matrix.dim().next_power_of_two(),
                found: matrix.dim(),
            });
        }
        let defect = matrix.hermiticity_defect();
        if defect > EQ_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = matrix.trace().norm();
        if tr > EQ_TOL * matrix.dim() as f64 {
            return Err(Error::NotTraceless(tr));
        }
        Ok(Self { matrix })
    }

    /// `Σ c_k P_k`. The identity string is not allowed a nonzero weight.
    pub fn from_terms(n_spins: usize, terms: &[(PauliString, f64)]) -> Result<Self> {
        Self::new(pauli_sum(n_spins, terms)?)
    }

    pub fn zero(n_spins: usize) -> Self {
        Self {
            matrix: Operator::zeros(1 << n_spins),
        }
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn n_spins(&self) -> usize {
        self.matrix.n_spins().expect("validated on construction")
    }

    /// Coefficient of a unit-phase Pauli string.
    pub fn coefficient(&self, p: &PauliString) -> f64 {
        hs_coefficient(&self.matrix, p).expect("string length checked by caller")
    }

    /// Nonzero Pauli terms (|c| > `tol`) in lexicographic order.
    pub fn terms(&self, tol: f64) -> Vec<(PauliString, f64)> {
        pauli_decompose(&self.matrix)
            .expect("power-of-two dimension")
            .into_iter()
            .filter(|(_, c)| c.abs() > tol)
            .collect()
    }

    /// Frobenius norm `sqrt(tr ρ²)`.
    pub fn hs_norm(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            matrix: &self.matrix * factor,
        }
    }
}

/// Thermal deviation `Σ_j γ_j I_z^j` with `I_z = σ_z/2`.
pub fn equilibrium_state(sys: &SpinSystem) -> DeviationState {
    let n = sys.n_spins();
    let terms: Vec<_> = sys
        .gamma()
        .iter()
        .enumerate()
        .map(|(j, g)| (PauliString::single(n, j, PauliLetter::Z), g / 2.0))
        .collect();
    DeviationState::from_terms(n, &terms).expect("Z terms are traceless and Hermitian")
}

/// `[π/2]_y² – [π/2]_y³ – [grad]_z – [π/2]_x¹`, which turns the equilibrium
/// state into a positive multiple of `σ_y¹`.
pub fn preparation_sequence() -> PulseSequence {
    PulseSequence::new(vec![
        PulseEvent::rf(std::f64::consts::FRAC_PI_2, Axis::Y, &[2]),
        PulseEvent::rf(std::f64::consts::FRAC_PI_2, Axis::Y, &[3]),
        PulseEvent::Gradient,
        PulseEvent::rf(std::f64::consts::FRAC_PI_2, Axis::X, &[1]),
    ])
}

/// Dephases every term containing an X or Y letter.
///
/// Strings made of I and Z are exactly the diagonal matrices, and every string
/// with an X or Y is purely off-diagonal, so this keeps the diagonal.
pub fn apply_gradient(s: &DeviationState) -> DeviationState {
    let dim = s.matrix.dim();
    let mut m = Operator::zeros(dim);
    for i in 0..dim {
        m.set(i, i, s.matrix.get(i, i));
    }
    DeviationState { matrix: m }
}

/// `U ρ U†`.
pub fn evolve(s: &DeviationState, u: &Operator) -> Result<DeviationState> {
    if u.dim() != s.matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.matrix.dim(),
            found: u.dim(),
        });
    }
    let defect = u.unitarity_defect();
    if defect > EQ_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(DeviationState {
        matrix: s.matrix.conjugate_by(u)?,
    })
}

/// Runs a pulse sequence on a state; gradients act through [`apply_gradient`].
pub fn apply_sequence(
    s: &DeviationState,
    seq: &PulseSequence,
    sys: &SpinSystem,
) -> Result<DeviationState> {
    if sys.n_spins() != s.n_spins() {
        return Err(Error::DimensionMismatch {
            expected: s.n_spins(),
            found: sys.n_spins(),
        });
    }
    seq.events().iter().try_fold(s.clone(), |state, e| match e {
        PulseEvent::Gradient => Ok(apply_gradient(&state)),
        _ => evolve(&state, &event_unitary(e, sys)?),
    })
}

/// Which closed-form propagator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagator {
    /// `U_A(φ) = cos φ − (i/√2) sin φ (X₁X₂ + Y₂Y₃)`.
    A,
    /// `U_B(φ) = cos φ − (i/√2) sin φ (Y₁Y₂ + X₂X₃)`.
    B,
    /// `U(φ) = U_A(φ) U_B(φ)`.
    Full,
}

fn half_propagator(phi: f64, first: &str, second: &str) -> Operator {
    let gen = &first.parse::<PauliString>().expect("literal").to_operator()
        + &second.parse::<PauliString>().expect("literal").to_operator();
    let (s, c) = phi.sin_cos();
    &(&Operator::identity(8) * c) + &gen.scale(Complex64::new(0.0, -s / SQRT_2))
}

pub fn branch_propagator(which: Propagator, phi: PhaseAngle) -> Operator {
    let phi = phi.radians();
    match which {
        Propagator::A => half_propagator(phi, "XXI", "IYY"),
        Propagator::B => half_propagator(phi, "YYI", "IXX"),
        Propagator::Full => {
            &half_propagator(phi, "XXI", "IYY") * &half_propagator(phi, "YYI", "IXX")
        }
    }
}

/// Initial-state family of the amplitude sweep.
///
/// Branch A starts from `σ_y¹` and evolves under `U_A`; branch B starts from
/// `σ_x¹` and evolves under `U_B`. The other half commutes with each initial
/// state, so both give the same result as the full `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    A,
    B,
}

impl Branch {
    fn letter(self) -> PauliLetter {
        match self {
            Branch::A => PauliLetter::Y,
            Branch::B => PauliLetter::X,
        }
    }

    pub fn propagator(self) -> Propagator {
        match self {
            Branch::A => Propagator::A,
            Branch::B => Propagator::B,
        }
    }

    /// `σ_y¹` or `σ_x¹`.
    pub fn initial_term(self) -> PauliString {
        PauliString::single(3, 0, self.letter())
    }

    /// Antiphase term on spin 2: `Z₁X₂` for A, `Z₁Y₂` for B.
    pub fn intermediate_term(self) -> PauliString {
        let partner = match self {
            Branch::A => PauliLetter::X,
            Branch::B => PauliLetter::Y,
        };
        PauliString::from_sites(3, &[(0, PauliLetter::Z), (1, partner)])
    }

    /// Transferred term on spin 3: `Z₁Z₂Y₃` for A, `Z₁Z₂X₃` for B.
    pub fn transferred_term(self) -> PauliString {
        PauliString::from_sites(3, &[(0, PauliLetter::Z), (1, PauliLetter::Z), (2, self.letter())])
    }

    pub fn initial_state(self) -> DeviationState {
        DeviationState::from_terms(3, &[(self.initial_term(), 1.0)]).expect("traceless")
    }

    /// The branch's initial state after evolving to `φ`.
    pub fn evolved_state(self, phi: PhaseAngle) -> DeviationState {
        evolve(&self.initial_state(), &branch_propagator(self.propagator(), phi))
            .expect("closed-form propagators are unitary")
    }
}

/// C1 and C3 amplitudes at one phase angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSample {
    pub phi: f64,
    pub amp_c1: f64,
    pub amp_c3: f64,
}

/// C1 amplitude is the coefficient of the initial single-spin term, C3
/// amplitude the negated coefficient of the transferred three-spin term.
/// Exact values are `cos²φ` and `sin²φ`.
pub fn amplitude_curve(phis: &[f64], branch: Branch) -> Vec<AmplitudeSample> {
    let c1 = branch.initial_term();
    let c3 = branch.transferred_term();
    phis.par_iter()
        .map(|&phi| {
            let state = branch.evolved_state(PhaseAngle::new(phi));
            AmplitudeSample {
                phi,
                amp_c1: state.coefficient(&c1),
                amp_c3: -state.coefficient(&c3),
            }
        })
        .collect()
}

/// Least-squares amplitudes of `a1 cos²φ` and `a3 sin²φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineFit {
    pub a1: f64,
    pub a3: f64,
    /// `(amp_c1 − a1 cos²φ, amp_c3 − a3 sin²φ)` per sample.
    pub residuals: Vec<(f64, f64)>,
}

impl CosineFit {
    pub fn rms(&self) -> (f64, f64) {
        let n = self.residuals.len() as f64;
        let (s1, s3) = self
            .residuals
            .iter()
            .fold((0.0, 0.0), |(a, b), (r1, r3)| (a + r1 * r1, b + r3 * r3));
        ((s1 / n).sqrt(), (s3 / n).sqrt())
    }
}

pub fn fit_cos2(data: &[AmplitudeSample]) -> Result<CosineFit> {
    if data.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 samples, got {}",
            data.len()
        )));
    }
    if data.iter().all(|s| s.phi == data[0].phi) {
        return Err(Error::DegenerateFit("all samples share one phase angle".into()));
    }
    let (mut cc, mut c_y1, mut ss, mut s_y3) = (0.0, 0.0, 0.0, 0.0);
    for s in data {
        let c2 = s.phi.cos().powi(2);
        let s2 = s.phi.sin().powi(2);
        cc += c2 * c2;
        c_y1 += c2 * s.amp_c1;
        ss += s2 * s2;
        s_y3 += s2 * s.amp_c3;
    }
    let floor = 1e-12 * data.len() as f64;
    if cc <= floor || ss <= floor {
        return Err(Error::DegenerateFit(
            "cos²φ or sin²φ vanishes at every sample".into(),
        ));
    }
    let (a1, a3) = (c_y1 / cc, s_y3 / ss);
    let residuals = data
        .iter()
        .map(|s| {
            (
                s.amp_c1 - a1 * s.phi.cos().powi(2),
                s.amp_c3 - a3 * s.phi.sin().powi(2),
            )
        })
        .collect();
    Ok(CosineFit { a1, a3, residuals })
}

/// Single-qubit state `α|0> + β|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    alpha: Complex64,
    beta: Complex64,
}

impl QubitState {
    /// Requires `|α|² + |β|² = 1` to 1e-12.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Self { alpha, beta })
    }

    /// Rescales to unit norm; rejects the zero vector.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// Result of a transfer run.
#[derive(Debug, Clone, PartialEq)]
pub struct PstOutcome {
    /// Three-spin amplitudes in basis order `|000>, …, |111>`.
    pub final_state: Vec<Complex64>,
    /// `|<00 q | final>|²`, the overlap with the input qubit placed on spin 3.
    pub fidelity: f64,
    pub corrected: bool,
}

/// Places `q` on spin 1 of `|q>|00>`, applies the transfer propagator and,
/// if `correct_phase`, a `σ_z` on spin 3.
///
/// The uncorrected output is `|00>(α|0> − β|1>)`.
pub fn pst_transfer(q: &QubitState, correct_phase: bool) -> Result<PstOutcome> {
    let q = QubitState::new(q.alpha, q.beta)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut input = vec![zero; 8];
    input[0b000] = q.alpha;
    input[0b100] = q.beta;
    let mut out = pst_unitary().apply(&input)?;
    if correct_phase {
        out = PauliString::single(3, 2, PauliLetter::Z).to_operator().apply(&out)?;
    }
    let mut target = vec![zero; 8];
    target[0b000] = q.alpha;
    target[0b001] = q.beta;
    let overlap: Complex64 = target.iter().zip(&out).map(|(t, o)| t.conj() * o).sum();
    Ok(PstOutcome {
        final_state: out,
        fidelity: overlap.norm_sqr(),
        corrected: correct_phase,
    })
}
