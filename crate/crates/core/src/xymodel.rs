//! Heisenberg XY chain: Hamiltonian, exact propagator, the closed-form 8x8
//! propagator of the uniform three-spin chain and its six-factor product.
//!
//! Evolution is parameterized by the phase angle `φ = J t / √2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spinops::{exp_hermitian, exp_pauli_string, Operator, PauliLetter, PauliString};

/// Nearest-neighbour XY chain with per-bond couplings (angular frequency, ħ = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct XYChainSpec {
    couplings: Vec<f64>,
}

impl XYChainSpec {
    pub fn new(couplings: Vec<f64>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidChain("a chain needs at least two spins".into()));
        }
        if let Some(j) = couplings.iter().find(|j| !j.is_finite()) {
            return Err(Error::InvalidChain(format!("non-finite coupling {j}")));
        }
        Ok(Self { couplings })
    }

    pub fn uniform(n_spins: usize, coupling: f64) -> Result<Self> {
        Self::new(vec![coupling; n_spins.saturating_sub(1)])
    }

    /// The three-spin chain with equal couplings.
    pub fn three_spin(coupling: f64) -> Result<Self> {
        Self::uniform(3, coupling)
    }

    pub fn n_spins(&self) -> usize {
        self.couplings.len() + 1
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// The common coupling of a uniform three-spin chain.
    ///
    /// The closed-form propagator and the six-factor product only hold in
    /// that case; anything else is rejected.
    pub fn uniform_three_coupling(&self) -> Result<f64> {
        if self.n_spins() != 3 {
            return Err(Error::InvalidChain(format!(
                "expected three spins, got {}",
                self.n_spins()
            )));
        }
        let j = self.couplings[0];
        if self.couplings[1] != j {
            return Err(Error::InvalidChain(format!(
                "couplings must be equal, got {} and {}",
                j, self.couplings[1]
            )));
        }
        if j == 0.0 {
            return Err(Error::InvalidChain("coupling must be nonzero".into()));
        }
        Ok(j)
    }
}

/// Phase angle `φ = J t / √2` in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhaseAngle(f64);

impl PhaseAngle {
    /// Panics if `phi` is not finite.
    pub fn new(phi: f64) -> Self {
        assert!(phi.is_finite(), "phase angle must be finite, got {phi}");
        Self(phi)
    }

    pub fn from_time(t: f64, coupling: f64) -> Self {
        Self::new(coupling * t / SQRT_2)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Evolution time for the given coupling.
    pub fn time(self, coupling: f64) -> f64 {
        self.0 * SQRT_2 / coupling
    }

    /// The transfer angle `π/2`, i.e. `t = π / (√2 J)`.
    pub fn transfer() -> Self {
        Self(FRAC_PI_2)
    }
}

/// Ordered product of Pauli rotations `exp(-i θ_k P_k)`.
///
/// Factors are stored in written operator order: the first factor is the
/// leftmost matrix and therefore acts last in time. [`FactorSequence::product`]
/// multiplies left to right, so the rightmost factor is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSequence {
    factors: Vec<(f64, PauliString)>,
}

impl FactorSequence {
    pub fn new(factors: Vec<(f64, PauliString)>) -> Result<Self> {
        if let Some((_, p)) = factors.iter().find(|(_, p)| !p.is_hermitian()) {
            return Err(Error::NonHermitianGenerator(p.to_string()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(f64, PauliString)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Matrix product of the factors in stored order.
    pub fn product(&self) -> Operator {
        let n = self.factors.first().map_or(0, |(_, p)| p.n_spins());
        self.factors
            .iter()
            .fold(Operator::identity_spins(n), |acc, (theta, p)| {
                let f = exp_pauli_string(*theta, p).expect("factors are Hermitian");
                &acc * &f
            })
    }
}

fn two_site(n: usize, i: usize, letter: PauliLetter) -> Operator {
    PauliString::from_sites(n, &[(i, letter), (i + 1, letter)]).to_operator()
}

/// `H = ½ Σ_bonds J_b (X_j X_{j+1} + Y_j Y_{j+1})`.
pub fn build_xy_hamiltonian(spec: &XYChainSpec) -> Operator {
    let n = spec.n_spins();
    spec.couplings()
        .iter()
        .enumerate()
        .fold(Operator::zeros(1 << n), |acc, (bond, &j)| {
            let term = &two_site(n, bond, PauliLetter::X) + &two_site(n, bond, PauliLetter::Y);
            &acc + &(&term * (0.5 * j))
        })
}

/// Total magnetization `Σ_j Z_j`.
pub fn total_magnetization(n_spins: usize) -> Operator {
    (0..n_spins).fold(Operator::zeros(1 << n_spins), |acc, i| {
        &acc + &PauliString::single(n_spins, i, PauliLetter::Z).to_operator()
    })
}

/// `exp(-i H t)` for an arbitrary chain, by eigendecomposition.
pub fn exact_propagator_at_time(spec: &XYChainSpec, t: f64) -> Result<Operator> {
    exp_hermitian(&build_xy_hamiltonian(spec), t)
}

/// `exp(-i H t)` with `t = φ √2 / J` for a uniform three-spin chain.
pub fn exact_propagator(spec: &XYChainSpec, phi: PhaseAngle) -> Result<Operator> {
    let j = spec.uniform_three_coupling()?;
    exact_propagator_at_time(spec, phi.time(j))
}

fn pauli(s: &str) -> PauliString {
    s.parse().expect("static Pauli literal")
}

/// The commuting pair `A = (X₁X₂ + Y₂Y₃)/2`, `B = (Y₁Y₂ + X₂X₃)/2`.
pub fn operators_ab(spec: &XYChainSpec) -> Result<(Operator, Operator)> {
    if spec.n_spins() != 3 {
        return Err(Error::InvalidChain(format!(
            "the A/B split is defined for three spins, got {}",
            spec.n_spins()
        )));
    }
    let a = &(&pauli("XXI").to_operator() + &pauli("IYY").to_operator()) * 0.5;
    let b = &(&pauli("YYI").to_operator() + &pauli("IXX").to_operator()) * 0.5;
    Ok((a, b))
}

/// Three Pauli strings whose halves obey `[L_x, L_y] = i L_z` and cyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularMomentum {
    pub x: PauliString,
    pub y: PauliString,
    pub z: PauliString,
}

impl AngularMomentum {
    /// `[P_x/2, P_y/2, P_z/2]` as operators.
    pub fn operators(&self) -> [Operator; 3] {
        [&self.x, &self.y, &self.z].map(|p| &p.to_operator() * 0.5)
    }
}

/// `(L^A, L^B)` with `L^A = (XXI, IYY, XZY)/2` and `L^B = (IXX, YYI, YZX)/2`.
pub fn angular_momentum_triples() -> (AngularMomentum, AngularMomentum) {
    (
        AngularMomentum {
            x: pauli("XXI"),
            y: pauli("IYY"),
            z: pauli("XZY"),
        },
        AngularMomentum {
            x: pauli("IXX"),
            y: pauli("YYI"),
            z: pauli("YZX"),
        },
    )
}

/// Six-factor product for `U = U_A U_B`.
///
/// `U_A = e^{-iπ/8 XZY} e^{-iφ XXI} e^{+iπ/8 XZY}` and
/// `U_B = e^{-iπ/8 YZX} e^{-iφ IXX} e^{+iπ/8 YZX}`, in written order.
pub fn decompose_factors(phi: PhaseAngle) -> FactorSequence {
    let phi = phi.radians();
    FactorSequence::new(vec![
        (FRAC_PI_8, pauli("XZY")),
        (phi, pauli("XXI")),
        (-FRAC_PI_8, pauli("XZY")),
        (FRAC_PI_8, pauli("YZX")),
        (phi, pauli("IXX")),
        (-FRAC_PI_8, pauli("YZX")),
    ])
    .expect("static factors are Hermitian")
}

/// The A and B halves of [`decompose_factors`] as separate three-factor products.
pub fn decompose_halves(phi: PhaseAngle) -> (FactorSequence, FactorSequence) {
    let mut all = decompose_factors(phi).factors;
    let b = all.split_off(3);
    (FactorSequence { factors: all }, FactorSequence { factors: b })
}

/// Closed-form propagator of the uniform three-spin chain.
///
/// Basis order `|000>, |001>, …, |111>` with spin 1 as the most significant bit.
/// The matrix splits into the magnetization sectors {000}, {001, 010, 100},
/// {011, 101, 110} and {111}.
pub fn propagator_analytic(phi: PhaseAngle) -> Operator {
    let phi = phi.radians();
    let (s, c) = phi.sin_cos();
    let re = |x: f64| Complex64::new(x, 0.0);
    let cos_sq = re(c * c);
    let minus_sin_sq = re(-s * s);
    let cos_2 = re((2.0 * phi).cos());
    let hop = Complex64::new(0.0, -(2.0 * phi).sin() / SQRT_2);

    let mut u = Operator::zeros(8);
    u.set(0, 0, re(1.0));
    u.set(7, 7, re(1.0));
    // One-excitation sector, indices 1 = |001>, 2 = |010>, 4 = |100>.
    // Two-excitation sector mirrors it with 6 = |110>, 5 = |101>, 3 = |011>.
    for (end_a, mid, end_b) in [(1, 2, 4), (6, 5, 3)] {
        u.set(end_a, end_a, cos_sq);
        u.set(end_b, end_b, cos_sq);
        u.set(mid, mid, cos_2);
        u.set(end_a, end_b, minus_sin_sq);
        u.set(end_b, end_a, minus_sin_sq);
        for end in [end_a, end_b] {
            u.set(end, mid, hop);
            u.set(mid, end, hop);
        }
    }
    u
}

/// Propagator at `φ = π/2`, which sends spin 1's state to spin 3.
pub fn pst_unitary() -> Operator {
    propagator_analytic(PhaseAngle::transfer())
}
