//! Dense operator and Pauli-string algebra for spin-1/2 registers.
//!
//! Basis convention: spin 1 is the leftmost tensor factor and the most
//! significant bit of a basis index, and `|0>` is spin up, so `Z|0> = |0>`.
//! Exponentials are written `exp(-i θ G)` for a generator `G`.

mod operator;
mod pauli;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::EQ_TOL;

pub use operator::{commutator, Operator};
pub use pauli::{embed, pauli_matrix, PauliLetter, PauliString, Phase};

/// `exp(-i θ P) = cos θ · I − i sin θ · P` for a Hermitian Pauli string `P`.
pub fn exp_pauli_string(theta: f64, p: &PauliString) -> Result<Operator> {
    if !p.is_hermitian() {
        return Err(Error::NonHermitianGenerator(p.to_string()));
    }
    let dim = 1 << p.n_spins();
    let mask = p.flip_mask();
    let (s, c) = theta.sin_cos();
    let mut u = Operator::zeros(dim);
    for col in 0..dim {
        u.set(col, col, Complex64::new(c, 0.0));
    }
    let minus_i_sin = Complex64::new(0.0, -s);
    for col in 0..dim {
        let row = col ^ mask;
        let v = u.get(row, col) + minus_i_sin * p.column_value(col);
        u.set(row, col, v);
    }
    Ok(u)
}

/// `exp(-i h t)` by Hermitian eigendecomposition.
///
/// This path shares nothing with the Pauli closed forms and is used as the
/// reference propagator when checking them.
pub fn exp_hermitian(h: &Operator, t: f64) -> Result<Operator> {
    let defect = h.hermiticity_defect();
    if defect > EQ_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.dim();
    let m = DMatrix::from_fn(n, n, |r, c| h.get(r, c));
    let eig = m.symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&lambda| Complex64::new(0.0, -lambda * t).exp())
        .collect();
    Ok(Operator::from_fn(n, |r, c| {
        (0..n).map(|k| v[(r, k)] * phases[k] * v[(c, k)].conj()).sum()
    }))
}

/// Eigenvalues of a Hermitian operator in ascending order.
pub fn hermitian_eigenvalues(h: &Operator) -> Result<Vec<f64>> {
    let defect = h.hermiticity_defect();
    if defect > EQ_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = h.dim();
    let m = DMatrix::from_fn(n, n, |r, c| h.get(r, c));
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Pauli-expansion coefficient `Re tr(m · P) / 2^n`.
pub fn hs_coefficient(m: &Operator, p: &PauliString) -> Result<f64> {
    let dim = 1usize << p.n_spins();
    if m.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.dim(),
        });
    }
    let mask = p.flip_mask();
    let tr: Complex64 = (0..dim).map(|c| m.get(c, c ^ mask) * p.column_value(c)).sum();
    Ok(tr.re / dim as f64)
}

/// Full Pauli expansion of an operator on `n` spins, one coefficient per
/// unit-phase string in [`PauliString::all`] order.
pub fn pauli_decompose(m: &Operator) -> Result<Vec<(PauliString, f64)>> {
    let n = m.n_spins().ok_or(Error::DimensionMismatch {
        expected: m.dim().next_power_of_two(),
        found: m.dim(),
    })?;
    PauliString::all(n)
        .map(|p| hs_coefficient(m, &p).map(|c| (p, c)))
        .collect()
}

/// `Σ c_k P_k` as a dense operator.
pub fn pauli_sum(n_spins: usize, terms: &[(PauliString, f64)]) -> Result<Operator> {
    terms
        .iter()
        .try_fold(Operator::zeros(1 << n_spins), |acc, (p, c)| {
            acc.try_add(&embed(p, n_spins)?.scale(Complex64::new(*c, 0.0)))
        })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use proptest::prelude::*;

    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn letter() -> impl Strategy<Value = PauliLetter> {
        prop::sample::select(PauliLetter::ALL.to_vec())
    }

    fn phase() -> impl Strategy<Value = Phase> {
        prop::sample::select(vec![Phase::One, Phase::I, Phase::MinusOne, Phase::MinusI])
    }

    fn pauli_pair() -> impl Strategy<Value = (PauliString, PauliString)> {
        (1usize..=4).prop_flat_map(|n| {
            (
                phase(),
                prop::collection::vec(letter(), n),
                phase(),
                prop::collection::vec(letter(), n),
            )
                .prop_map(|(pa, la, pb, lb)| (PauliString::new(pa, la), PauliString::new(pb, lb)))
        })
    }

    fn hermitian_string() -> impl Strategy<Value = PauliString> {
        (
            prop::sample::select(vec![Phase::One, Phase::MinusOne]),
            prop::collection::vec(letter(), 1..=4),
        )
            .prop_map(|(p, l)| PauliString::new(p, l))
    }

    #[test]
    fn exp_pauli_zero_angle_is_identity() {
        assert_eq!(exp_pauli_string(0.0, &ps("XZY")).unwrap(), Operator::identity(8));
    }

    #[test]
    fn exp_pauli_quarter_turn() {
        let u = exp_pauli_string(FRAC_PI_2, &ps("XXI")).unwrap();
        let expected = ps("XXI").to_operator().scale(Complex64::new(0.0, -1.0));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn exp_pauli_matches_eigendecomposition() {
        let p = ps("XZY");
        let closed = exp_pauli_string(0.7, &p).unwrap();
        let oracle = exp_hermitian(&p.to_operator(), 0.7).unwrap();
        assert!(closed.max_abs_diff(&oracle) < 1e-9);
    }

    #[test]
    fn exp_pauli_rejects_imaginary_phase() {
        assert!(matches!(
            exp_pauli_string(0.3, &ps("iXY")),
            Err(Error::NonHermitianGenerator(_))
        ));
    }

    #[test]
    fn exp_hermitian_of_zero_is_identity() {
        let u = exp_hermitian(&Operator::zeros(8), 1.234).unwrap();
        assert!(u.max_abs_diff(&Operator::identity(8)) < 1e-14);
    }

    #[test]
    fn exp_hermitian_diagonal_generator() {
        let u = exp_hermitian(&ps("ZII").to_operator(), FRAC_PI_2).unwrap();
        let minus_i = Complex64::new(0.0, -1.0);
        let diag: Vec<Complex64> = (0..8).map(|k| if k < 4 { minus_i } else { -minus_i }).collect();
        assert!(u.max_abs_diff(&Operator::from_diagonal(&diag)) < 1e-14);
    }

    #[test]
    fn exp_hermitian_rejects_non_hermitian() {
        let m = ps("iXX").to_operator();
        assert!(matches!(exp_hermitian(&m, 1.0), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn hs_coefficient_orthonormal() {
        let m = ps("YII").to_operator();
        assert_eq!(hs_coefficient(&m, &ps("YII")).unwrap(), 1.0);
        assert_eq!(hs_coefficient(&m, &ps("XII")).unwrap(), 0.0);
    }

    #[test]
    fn hs_coefficient_dimension_mismatch() {
        assert!(hs_coefficient(&Operator::identity(4), &ps("XII")).is_err());
    }

    #[test]
    fn eigenvalues_of_single_pauli() {
        let ev = hermitian_eigenvalues(&ps("XZ").to_operator()).unwrap();
        assert_eq!(ev.len(), 4);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_roundtrip_on_fixed_sum() {
        let terms = vec![(ps("YII"), 0.25), (ps("ZXI"), -PI), (ps("ZZY"), 1e-3)];
        let m = pauli_sum(3, &terms).unwrap();
        let coeffs = pauli_decompose(&m).unwrap();
        for (p, c) in coeffs {
            let expected = terms.iter().find(|(q, _)| *q == p).map_or(0.0, |t| t.1);
            assert!((c - expected).abs() < 1e-12, "{p}: {c} vs {expected}");
        }
    }

    proptest! {
        #[test]
        fn embedding_is_a_homomorphism((a, b) in pauli_pair()) {
            let symbolic = a.compose(&b).unwrap().to_operator();
            let numeric = &a.to_operator() * &b.to_operator();
            prop_assert_eq!(symbolic.max_abs_diff(&numeric), 0.0);
        }

        #[test]
        fn exp_pauli_inverse_pair(theta in -10.0f64..10.0, p in hermitian_string()) {
            let fwd = exp_pauli_string(theta, &p).unwrap();
            let back = exp_pauli_string(-theta, &p).unwrap();
            let prod = &fwd * &back;
            prop_assert!(prod.max_abs_diff(&Operator::identity(prod.dim())) <= 1e-12);
            prop_assert!(fwd.unitarity_defect() <= 1e-12);
        }

        #[test]
        fn exp_hermitian_is_unitary(
            coeffs in prop::collection::vec(-2.0f64..2.0, 64),
            t in -5.0f64..5.0,
        ) {
            let terms: Vec<_> = PauliString::all(3).zip(coeffs).collect();
            let h = pauli_sum(3, &terms).unwrap();
            let u = exp_hermitian(&h, t).unwrap();
            prop_assert!(u.unitarity_defect() <= 1e-10);
        }

        #[test]
        fn hs_coefficient_recovers_random_sum(
            coeffs in prop::collection::vec(-3.0f64..3.0, 64),
            scale in -2.0f64..2.0,
        ) {
            let terms: Vec<_> = PauliString::all(3).zip(coeffs.iter().copied()).collect();
            let m = pauli_sum(3, &terms).unwrap();
            let scaled = m.scale(Complex64::new(scale, 0.0));
            for (p, c) in &terms {
                prop_assert!((hs_coefficient(&m, p).unwrap() - c).abs() <= 1e-12);
                prop_assert!((hs_coefficient(&scaled, p).unwrap() - scale * c).abs() <= 1e-12);
            }
        }
    }
}
