use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix stored row-major.
///
/// Dimensions are powers of two for anything built from spins, but the type
/// itself only requires squareness.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex64>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Identity on `n_spins` spin-1/2 particles.
    pub fn identity_spins(n_spins: usize) -> Self {
        Self::identity(1 << n_spins)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = *d;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of spins, if the dimension is a power of two.
    pub fn n_spins(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    fn check_dim(&self, other: &Operator) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn try_mul(&self, rhs: &Operator) -> Result<Operator> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Operator) -> Result<Operator> {
        self.check_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Operator) -> Result<Operator> {
        self.check_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn zip_with(&self, rhs: &Operator, f: impl Fn(Complex64, Complex64) -> Complex64) -> Operator {
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Operator {
        Operator {
            dim: self.dim,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Operator {
        Operator::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product `self ⊗ rhs`; `self` becomes the most significant factor.
    pub fn kron(&self, rhs: &Operator) -> Operator {
        let (a, b) = (self.dim, rhs.dim);
        Operator::from_fn(a * b, |r, c| self.get(r / b, c / b) * rhs.get(r % b, c % b))
    }

    /// Largest entrywise modulus of `self - other`.
    ///
    /// Panics if the dimensions differ.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.dagger() * self;
        prod.max_abs_diff(&Operator::identity(self.dim))
    }

    /// `‖M − M†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Operator) -> Result<Operator> {
        u.try_mul(self)?.try_mul(&u.dagger())
    }
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self.get(r, c);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.try_mul(rhs).expect("operator product: dimension mismatch")
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        self.try_add(rhs).expect("operator sum: dimension mismatch")
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        self.try_sub(rhs).expect("operator difference: dimension mismatch")
    }
}

impl Mul<Complex64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: Complex64) -> Operator {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: f64) -> Operator {
        self.scale(Complex64::new(rhs, 0.0))
    }
}
