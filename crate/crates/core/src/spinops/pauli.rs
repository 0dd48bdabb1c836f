use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::Operator;
use crate::error::{Error, Result};

/// A single-spin Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    /// Whether the letter flips the computational basis state.
    #[inline]
    pub fn flips(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    /// Matrix element `<b ^ flip | letter | b>` for input bit `b`.
    #[inline]
    fn column_factor(self, bit: bool) -> Complex64 {
        match (self, bit) {
            (PauliLetter::I | PauliLetter::X, _) => Complex64::new(1.0, 0.0),
            (PauliLetter::Z, false) => Complex64::new(1.0, 0.0),
            (PauliLetter::Z, true) => Complex64::new(-1.0, 0.0),
            (PauliLetter::Y, false) => Complex64::new(0.0, 1.0),
            (PauliLetter::Y, true) => Complex64::new(0.0, -1.0),
        }
    }

    /// Product `self · rhs` as a phase (power of i) and a letter.
    pub fn mul(self, rhs: PauliLetter) -> (Phase, PauliLetter) {
        use PauliLetter::*;
        match (self, rhs) {
            (I, p) | (p, I) => (Phase::One, p),
            (a, b) if a == b => (Phase::One, I),
            (X, Y) => (Phase::I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, X) => (Phase::I, Y),
            (Y, X) => (Phase::MinusI, Z),
            (Z, Y) => (Phase::MinusI, X),
            (X, Z) => (Phase::MinusI, Y),
            _ => unreachable!(),
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

/// The 2x2 matrix of a Pauli letter in the basis (|0>, |1>), |0> = spin up.
pub fn pauli_matrix(letter: PauliLetter) -> Operator {
    Operator::from_fn(2, |r, c| {
        let bit = c == 1;
        let target = c ^ usize::from(letter.flips());
        if r == target {
            letter.column_factor(bit)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Phase factor of a Pauli string: `i^k` for `k` in 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn power(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn from_power(k: u8) -> Self {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::One | Phase::MinusOne)
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase::from_power(self.power() + other.power())
    }

    /// Real sign for `±1` phases.
    pub fn sign(self) -> Option<f64> {
        match self {
            Phase::One => Some(1.0),
            Phase::MinusOne => Some(-1.0),
            _ => None,
        }
    }
}

/// A phased tensor product of Pauli letters, spin 1 first.
///
/// Parsed from and displayed as e.g. `XZY`, `-ZZY`, `iXX`, `-iYI`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: Phase,
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(phase: Phase, letters: Vec<PauliLetter>) -> Self {
        Self { phase, letters }
    }

    pub fn identity(n_spins: usize) -> Self {
        Self::new(Phase::One, vec![PauliLetter::I; n_spins])
    }

    /// Single letter on spin `index` (0-based), identity elsewhere.
    pub fn single(n_spins: usize, index: usize, letter: PauliLetter) -> Self {
        let mut s = Self::identity(n_spins);
        s.letters[index] = letter;
        s
    }

    /// Letters placed on the given 0-based spin indices, identity elsewhere.
    pub fn from_sites(n_spins: usize, sites: &[(usize, PauliLetter)]) -> Self {
        let mut s = Self::identity(n_spins);
        for &(i, l) in sites {
            s.letters[i] = l;
        }
        s
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn n_spins(&self) -> usize {
        self.letters.len()
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// `embed(p)` is Hermitian exactly when the phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// True when every letter is I or Z, i.e. the embedded matrix is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.letters.iter().all(|l| !l.flips())
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|l| **l != PauliLetter::I).count()
    }

    /// Symbolic product `self · rhs`.
    pub fn compose(&self, rhs: &PauliString) -> Result<PauliString> {
        if self.n_spins() != rhs.n_spins() {
            return Err(Error::DimensionMismatch {
                expected: self.n_spins(),
                found: rhs.n_spins(),
            });
        }
        let mut phase = self.phase.times(rhs.phase);
        let letters = self
            .letters
            .iter()
            .zip(&rhs.letters)
            .map(|(a, b)| {
                let (p, l) = a.mul(*b);
                phase = phase.times(p);
                l
            })
            .collect();
        Ok(PauliString::new(phase, letters))
    }

    /// Bit mask of spins flipped by the string (spin 1 is the most significant bit).
    pub(crate) fn flip_mask(&self) -> usize {
        let n = self.n_spins();
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| l.flips())
            .fold(0, |m, (k, _)| m | 1 << (n - 1 - k))
    }

    /// Matrix element `<col ^ mask | P | col>`.
    pub(crate) fn column_value(&self, col: usize) -> Complex64 {
        let n = self.n_spins();
        self.letters
            .iter()
            .enumerate()
            .fold(self.phase.to_complex(), |acc, (k, l)| {
                acc * l.column_factor((col >> (n - 1 - k)) & 1 == 1)
            })
    }

    /// Dense matrix of the string.
    pub fn to_operator(&self) -> Operator {
        let dim = 1 << self.n_spins();
        let mask = self.flip_mask();
        let mut m = Operator::zeros(dim);
        for col in 0..dim {
            m.set(col ^ mask, col, self.column_value(col));
        }
        m
    }

    /// Every unit-phase Pauli string on `n_spins` spins, in lexicographic I<X<Y<Z order.
    pub fn all(n_spins: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n_spins)).map(move |code| {
            let letters = (0..n_spins)
                .map(|k| PauliLetter::ALL[(code >> (2 * (n_spins - 1 - k))) & 3])
                .collect();
            PauliString::new(Phase::One, letters)
        })
    }
}

/// `phase · (letter_1 ⊗ … ⊗ letter_n)` as an operator on `n_spins` spins.
pub fn embed(p: &PauliString, n_spins: usize) -> Result<Operator> {
    if p.n_spins() != n_spins {
        return Err(Error::DimensionMismatch {
            expected: n_spins,
            found: p.n_spins(),
        });
    }
    Ok(p.to_operator())
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
            (Phase::MinusI, r)
        } else if let Some(r) = s.strip_prefix("+i").or_else(|| s.strip_prefix('i')) {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MinusOne, r)
        } else {
            (Phase::One, s.strip_prefix('+').unwrap_or(s))
        };
        if rest.is_empty() {
            return Err(Error::InvalidPauli(format!("{s:?} has no letters")));
        }
        let letters = rest
            .chars()
            .map(|c| {
                PauliLetter::from_char(c)
                    .ok_or_else(|| Error::InvalidPauli(format!("unexpected character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::new(phase, letters))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            Phase::One => "",
            Phase::I => "i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        };
        f.write_str(prefix)?;
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Kronecker-product construction, independent of the signed-permutation path.
    fn kron_oracle(p: &PauliString) -> Operator {
        p.letters()
            .iter()
            .fold(Operator::identity(1), |acc, l| acc.kron(&pauli_matrix(*l)))
            .scale(p.phase().to_complex())
    }

    #[test]
    fn z_is_diag_plus_minus() {
        let z = pauli_matrix(PauliLetter::Z);
        assert_eq!(z.get(0, 0), c(1.0, 0.0));
        assert_eq!(z.get(1, 1), c(-1.0, 0.0));
        assert_eq!(z.get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn x_flips_up_to_down() {
        let x = pauli_matrix(PauliLetter::X);
        let out = x.apply(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(out, vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn xy_is_iz_and_cyclic() {
        let (x, y, z) = (
            pauli_matrix(PauliLetter::X),
            pauli_matrix(PauliLetter::Y),
            pauli_matrix(PauliLetter::Z),
        );
        let i = c(0.0, 1.0);
        assert_eq!(&x * &y, z.scale(i));
        assert_eq!(&y * &z, x.scale(i));
        assert_eq!(&z * &x, y.scale(i));
    }

    #[test]
    fn embed_zii() {
        let m = embed(&ps("ZII"), 3).unwrap();
        let diag: Vec<f64> = (0..8).map(|i| m.get(i, i).re).collect();
        assert_eq!(diag, vec![1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
        assert!(ps("ZII").is_diagonal());
        let off_diag = (0..8).flat_map(|r| (0..8).map(move |c| (r, c))).filter(|(r, c)| r != c);
        assert!(off_diag.into_iter().all(|(r, c)| m.get(r, c) == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn embed_identity_string() {
        assert_eq!(embed(&ps("III"), 3).unwrap(), Operator::identity(8));
    }

    #[test]
    fn embed_rejects_wrong_length() {
        assert!(matches!(
            embed(&ps("XX"), 3),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn xxi_times_yyi_is_minus_zzi() {
        // Oracle: plain 8x8 matrix product of Kronecker-built factors.
        let prod = &kron_oracle(&ps("XXI")) * &kron_oracle(&ps("YYI"));
        assert_eq!(prod.max_abs_diff(&embed(&ps("-ZZI"), 3).unwrap()), 0.0);
        assert_eq!(ps("XXI").compose(&ps("YYI")).unwrap(), ps("-ZZI"));
    }

    #[test]
    fn embed_matches_kron_for_every_three_spin_string() {
        for p in PauliString::all(3) {
            for phase in [Phase::One, Phase::I, Phase::MinusOne, Phase::MinusI] {
                let p = p.clone().with_phase(phase);
                assert_eq!(p.to_operator(), kron_oracle(&p), "{p}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        for s in ["XZY", "-ZZY", "iXX", "-iYI", "I"] {
            assert_eq!(ps(s).to_string(), s);
        }
        assert_eq!(ps("+XX"), ps("XX"));
        assert_eq!(ps("+iXX"), ps("iXX"));
        assert!("".parse::<PauliString>().is_err());
        assert!("-".parse::<PauliString>().is_err());
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn all_strings_enumerates_4_pow_n() {
        let v: Vec<_> = PauliString::all(2).collect();
        assert_eq!(v.len(), 16);
        assert_eq!(v[0], ps("II"));
        assert_eq!(v[1], ps("IX"));
        assert_eq!(v[15], ps("ZZ"));
    }

    #[test]
    fn square_is_phase_squared_identity() {
        for p in PauliString::all(2) {
            for phase in [Phase::One, Phase::I, Phase::MinusOne, Phase::MinusI] {
                let p = p.clone().with_phase(phase);
                let sq = p.compose(&p).unwrap();
                assert_eq!(sq, PauliString::identity(2).with_phase(phase.times(phase)));
            }
        }
    }
}
