use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Single-qubit Pauli axis. Used both for observables and for uniform pulses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Axis::X),
            "Y" | "y" => Ok(Axis::Y),
            "Z" | "z" => Ok(Axis::Z),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown axis {other:?}"),
            }),
        }
    }
}

/// An N-qubit Pauli operator `i^k * prod_i Z_i^{v_i} X_i^{w_i}`.
///
/// Within a site the Z factor stands to the left of the X factor, so the
/// site pattern `(v, w) = (1, 1)` is `ZX = iY`. A Hermitian `Y_i` therefore
/// carries `k = 3` on its own. Sites are 1-based in the public API; the
/// packed vectors are indexed by `site - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    phase: u8,
    z: BitVec,
    x: BitVec,
}

impl PauliWord {
    pub fn identity(n_sites: usize) -> Self {
        Self {
            phase: 0,
            z: BitVec::zeros(n_sites),
            x: BitVec::zeros(n_sites),
        }
    }

    pub fn from_parts(phase_i_power: u8, z: BitVec, x: BitVec) -> Result<Self> {
        if z.len() != x.len() {
            return Err(Error::LengthMismatch {
                expected: z.len(),
                actual: x.len(),
            });
        }
        Ok(Self {
            phase: phase_i_power % 4,
            z,
            x,
        })
    }

    /// Splits a `2N`-bit symplectic vector `(z; x)` into a word with the given phase.
    pub fn from_symplectic(phase_i_power: u8, a: &BitVec) -> Result<Self> {
        if !a.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch {
                expected: a.len() + 1,
                actual: a.len(),
            });
        }
        let n = a.len() / 2;
        Self::from_parts(phase_i_power, a.slice(0, n), a.slice(n, n))
    }

    /// The Hermitian single-site operator `A_site`.
    pub fn single(n_sites: usize, site: usize, axis: Axis) -> Result<Self> {
        check_site(site, n_sites)?;
        let mut w = Self::identity(n_sites);
        match axis {
            Axis::X => w.x.set(site - 1, true),
            Axis::Z => w.z.set(site - 1, true),
            Axis::Y => {
                w.x.set(site - 1, true);
                w.z.set(site - 1, true);
                w.phase = 3;
            }
        }
        Ok(w)
    }

    /// The global Y pulse operator `Y_1 Y_2 ... Y_N`.
    pub fn all_y(n_sites: usize) -> Self {
        Self {
            phase: ((3 * n_sites) % 4) as u8,
            z: BitVec::ones(n_sites),
            x: BitVec::ones(n_sites),
        }
    }

    /// Parses a letter string such as `"IZXZ"`, `"-YZ"` or `"iXX"`.
    ///
    /// The optional prefix (`+`, `-`, `i`, `+i`, `-i`) is the coefficient in
    /// front of the ordinary letter product.
    pub fn from_letters(text: &str) -> Result<Self> {
        let (coefficient, letters) = split_coefficient(text);
        let n = letters.chars().count();
        let mut z = BitVec::zeros(n);
        let mut x = BitVec::zeros(n);
        let mut y_count = 0usize;
        for (i, c) in letters.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(i, true),
                'Z' => z.set(i, true),
                'Y' => {
                    x.set(i, true);
                    z.set(i, true);
                    y_count += 1;
                }
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid Pauli letter {other:?}"),
                    })
                }
            }
        }
        // coefficient * Y = coefficient * i^3 * ZX per Y site
        let phase = (coefficient as usize + 3 * y_count) % 4;
        Ok(Self {
            phase: phase as u8,
            z,
            x,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.z.len()
    }

    pub fn phase_i_power(&self) -> u8 {
        self.phase
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    /// The `2N`-bit vector `(z; x)`.
    pub fn symplectic(&self) -> BitVec {
        self.z.concat(&self.x)
    }

    pub fn y_count(&self) -> usize {
        self.z.and(&self.x).count_ones()
    }

    /// Power of `i` in front of the letter product (`I`, `X`, `Y`, `Z`).
    pub fn letter_coefficient(&self) -> u8 {
        ((self.phase as usize + self.y_count()) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.letter_coefficient().is_multiple_of(2)
    }

    /// `+1` or `-1` in front of the letter product, `None` for `±i`.
    pub fn sign(&self) -> Option<i8> {
        match self.letter_coefficient() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn letter(&self, site: usize) -> char {
        match (self.z.get(site - 1), self.x.get(site - 1)) {
            (false, false) => 'I',
            (false, true) => 'X',
            (true, false) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// Letter rendering without the coefficient, site 1 first.
    pub fn letters(&self) -> String {
        (1..=self.n_sites()).map(|s| self.letter(s)).collect()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.z.is_zero() && self.x.is_zero()
    }

    /// Operator product `self * other` with exact phase.
    pub fn mul(&self, other: &PauliWord) -> Result<PauliWord> {
        self.check_len(other)?;
        // Z^v1 X^w1 Z^v2 X^w2 = (-1)^{w1 v2} Z^{v1+v2} X^{w1+w2} on each site
        let sign = if self.x.dot(&other.z) { 2 } else { 0 };
        Ok(PauliWord {
            phase: (self.phase + other.phase + sign) % 4,
            z: &self.z ^ &other.z,
            x: &self.x ^ &other.x,
        })
    }

    pub fn adjoint(&self) -> PauliWord {
        // (Z^v X^w)^dagger = X^w Z^v = (-1)^{vw} Z^v X^w
        let sign = if self.x.dot(&self.z) { 2 } else { 0 };
        PauliWord {
            phase: (4 - self.phase + sign) % 4,
            z: self.z.clone(),
            x: self.x.clone(),
        }
    }

    /// Symplectic inner product: `true` when the two words anticommute.
    pub fn anticommutes_with(&self, other: &PauliWord) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        !self.anticommutes_with(other)
    }

    pub fn with_phase(mut self, phase_i_power: u8) -> Self {
        self.phase = phase_i_power % 4;
        self
    }

    pub fn negate(&self) -> PauliWord {
        self.clone().with_phase(self.phase + 2)
    }

    fn check_len(&self, other: &PauliWord) -> Result<()> {
        if self.n_sites() != other.n_sites() {
            return Err(Error::LengthMismatch {
                expected: self.n_sites(),
                actual: other.n_sites(),
            });
        }
        Ok(())
    }
}

fn split_coefficient(text: &str) -> (u8, &str) {
    // Lowercase `i` is the imaginary unit; the identity letter is uppercase.
    for (prefix, power) in [("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)] {
        if let Some(rest) = text.strip_prefix(prefix) {
            return (power, rest);
        }
    }
    (0, text)
}

pub(crate) fn check_site(site: usize, n_sites: usize) -> Result<()> {
    if site == 0 || site > n_sites {
        return Err(Error::SiteOutOfRange { site, n_sites });
    }
    Ok(())
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.letter_coefficient() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_letters(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_round_trip_with_signs() {
        for text in ["+IXYZ", "-YY", "+iXZ", "-iZ", "+I"] {
            let w = PauliWord::from_letters(text).unwrap();
            assert_eq!(w.to_string(), text);
        }
        assert_eq!(PauliWord::from_letters("XZ").unwrap().to_string(), "+XZ");
    }

    #[test]
    fn single_y_is_hermitian_with_three_quarter_phase() {
        let y = PauliWord::single(1, 1, Axis::Y).unwrap();
        assert_eq!(y.phase_i_power(), 3);
        assert_eq!(y.sign(), Some(1));
        assert_eq!(y.letters(), "Y");
    }

    #[test]
    fn products_follow_pauli_algebra() {
        let x = PauliWord::from_letters("X").unwrap();
        let y = PauliWord::from_letters("Y").unwrap();
        let z = PauliWord::from_letters("Z").unwrap();
        assert_eq!(x.mul(&y).unwrap().to_string(), "+iZ");
        assert_eq!(y.mul(&z).unwrap().to_string(), "+iX");
        assert_eq!(z.mul(&x).unwrap().to_string(), "+iY");
        assert_eq!(x.mul(&z).unwrap().to_string(), "-iY");
        assert_eq!(y.mul(&y).unwrap().to_string(), "+I");
    }

    #[test]
    fn hermitian_words_are_self_adjoint() {
        let w = PauliWord::from_letters("-XYZY").unwrap();
        assert!(w.is_hermitian());
        assert_eq!(w.adjoint(), w);
        let a = PauliWord::from_letters("iXY").unwrap();
        assert_eq!(a.adjoint().to_string(), "-iXY");
    }

    #[test]
    fn commutation() {
        let a = PauliWord::from_letters("XX").unwrap();
        let b = PauliWord::from_letters("ZZ").unwrap();
        let c = PauliWord::from_letters("ZI").unwrap();
        assert!(a.commutes_with(&b));
        assert!(a.anticommutes_with(&c));
    }

    #[test]
    fn site_range_checked() {
        assert_eq!(
            PauliWord::single(3, 4, Axis::X),
            Err(Error::SiteOutOfRange { site: 4, n_sites: 3 })
        );
        assert!(PauliWord::single(3, 0, Axis::X).is_err());
    }

    #[test]
    fn all_y_matches_letters() {
        for n in 1..6 {
            let y = PauliWord::all_y(n);
            assert_eq!(y.to_string(), format!("+{}", "Y".repeat(n)));
        }
    }
}
