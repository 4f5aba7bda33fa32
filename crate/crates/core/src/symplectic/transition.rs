use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

use super::pauli::{check_site, Axis, PauliWord};

/// Binary symplectic representation of one step of the automaton
/// (a Hadamard on every site, then controlled-Z on every edge of the
/// interaction graph).
///
/// `C = [[Γ, I], [I, 0]]` acts on `(z; x)`. The phase of a conjugated word
/// is updated with `ε' = ε + zᵀ Γ_L z + xᵀ z`, where `Γ_L` is the strictly
/// lower triangular part of `Γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMap {
    n_sites: usize,
    gamma: BitMatrix,
    gamma_lower: BitMatrix,
    c: BitMatrix,
    c_inv: BitMatrix,
}

/// Transition map of the open chain with `n_sites` qubits.
pub fn build_transition_map(n_sites: usize) -> Result<TransitionMap> {
    TransitionMap::chain(n_sites)
}

impl TransitionMap {
    pub fn chain(n_sites: usize) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidChainLength(0));
        }
        let mut gamma = BitMatrix::zeros(n_sites, n_sites);
        for i in 1..n_sites {
            gamma.set(i - 1, i, true);
            gamma.set(i, i - 1, true);
        }
        Self::from_adjacency(gamma)
    }

    /// General interaction graph. Only the chain is used by the rest of the
    /// crate; other graphs serve as negative controls.
    pub fn from_adjacency(gamma: BitMatrix) -> Result<Self> {
        let n = gamma.rows();
        if n == 0 {
            return Err(Error::InvalidChainLength(0));
        }
        if gamma.cols() != n {
            return Err(Error::InvalidAdjacency("matrix is not square".into()));
        }
        if gamma != gamma.transpose() {
            return Err(Error::InvalidAdjacency("matrix is not symmetric".into()));
        }
        if (0..n).any(|i| gamma.get(i, i)) {
            return Err(Error::InvalidAdjacency("nonzero diagonal".into()));
        }

        let mut gamma_lower = BitMatrix::zeros(n, n);
        let mut c = BitMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if gamma.get(i, j) {
                    c.set(i, j, true);
                    if j < i {
                        gamma_lower.set(i, j, true);
                    }
                }
            }
            c.set(i, n + i, true);
            c.set(n + i, i, true);
        }
        let f = swap_matrix(n);
        let c_inv = f.mul(&c).mul(&f);

        Ok(Self {
            n_sites: n,
            gamma,
            gamma_lower,
            c,
            c_inv,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn gamma(&self) -> &BitMatrix {
        &self.gamma
    }

    pub fn gamma_lower(&self) -> &BitMatrix {
        &self.gamma_lower
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.c
    }

    /// `C⁻¹`, obtained as `F C F`.
    pub fn inverse_matrix(&self) -> &BitMatrix {
        &self.c_inv
    }

    /// The block swap `F = [[0, I], [I, 0]]`.
    pub fn swap(&self) -> BitMatrix {
        swap_matrix(self.n_sites)
    }

    /// `C^t` applied to a symplectic vector; negative `t` uses `C⁻¹`.
    pub fn apply_power(&self, a: &BitVec, t: i64) -> BitVec {
        let m = if t >= 0 { &self.c } else { &self.c_inv };
        let mut v = a.clone();
        for _ in 0..t.unsigned_abs() {
            v = m.mul_vec(&v);
        }
        v
    }

    /// `T w T†` with exact phase.
    pub fn conjugate(&self, w: &PauliWord) -> Result<PauliWord> {
        self.check(w)?;
        let (z, x) = (w.z(), w.x());
        let flip = x.dot(z) ^ z.dot(&self.gamma_lower.mul_vec(z));
        let phase = w.phase_i_power() + if flip { 2 } else { 0 };
        PauliWord::from_symplectic(phase, &self.c.mul_vec(&w.symplectic()))
    }

    /// `T† w T` with exact phase.
    pub fn conjugate_inverse(&self, w: &PauliWord) -> Result<PauliWord> {
        self.check(w)?;
        let (z, x) = (w.z(), w.x());
        // controlled-Z layer first, then the Hadamards
        let flip = x.dot(&self.gamma_lower.mul_vec(x)) ^ x.dot(z);
        let phase = w.phase_i_power() + if flip { 2 } else { 0 };
        PauliWord::from_symplectic(phase, &self.c_inv.mul_vec(&w.symplectic()))
    }

    /// `T^t w T^{-t}`; negative `t` runs the evolution backwards.
    pub fn evolve(&self, w: &PauliWord, t: i64) -> Result<PauliWord> {
        let mut out = w.clone();
        for _ in 0..t.unsigned_abs() {
            out = if t >= 0 {
                self.conjugate(&out)?
            } else {
                self.conjugate_inverse(&out)?
            };
        }
        Ok(out)
    }

    fn check(&self, w: &PauliWord) -> Result<()> {
        if w.n_sites() != self.n_sites {
            return Err(Error::LengthMismatch {
                expected: self.n_sites,
                actual: w.n_sites(),
            });
        }
        Ok(())
    }
}

fn swap_matrix(n: usize) -> BitMatrix {
    let mut f = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        f.set(i, n + i, true);
        f.set(n + i, i, true);
    }
    f
}

/// `T w T†`.
pub fn conjugate_by_t(w: &PauliWord, map: &TransitionMap) -> Result<PauliWord> {
    map.conjugate(w)
}

/// `T^t A_site T^{-t}` for the Hermitian single-site operator `A_site`.
pub fn propagate(site: usize, axis: Axis, t: i64, map: &TransitionMap) -> Result<PauliWord> {
    check_site(site, map.n_sites())?;
    map.evolve(&PauliWord::single(map.n_sites(), site, axis)?, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> PauliWord {
        PauliWord::from_letters(s).unwrap()
    }

    #[test]
    fn matrix_for_one_and_two_sites() {
        let m1 = build_transition_map(1).unwrap();
        assert_eq!(m1.matrix().to_u8_rows(), vec![vec![0, 1], vec![1, 0]]);

        let m2 = build_transition_map(2).unwrap();
        assert_eq!(
            m2.matrix().to_u8_rows(),
            vec![
                vec![0, 1, 1, 0],
                vec![1, 0, 0, 1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
            ]
        );
        assert_eq!(m2.gamma().to_u8_rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn zero_sites_rejected() {
        assert_eq!(build_transition_map(0), Err(Error::InvalidChainLength(0)));
    }

    #[test]
    fn swap_relation_with_inverse() {
        for n in [1, 2, 3, 7] {
            let m = build_transition_map(n).unwrap();
            let f = m.swap();
            assert_eq!(f.mul(m.inverse_matrix()), m.matrix().mul(&f));
            assert_eq!(m.matrix().mul(m.inverse_matrix()), BitMatrix::identity(2 * n));
        }
    }

    #[test]
    fn generator_images() {
        let m = build_transition_map(3).unwrap();
        assert_eq!(m.conjugate(&word("IXI")).unwrap(), word("IZI"));
        assert_eq!(m.conjugate(&word("IZI")).unwrap(), word("ZXZ"));
        assert_eq!(m.conjugate(&word("ZII")).unwrap(), word("XZI"));
    }

    #[test]
    fn y_picks_up_minus_sign() {
        let m = build_transition_map(2).unwrap();
        assert_eq!(m.conjugate(&word("YI")).unwrap(), word("-YZ"));
    }

    #[test]
    fn inverse_undoes_forward() {
        let m = build_transition_map(5).unwrap();
        for s in ["XYZIY", "-ZZZZZ", "IYIYI", "iXIIIX"] {
            let w = word(s);
            assert_eq!(m.conjugate_inverse(&m.conjugate(&w).unwrap()).unwrap(), w);
            assert_eq!(m.conjugate(&m.conjugate_inverse(&w).unwrap()).unwrap(), w);
        }
    }

    #[test]
    fn propagate_examples() {
        let m = build_transition_map(8).unwrap();
        assert_eq!(propagate(3, Axis::Z, 0, &m).unwrap(), word("IIZIIIII"));
        assert_eq!(propagate(3, Axis::Z, 1, &m).unwrap(), word("IZXZIIII"));
        assert_eq!(propagate(3, Axis::Z, 9, &m).unwrap(), word("IIIIIZII"));
        assert_eq!(propagate(3, Axis::X, -1, &m).unwrap(), word("IXZXIIII"));
    }

    #[test]
    fn length_mismatch() {
        let m = build_transition_map(3).unwrap();
        assert!(matches!(
            m.conjugate(&word("XX")),
            Err(Error::LengthMismatch { expected: 3, actual: 2 })
        ));
    }

    #[test]
    fn rejects_non_symmetric_adjacency() {
        let g = BitMatrix::from_u8_rows(&[&[0, 1], &[0, 0]]);
        assert!(TransitionMap::from_adjacency(g).is_err());
    }
}
