use num_complex::Complex64;

use crate::compiler::PulseSchedule;
use crate::error::{Error, Result};

use super::state::{reverse_bits, StateVector};

/// Largest chain for which full unitaries are built.
pub const MAX_DENSE_UNITARY_QUBITS: usize = 12;

/// A `2^N × 2^N` matrix, stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n_qubits: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    /// Builds the matrix whose column `b` is `op` applied to `|b⟩`.
    pub fn from_action(n_qubits: usize, mut op: impl FnMut(&mut StateVector) -> Result<()>) -> Result<Self> {
        if n_qubits > MAX_DENSE_UNITARY_QUBITS {
            return Err(Error::TooManyQubits {
                n: n_qubits,
                cap: MAX_DENSE_UNITARY_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        let mut data = Vec::with_capacity(dim * dim);
        for b in 0..dim {
            let mut s = StateVector::basis(n_qubits, b)?;
            op(&mut s)?;
            data.extend_from_slice(s.amplitudes());
        }
        Ok(Self { n_qubits, dim, data })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::from_action(n_qubits, |_| Ok(()))
    }

    /// The mirror permutation `R`.
    pub fn reflection(n_qubits: usize) -> Result<Self> {
        Self::from_action(n_qubits, |s| {
            s.reflect();
            Ok(())
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[Complex64] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    /// `tr(U† V)`.
    pub fn trace_overlap(&self, other: &DenseUnitary) -> Complex64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn mul(&self, other: &DenseUnitary) -> DenseUnitary {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for c in 0..d {
            let out = &mut data[c * d..(c + 1) * d];
            for (k, &b) in other.column(c).iter().enumerate() {
                if b == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, a) in out.iter_mut().zip(self.column(k)) {
                    *o += a * b;
                }
            }
        }
        DenseUnitary {
            n_qubits: self.n_qubits,
            dim: d,
            data,
        }
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for c in 0..d {
            for r in 0..d {
                data[r * d + c] = self.get(r, c).conj();
            }
        }
        DenseUnitary {
            n_qubits: self.n_qubits,
            dim: d,
            data,
        }
    }

    /// Largest entry of `|U − V|`.
    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let id = DenseUnitary::identity(self.n_qubits).expect("size already validated");
        self.adjoint().mul(self).max_abs_diff(&id) <= tol
    }

    /// `max |U R − R U|`, computed by permuting entries.
    pub fn reflection_commutator_norm(&self) -> f64 {
        let n = self.n_qubits;
        let mut worst: f64 = 0.0;
        for c in 0..self.dim {
            let rc = reverse_bits(c, n);
            for r in 0..self.dim {
                // (U R)[r, c] = U[r, R c];  (R U)[r, c] = U[R r, c]
                let a = self.get(r, rc);
                let b = self.get(reverse_bits(r, n), c);
                worst = worst.max((a - b).norm());
            }
        }
        worst
    }
}

/// Dense unitary of a pulse schedule.
pub fn schedule_unitary(schedule: &PulseSchedule) -> Result<DenseUnitary> {
    DenseUnitary::from_action(schedule.n_sites(), |s| s.apply_schedule(schedule))
}

/// `|tr(U† V)| / 2^N ≥ 1 − tol`.
pub fn phase_equivalent(u: &DenseUnitary, v: &DenseUnitary, tol: f64) -> bool {
    global_phase_fidelity(u, v) >= 1.0 - tol
}

/// `|tr(U† V)| / 2^N`.
pub fn global_phase_fidelity(u: &DenseUnitary, v: &DenseUnitary) -> f64 {
    u.trace_overlap(v).norm() / u.dim() as f64
}
