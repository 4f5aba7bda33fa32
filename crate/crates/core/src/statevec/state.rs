use num_complex::Complex64;

use crate::compiler::{PulseSchedule, ScheduleItem};
use crate::error::{Error, Result};
use crate::symplectic::{Axis, PauliWord};

/// Largest chain the dense simulator accepts.
pub const MAX_QUBITS: usize = 22;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense pure state on `N` qubits. Site 1 is the most significant bit of the
/// basis index; bit value 1 is `|1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidChainLength(0));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { n, cap: MAX_QUBITS });
    }
    Ok(())
}

/// `i^k`.
pub(crate) fn i_power(k: u8) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// `|0…0⟩` on `n` qubits.
pub fn init_zero(n: usize) -> Result<StateVector> {
    StateVector::basis(n, 0)
}

impl StateVector {
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_size(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: index,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n_qubits: n, amps })
    }

    /// Wraps raw amplitudes and normalizes them.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: amps.len(),
            });
        }
        let mut s = Self { n_qubits: n, amps };
        let norm = s.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidGate("zero vector is not a state".into()));
        }
        s.scale(Complex64::new(1.0 / norm, 0.0));
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n_qubits, other.n_qubits, "qubit count mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// Bit mask of `site` inside a basis index.
    #[inline]
    pub fn site_mask(&self, site: usize) -> usize {
        1 << (self.n_qubits - site)
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.n_qubits {
            return Err(Error::SiteOutOfRange {
                site,
                n_sites: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Value of `site` in basis index `index`.
    pub fn bit(&self, index: usize, site: usize) -> bool {
        index & self.site_mask(site) != 0
    }

    /// One step of the automaton: Hadamard on every site, then controlled-Z
    /// on every neighbouring pair.
    pub fn apply_t(&mut self) {
        let dim = self.dim();
        // Walsh-Hadamard butterflies over every bit
        let mut h = 1;
        while h < dim {
            for block in (0..dim).step_by(2 * h) {
                for k in block..block + h {
                    let a = self.amps[k];
                    let b = self.amps[k + h];
                    self.amps[k] = a + b;
                    self.amps[k + h] = a - b;
                }
            }
            h <<= 1;
        }
        let norm = (0.5f64).powf(self.n_qubits as f64 / 2.0);
        for (b, a) in self.amps.iter_mut().enumerate() {
            // adjacent sites are adjacent bits
            let flip = (b & (b >> 1)).count_ones() & 1 == 1;
            *a *= if flip { -norm } else { norm };
        }
    }

    /// Uniform pulse `⊗_i exp(i α/2 A_i)`.
    pub fn apply_pulse(&mut self, axis: Axis, alpha: f64) {
        let (s, c) = (alpha / 2.0).sin_cos();
        match axis {
            Axis::Z => {
                // diagonal: phase depends only on the Hamming weight
                let n = self.n_qubits as i64;
                let phases: Vec<Complex64> = (0..=n)
                    .map(|wt| Complex64::from_polar(1.0, alpha / 2.0 * (n - 2 * wt) as f64))
                    .collect();
                for (b, a) in self.amps.iter_mut().enumerate() {
                    *a *= phases[b.count_ones() as usize];
                }
            }
            Axis::X => {
                let k = [[c.into(), I * s], [I * s, c.into()]];
                self.apply_uniform_kernel(&k);
            }
            Axis::Y => {
                let k = [[c.into(), s.into()], [(-s).into(), c.into()]];
                self.apply_uniform_kernel(&k);
            }
        }
    }

    /// Applies the same 2×2 matrix `k` (row-major, basis |0⟩,|1⟩) to every site.
    fn apply_uniform_kernel(&mut self, k: &[[Complex64; 2]; 2]) {
        let dim = self.dim();
        let mut h = 1;
        while h < dim {
            for block in (0..dim).step_by(2 * h) {
                for j in block..block + h {
                    let a0 = self.amps[j];
                    let a1 = self.amps[j + h];
                    self.amps[j] = k[0][0] * a0 + k[0][1] * a1;
                    self.amps[j + h] = k[1][0] * a0 + k[1][1] * a1;
                }
            }
            h <<= 1;
        }
    }

    /// Executes a schedule, first item first.
    pub fn apply_schedule(&mut self, schedule: &PulseSchedule) -> Result<()> {
        if schedule.n_sites() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                actual: schedule.n_sites(),
            });
        }
        for item in schedule.items() {
            match *item {
                ScheduleItem::StepT => self.apply_t(),
                ScheduleItem::Pulse { axis, angle } => self.apply_pulse(axis, angle),
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_site(control)?;
        self.check_site(target)?;
        if control == target {
            return Err(Error::SiteCollision(vec![control, target]));
        }
        let cm = self.site_mask(control);
        let tm = self.site_mask(target);
        self.controlled_flip(cm, tm);
        Ok(())
    }

    pub fn apply_toffoli(&mut self, c1: usize, c2: usize, target: usize) -> Result<()> {
        for s in [c1, c2, target] {
            self.check_site(s)?;
        }
        if c1 == c2 || c1 == target || c2 == target {
            return Err(Error::SiteCollision(vec![c1, c2, target]));
        }
        let cm = self.site_mask(c1) | self.site_mask(c2);
        let tm = self.site_mask(target);
        self.controlled_flip(cm, tm);
        Ok(())
    }

    fn controlled_flip(&mut self, control_mask: usize, target_mask: usize) {
        for b in 0..self.dim() {
            if b & control_mask == control_mask && b & target_mask == 0 {
                self.amps.swap(b, b | target_mask);
            }
        }
    }

    /// Index masks `(z, x)` of a Pauli word in basis-index bit order.
    fn pauli_masks(&self, w: &PauliWord) -> Result<(usize, usize)> {
        if w.n_sites() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                actual: w.n_sites(),
            });
        }
        let mut zm = 0;
        let mut xm = 0;
        for site in 1..=self.n_qubits {
            if w.z().get(site - 1) {
                zm |= self.site_mask(site);
            }
            if w.x().get(site - 1) {
                xm |= self.site_mask(site);
            }
        }
        Ok((zm, xm))
    }

    /// Applies the Pauli word `w` as an operator, phase included.
    pub fn apply_pauli(&mut self, w: &PauliWord) -> Result<()> {
        let (zm, xm) = self.pauli_masks(w)?;
        let phase = i_power(w.phase_i_power());
        let mut out = vec![ZERO; self.dim()];
        for (b, &a) in self.amps.iter().enumerate() {
            let nb = b ^ xm;
            let sign = if (zm & nb).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            out[nb] = phase * sign * a;
        }
        self.amps = out;
        Ok(())
    }

    /// `exp(i θ P)` for a Hermitian word `P`.
    pub fn apply_pauli_rotation(&mut self, w: &PauliWord, theta: f64) -> Result<()> {
        if !w.is_hermitian() {
            return Err(Error::InvalidGate(format!("{w} is not Hermitian")));
        }
        let mut rotated = self.clone();
        rotated.apply_pauli(w)?;
        let (s, c) = theta.sin_cos();
        for (a, p) in self.amps.iter_mut().zip(&rotated.amps) {
            *a = *a * c + I * s * p;
        }
        Ok(())
    }

    /// `⟨S_Z⟩ = Σ_b |a_b|² (N − 2 wt(b))`.
    pub fn expectation_sz(&self) -> f64 {
        let n = self.n_qubits as f64;
        self.amps
            .iter()
            .enumerate()
            .map(|(b, a)| a.norm_sqr() * (n - 2.0 * b.count_ones() as f64))
            .sum()
    }

    /// Mirror image: site `i` goes to site `N + 1 − i`.
    pub fn reflect(&mut self) {
        let n = self.n_qubits;
        let mut out = vec![ZERO; self.dim()];
        for (b, &a) in self.amps.iter().enumerate() {
            out[reverse_bits(b, n)] = a;
        }
        self.amps = out;
    }

    /// Probability that `site` reads `|1⟩`.
    pub fn prob_one(&self, site: usize) -> f64 {
        let m = self.site_mask(site);
        self.amps
            .iter()
            .enumerate()
            .filter(|(b, _)| b & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

pub(crate) fn reverse_bits(b: usize, n: usize) -> usize {
    (b.reverse_bits() >> (usize::BITS as usize - n)) & ((1 << n) - 1)
}
