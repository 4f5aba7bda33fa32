//! Finding `N` from the revival of `⟨S_Z⟩`.
//!
//! Starting from `|0…0⟩`, `T^t` returns the chain to a computational basis
//! state only when `t` is a multiple of `N + 1`, where `⟨S_Z⟩ = N`; at all
//! other times the signal vanishes. The first revival after `t = 0`
//! therefore reveals the chain length.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::statevec::{init_zero, measure_sz, MeasurementModel, StateVector};

/// Black-box access to a chain of unknown length.
pub trait ChainProbe {
    /// Resets the chain to `|0…0⟩`.
    fn prepare(&mut self);
    /// Applies `T` once.
    fn step(&mut self);
    /// Estimate of `⟨S_Z⟩` in the current state.
    fn signal(&mut self) -> f64;
}

/// Exact expectation values from the dense simulator.
#[derive(Debug, Clone)]
pub struct SimulatedChain {
    n_sites: usize,
    state: StateVector,
}

impl SimulatedChain {
    pub fn new(n_sites: usize) -> Result<Self> {
        Ok(Self {
            n_sites,
            state: init_zero(n_sites)?,
        })
    }
}

impl ChainProbe for SimulatedChain {
    fn prepare(&mut self) {
        self.state = init_zero(self.n_sites).expect("size validated in new");
    }

    fn step(&mut self) {
        self.state.apply_t();
    }

    fn signal(&mut self) -> f64 {
        self.state.expectation_sz()
    }
}

/// Averages `shots` projective `S_Z` measurements, each on a fresh copy of
/// the current state.
#[derive(Debug, Clone)]
pub struct SampledChain {
    inner: SimulatedChain,
    shots: usize,
    rng: ChaCha8Rng,
}

impl SampledChain {
    pub fn new(n_sites: usize, shots: usize, seed: u64) -> Result<Self> {
        Ok(Self {
            inner: SimulatedChain::new(n_sites)?,
            shots: shots.max(1),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }
}

impl ChainProbe for SampledChain {
    fn prepare(&mut self) {
        self.inner.prepare();
    }

    fn step(&mut self) {
        self.inner.step();
    }

    fn signal(&mut self) -> f64 {
        let total: i64 = (0..self.shots)
            .map(|_| {
                let mut s = self.inner.state.clone();
                measure_sz(&mut s, MeasurementModel::Coherent, &mut self.rng).outcome
            })
            .sum();
        total as f64 / self.shots as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum LengthDetection {
    Detected { n_sites: usize, signal: Vec<f64> },
    /// No revival within the time budget.
    Inconclusive { t_max: usize, signal: Vec<f64> },
}

impl LengthDetection {
    pub fn n_sites(&self) -> Option<usize> {
        match self {
            LengthDetection::Detected { n_sites, .. } => Some(*n_sites),
            LengthDetection::Inconclusive { .. } => None,
        }
    }

    pub fn signal(&self) -> &[f64] {
        match self {
            LengthDetection::Detected { signal, .. } | LengthDetection::Inconclusive { signal, .. } => signal,
        }
    }
}

/// Records `⟨S_Z(t)⟩` for `t = 0..=t_max`, each from a fresh preparation,
/// and reports `N = t* − 1` for the first `t* > 0` whose signal is within
/// `tol` of the `t = 0` value. Stops at the first revival.
pub fn detect_chain_length<P: ChainProbe + ?Sized>(probe: &mut P, t_max: usize, tol: f64) -> LengthDetection {
    let mut signal = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        probe.prepare();
        for _ in 0..t {
            probe.step();
        }
        let v = probe.signal();
        signal.push(v);
        if t > 0 && (v - signal[0]).abs() <= tol {
            return LengthDetection::Detected { n_sites: t - 1, signal };
        }
    }
    LengthDetection::Inconclusive { t_max, signal }
}
