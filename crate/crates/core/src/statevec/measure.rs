//! Total-spin (`S_Z = Σ_i Z_i`) measurements.
//!
//! Two models are supported. The coherent model projects onto the
//! Hamming-weight sector with outcome `m = N − 2 wt`. The dephasing model
//! measures every site individually but records only the sum; its post-state
//! is a classical mixture over the sector's basis states, which is
//! represented either by a seeded sample ([`measure_sz`]) or exactly by its
//! diagonal ([`DiagonalMixture`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementModel {
    Coherent,
    Dephasing,
}

impl fmt::Display for MeasurementModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasurementModel::Coherent => "coherent",
            MeasurementModel::Dephasing => "dephasing",
        })
    }
}

impl FromStr for MeasurementModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" => Ok(Self::Coherent),
            "dephasing" => Ok(Self::Dephasing),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown measurement model {other:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Observable {
    Sz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub observable: Observable,
    pub outcome: i64,
    pub model: MeasurementModel,
}

fn outcome_of(n: usize, index: usize) -> i64 {
    n as i64 - 2 * index.count_ones() as i64
}

/// All `(m, probability)` pairs with nonzero probability, `m` descending.
pub fn sz_distribution(s: &StateVector) -> Vec<(i64, f64)> {
    let n = s.n_qubits();
    let mut by_weight = vec![0.0; n + 1];
    for (b, a) in s.amplitudes().iter().enumerate() {
        by_weight[b.count_ones() as usize] += a.norm_sqr();
    }
    by_weight
        .into_iter()
        .enumerate()
        .filter(|&(_, p)| p > 0.0)
        .map(|(wt, p)| (n as i64 - 2 * wt as i64, p))
        .collect()
}

fn sample_index<R: Rng + ?Sized>(weights: impl Iterator<Item = f64> + Clone, rng: &mut R) -> usize {
    let total: f64 = weights.clone().sum();
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (k, w) in weights.enumerate() {
        if w <= 0.0 {
            continue;
        }
        last = k;
        acc += w;
        if target < acc {
            return k;
        }
    }
    last
}

/// Samples `S_Z` and updates `s` to the post-measurement state.
pub fn measure_sz<R: Rng + ?Sized>(
    s: &mut StateVector,
    model: MeasurementModel,
    rng: &mut R,
) -> MeasurementRecord {
    let dist = sz_distribution(s);
    let k = sample_index(dist.iter().map(|&(_, p)| p), rng);
    let (m, p) = dist[k];
    let n = s.n_qubits();

    match model {
        MeasurementModel::Coherent => {
            let scale = 1.0 / p.sqrt();
            for (b, a) in s.amplitudes_mut().iter_mut().enumerate() {
                if outcome_of(n, b) == m {
                    *a *= scale;
                } else {
                    *a = Complex64::new(0.0, 0.0);
                }
            }
        }
        MeasurementModel::Dephasing => {
            let weights: Vec<f64> = s
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(b, a)| if outcome_of(n, b) == m { a.norm_sqr() } else { 0.0 })
                .collect();
            let b = sample_index(weights.iter().copied(), rng);
            for (j, a) in s.amplitudes_mut().iter_mut().enumerate() {
                *a = if j == b {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
            }
        }
    }

    MeasurementRecord {
        observable: Observable::Sz,
        outcome: m,
        model,
    }
}

/// A state diagonal in the computational basis: `Σ_b p_b |b⟩⟨b|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMixture {
    n_qubits: usize,
    probs: Vec<f64>,
}

impl DiagonalMixture {
    /// Computational-basis diagonal of a pure state.
    pub fn from_state(s: &StateVector) -> Self {
        Self {
            n_qubits: s.n_qubits(),
            probs: s.probabilities(),
        }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn sz_distribution(&self) -> Vec<(i64, f64)> {
        let mut by_weight = vec![0.0; self.n_qubits + 1];
        for (b, p) in self.probs.iter().enumerate() {
            by_weight[b.count_ones() as usize] += p;
        }
        by_weight
            .into_iter()
            .enumerate()
            .filter(|&(_, p)| p > 0.0)
            .map(|(wt, p)| (self.n_qubits as i64 - 2 * wt as i64, p))
            .collect()
    }

    /// The dephasing map conditioned on outcome `m`, renormalized.
    pub fn dephase(&self, m: i64) -> Result<Self> {
        let n = self.n_qubits;
        let mut probs: Vec<f64> = self
            .probs
            .iter()
            .enumerate()
            .map(|(b, &p)| if outcome_of(n, b) == m { p } else { 0.0 })
            .collect();
        let total: f64 = probs.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidGate(format!("outcome {m} has zero probability")));
        }
        for p in &mut probs {
            *p /= total;
        }
        Ok(Self { n_qubits: n, probs })
    }
}
