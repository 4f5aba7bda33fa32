//! The three-step readout.
//!
//! 1. Measure `S_Z`, giving `m`.
//! 2. For each `j`, copy `[j]` onto `[0]` (and the mirror pair likewise)
//!    with CNOTs, measure `m(j)`, then undo the CNOTs.
//! 3. For each `k = 2..|J|`, write `r_{j1} r_{jk}` onto `[0]` with Toffolis,
//!    measure `m(j1, jk)`, then undo.
//!
//! On a basis state with both readout sites in `|0⟩`, step 2 lowers `m` by
//! `2(r_j + r̄_j)` and step 3 by `2(r_{j1} r_{jk} + r̄_{j1} r̄_{jk})`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::compiler::LayoutMap;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::statevec::{measure_sz, MeasurementModel, StateVector};

use super::constraints::{build_constraints, solve_constraints};
use super::transcript::{PairOutcome, ReadoutTranscript};

/// Probability above which a readout site counts as occupied.
pub const READOUT_SITE_TOL: f64 = 1e-9;

/// Source of the CNOT and Toffoli conjugations. Both must be involutions,
/// since the same call is used to undo them.
pub trait ReadoutGates {
    fn cnot(&self, s: &mut StateVector, control: usize, target: usize) -> Result<()>;
    fn toffoli(&self, s: &mut StateVector, c1: usize, c2: usize, target: usize) -> Result<()>;
}

/// Exact gates from the dense simulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdealGates;

impl ReadoutGates for IdealGates {
    fn cnot(&self, s: &mut StateVector, control: usize, target: usize) -> Result<()> {
        s.apply_cnot(control, target)
    }

    fn toffoli(&self, s: &mut StateVector, c1: usize, c2: usize, target: usize) -> Result<()> {
        s.apply_toffoli(c1, c2, target)
    }
}

fn check_layout(s: &StateVector, layout: &LayoutMap) -> Result<()> {
    if s.n_qubits() != layout.n_sites() {
        return Err(Error::Layout(format!(
            "state has {} qubits but {} logical qubits need {}",
            s.n_qubits(),
            layout.n_logical(),
            layout.n_sites()
        )));
    }
    let r0 = layout.readout_site();
    for site in [r0, layout.mirror(r0)] {
        let p = s.prob_one(site);
        if p > READOUT_SITE_TOL {
            return Err(Error::Layout(format!(
                "readout site {site} is not in |0⟩ (P(1) = {p:e})"
            )));
        }
    }
    Ok(())
}

fn cnot_pair<G: ReadoutGates + ?Sized>(g: &G, s: &mut StateVector, layout: &LayoutMap, j: usize) -> Result<()> {
    let (c, t) = (layout.logical_site(j)?, layout.readout_site());
    g.cnot(s, c, t)?;
    g.cnot(s, layout.mirror(c), layout.mirror(t))
}

fn toffoli_pair<G: ReadoutGates + ?Sized>(
    g: &G,
    s: &mut StateVector,
    layout: &LayoutMap,
    j1: usize,
    jk: usize,
) -> Result<()> {
    let (a, b, t) = (layout.logical_site(j1)?, layout.logical_site(jk)?, layout.readout_site());
    g.toffoli(s, a, b, t)?;
    g.toffoli(s, layout.mirror(a), layout.mirror(b), layout.mirror(t))
}

/// Runs the protocol with ideal gates.
pub fn run_protocol<R: Rng + ?Sized>(
    s: &StateVector,
    layout: &LayoutMap,
    model: MeasurementModel,
    rng: &mut R,
) -> Result<(ReadoutTranscript, StateVector)> {
    run_protocol_with(s, layout, model, rng, &IdealGates)
}

/// Runs the protocol and decodes the registers. Returns the transcript
/// (solutions filled in) and the post-measurement state.
pub fn run_protocol_with<R: Rng + ?Sized, G: ReadoutGates + ?Sized>(
    s: &StateVector,
    layout: &LayoutMap,
    model: MeasurementModel,
    rng: &mut R,
    gates: &G,
) -> Result<(ReadoutTranscript, StateVector)> {
    check_layout(s, layout)?;
    let n = layout.n_logical();
    let mut state = s.clone();

    let m = measure_sz(&mut state, model, rng).outcome;

    let mut m_j = BTreeMap::new();
    for j in 1..=n {
        cnot_pair(gates, &mut state, layout, j)?;
        m_j.insert(j, measure_sz(&mut state, model, rng).outcome);
        cnot_pair(gates, &mut state, layout, j)?;
    }
    let j_set: Vec<usize> = m_j.iter().filter(|&(_, &mj)| m - mj == 2).map(|(&j, _)| j).collect();

    let mut m_pairs = Vec::new();
    for &jk in j_set.iter().skip(1) {
        let j1 = j_set[0];
        toffoli_pair(gates, &mut state, layout, j1, jk)?;
        let outcome = measure_sz(&mut state, model, rng).outcome;
        m_pairs.push(PairOutcome { j1, jk, m: outcome });
        toffoli_pair(gates, &mut state, layout, j1, jk)?;
    }

    let mut transcript = ReadoutTranscript {
        n_logical: n,
        model,
        m,
        m_j,
        j_set,
        m_pairs,
        solutions: Vec::new(),
    };
    let sys = build_constraints(&transcript, n)?;
    transcript.solutions = solve_constraints(&sys)?;
    Ok((transcript, state))
}

fn basis_index(layout: &LayoutMap, r: &BitVec, r_bar: &BitVec) -> Result<usize> {
    let n = layout.n_logical();
    for v in [r, r_bar] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: v.len(),
            });
        }
    }
    let big_n = layout.n_sites();
    let mut idx = 0usize;
    for j in 1..=n {
        let site = layout.logical_site(j)?;
        if r.get(j - 1) {
            idx |= 1 << (big_n - site);
        }
        if r_bar.get(j - 1) {
            idx |= 1 << (big_n - layout.mirror(site));
        }
    }
    Ok(idx)
}

/// Basis state with register `r` on `[1..n]`, `r̄` on their mirrors, and
/// every other site in `|0⟩`.
pub fn register_state(layout: &LayoutMap, r: &BitVec, r_bar: &BitVec) -> Result<StateVector> {
    StateVector::basis(layout.n_sites(), basis_index(layout, r, r_bar)?)
}

/// `c1 |a⟩|b⟩ + c2 |b⟩|a⟩` (left copy, mirror copy), normalized.
pub fn mirror_pair_state(
    layout: &LayoutMap,
    a: &BitVec,
    b: &BitVec,
    c1: Complex64,
    c2: Complex64,
) -> Result<StateVector> {
    let i1 = basis_index(layout, a, b)?;
    let i2 = basis_index(layout, b, a)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << layout.n_sites()];
    amps[i1] += c1;
    amps[i2] += c2;
    StateVector::from_amplitudes(layout.n_sites(), amps)
}
