//! Heisenberg-picture engine for the chain automaton.
//!
//! Pauli words are propagated exactly (phase included) through the
//! transition function `T`, which is a Clifford unitary. Everything here is
//! pure and works on immutable values.

mod foldback;
mod lightcone;
mod mz;
mod pauli;
mod transition;

pub use foldback::{boundary_recursion, foldback_solution, free_space_solution};
pub use lightcone::{render_lightcone, LightCone};
pub use mz::{mx_definitional, mz_closed_form, mz_definitional, mz_matrix, s_vector, y_orbit};
pub use pauli::{Axis, PauliWord};
pub use transition::{build_transition_map, conjugate_by_t, propagate, TransitionMap};

use crate::error::Result;

/// Outcome of checking `T^{N+1}(A_p) = A_{N+1−p}` for all sites and both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct BitReversalReport {
    pub n_sites: usize,
    pub ok: bool,
    pub failures: Vec<String>,
}

pub fn verify_bit_reversal(n_sites: usize) -> Result<BitReversalReport> {
    verify_bit_reversal_with(&TransitionMap::chain(n_sites)?)
}

/// Same check against an arbitrary map (used for negative controls).
pub fn verify_bit_reversal_with(map: &TransitionMap) -> Result<BitReversalReport> {
    let n = map.n_sites();
    let mut failures = Vec::new();
    for p in 1..=n {
        for axis in [Axis::Z, Axis::X] {
            let got = propagate(p, axis, n as i64 + 1, map)?;
            let want = PauliWord::single(n, n + 1 - p, axis)?;
            if got != want {
                failures.push(format!("T^{}({axis}_{p}) = {got}, expected {want}", n + 1));
            }
        }
    }
    Ok(BitReversalReport {
        n_sites: n,
        ok: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    #[test]
    fn reversal_small_chains() {
        for n in [1, 2, 3, 8] {
            let r = verify_bit_reversal(n).unwrap();
            assert!(r.ok, "{:?}", r.failures);
        }
        let m = build_transition_map(3).unwrap();
        assert_eq!(
            propagate(1, Axis::Z, 4, &m).unwrap(),
            PauliWord::from_letters("IIZ").unwrap()
        );
    }

    #[test]
    fn ring_adjacency_breaks_reversal() {
        let n = 5;
        let mut g = BitMatrix::zeros(n, n);
        for i in 0..n {
            let j = (i + 1) % n;
            g.set(i, j, true);
            g.set(j, i, true);
        }
        let ring = TransitionMap::from_adjacency(g).unwrap();
        let r = verify_bit_reversal_with(&ring).unwrap();
        assert!(!r.ok);
        assert!(!r.failures.is_empty());
    }
}
