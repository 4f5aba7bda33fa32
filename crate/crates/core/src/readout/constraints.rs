//! GF(2) constraints on the two register copies.
//!
//! Variables are `r_1..r_n` (indices `0..n`) followed by `r̄_1..r̄_n`
//! (indices `n..2n`).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{solve_affine, BitMatrix, BitVec};

use super::transcript::{ReadoutTranscript, RegisterPair};

/// `Σ coeffs · x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: BitVec,
    pub rhs: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    n_logical: usize,
    equations: Vec<Equation>,
}

impl ConstraintSystem {
    pub fn new(n_logical: usize) -> Self {
        Self {
            n_logical,
            equations: Vec::new(),
        }
    }

    pub fn n_logical(&self) -> usize {
        self.n_logical
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn r(&self, j: usize) -> usize {
        j - 1
    }

    pub fn r_bar(&self, j: usize) -> usize {
        self.n_logical + j - 1
    }

    /// Adds `Σ_{v ∈ vars} x_v = rhs`.
    pub fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut coeffs = BitVec::zeros(2 * self.n_logical);
        for &v in vars {
            coeffs.flip(v);
        }
        self.equations.push(Equation { coeffs, rhs });
    }

    fn var_name(&self, v: usize) -> String {
        if v < self.n_logical {
            format!("r{}", v + 1)
        } else {
            format!("r̄{}", v - self.n_logical + 1)
        }
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            let lhs: Vec<String> = eq.coeffs.ones_indices().into_iter().map(|v| self.var_name(v)).collect();
            writeln!(f, "{} = {}", lhs.join(" + "), u8::from(eq.rhs))?;
        }
        Ok(())
    }
}

fn corrupt(msg: String) -> Error {
    Error::CorruptTranscript(msg)
}

/// Translates the step-2 and step-3 outcomes into equations, after checking
/// that the transcript is internally consistent.
pub fn build_constraints(t: &ReadoutTranscript, n_logical: usize) -> Result<ConstraintSystem> {
    if t.n_logical != n_logical {
        return Err(corrupt(format!(
            "transcript is for {} logical qubits, expected {n_logical}",
            t.n_logical
        )));
    }
    let keys: Vec<usize> = t.m_j.keys().copied().collect();
    if keys != (1..=n_logical).collect::<Vec<_>>() {
        return Err(corrupt(format!("step-2 outcomes cover {keys:?}, expected 1..={n_logical}")));
    }

    let mut sys = ConstraintSystem::new(n_logical);
    let mut j_set = Vec::new();
    for (j, diff) in t.step2_differences() {
        let (r, rb) = (sys.r(j), sys.r_bar(j));
        match diff {
            0 => {
                sys.push(&[r], false);
                sys.push(&[rb], false);
            }
            2 => {
                sys.push(&[r, rb], true);
                j_set.push(j);
            }
            4 => {
                sys.push(&[r], true);
                sys.push(&[rb], true);
            }
            d => return Err(corrupt(format!("m − m({j}) = {d}, expected 0, 2 or 4"))),
        }
    }
    if j_set != t.j_set {
        return Err(corrupt(format!("J = {:?} but step 2 implies {j_set:?}", t.j_set)));
    }

    let expected_pairs: Vec<(usize, usize)> = j_set.iter().skip(1).map(|&jk| (j_set[0], jk)).collect();
    let got_pairs: Vec<(usize, usize)> = t.m_pairs.iter().map(|p| (p.j1, p.jk)).collect();
    if got_pairs != expected_pairs {
        return Err(corrupt(format!(
            "step-3 pairs {got_pairs:?}, expected {expected_pairs:?}"
        )));
    }
    for p in &t.m_pairs {
        let vars = [sys.r(p.j1), sys.r(p.jk)];
        match t.m - p.m {
            2 => sys.push(&vars, false),
            0 => sys.push(&vars, true),
            d => {
                return Err(corrupt(format!(
                    "m − m({}, {}) = {d}, expected 0 or 2",
                    p.j1, p.jk
                )))
            }
        }
    }
    Ok(sys)
}

/// All register assignments satisfying `sys`: one, or two that are mirror
/// exchanges of each other. Anything else is reported as an error.
pub fn solve_constraints(sys: &ConstraintSystem) -> Result<Vec<RegisterPair>> {
    let n = sys.n_logical;
    let a = BitMatrix::from_rows(sys.equations.iter().map(|e| e.coeffs.clone()).collect());
    let b = BitVec::from_bools(&sys.equations.iter().map(|e| e.rhs).collect::<Vec<_>>());
    if sys.equations.is_empty() {
        return Err(Error::Constraints(format!(
            "is empty; all {} variables are free",
            2 * n
        )));
    }
    let sol = solve_affine(&a, &b).ok_or_else(|| Error::Constraints("is inconsistent".into()))?;
    if sol.kernel.len() > 1 {
        return Err(Error::Constraints(format!(
            "is under-determined: {} free directions",
            sol.kernel.len()
        )));
    }
    let mut out: Vec<RegisterPair> = sol
        .enumerate()
        .into_iter()
        .map(|x| RegisterPair::new(&x.slice(0, n), &x.slice(n, n)))
        .collect();
    out.sort();
    if out.len() == 2 && out[0] != out[1].swapped() {
        return Err(Error::Constraints(format!(
            "has two solutions that are not mirror exchanges: {:?}",
            out
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::readout::transcript::PairOutcome;
    use crate::statevec::MeasurementModel;
    use std::collections::BTreeMap;

    fn transcript(m: i64, m_j: &[i64], j_set: &[usize], pairs: &[(usize, usize, i64)]) -> ReadoutTranscript {
        ReadoutTranscript {
            n_logical: m_j.len(),
            model: MeasurementModel::Coherent,
            m,
            m_j: m_j.iter().enumerate().map(|(k, &v)| (k + 1, v)).collect::<BTreeMap<_, _>>(),
            j_set: j_set.to_vec(),
            m_pairs: pairs.iter().map(|&(j1, jk, m)| PairOutcome { j1, jk, m }).collect(),
            solutions: vec![],
        }
    }

    #[test]
    fn step2_equations() {
        let t = transcript(10, &[10, 8, 6], &[2], &[]);
        let sys = build_constraints(&t, 3).unwrap();
        assert_eq!(sys.to_string(), "r1 = 0\nr̄1 = 0\nr2 + r̄2 = 1\nr3 = 1\nr̄3 = 1\n");
        let sols = solve_constraints(&sys).unwrap();
        assert_eq!(
            sols,
            vec![
                RegisterPair { r: "001".into(), r_bar: "011".into() },
                RegisterPair { r: "011".into(), r_bar: "001".into() },
            ]
        );
    }

    #[test]
    fn step3_equations() {
        // m − m(1,2) = 0 means r1 ≠ r2
        let t = transcript(6, &[4, 4], &[1, 2], &[(1, 2, 6)]);
        let sys = build_constraints(&t, 2).unwrap();
        assert_eq!(sys.to_string(), "r1 + r̄1 = 1\nr2 + r̄2 = 1\nr1 + r2 = 1\n");
        let sols = solve_constraints(&sys).unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!(sols[0], RegisterPair { r: "01".into(), r_bar: "10".into() });

        let t = transcript(6, &[4, 4], &[1, 2], &[(1, 2, 4)]);
        let sols = solve_constraints(&build_constraints(&t, 2).unwrap()).unwrap();
        assert_eq!(sols[0], RegisterPair { r: "00".into(), r_bar: "11".into() });
    }

    #[test]
    fn empty_j_gives_unique_solution() {
        let t = transcript(2, &[2, -2], &[], &[]);
        let sols = solve_constraints(&build_constraints(&t, 2).unwrap()).unwrap();
        assert_eq!(sols, vec![RegisterPair { r: "01".into(), r_bar: "01".into() }]);
    }

    #[test]
    fn corrupted_transcripts_are_rejected() {
        let bad = [
            transcript(6, &[3], &[], &[]),
            transcript(6, &[4], &[], &[]),
            transcript(6, &[4, 4], &[1, 2], &[]),
            transcript(6, &[4, 4], &[1, 2], &[(1, 2, 2)]),
            transcript(6, &[6, 6], &[], &[(1, 2, 6)]),
        ];
        for t in bad {
            let n = t.n_logical;
            assert!(
                matches!(build_constraints(&t, n), Err(Error::CorruptTranscript(_))),
                "{t:?}"
            );
        }
        let t = transcript(6, &[6], &[], &[]);
        assert!(build_constraints(&t, 2).is_err());
    }

    #[test]
    fn solver_reports_bad_systems() {
        let mut sys = ConstraintSystem::new(1);
        sys.push(&[0], true);
        sys.push(&[0], false);
        assert!(matches!(solve_constraints(&sys), Err(Error::Constraints(_))));

        let mut sys = ConstraintSystem::new(2);
        sys.push(&[0, 2], true);
        sys.push(&[1, 3], true);
        assert!(matches!(solve_constraints(&sys), Err(Error::Constraints(_))));

        // two solutions that differ by something other than an exchange
        let mut sys = ConstraintSystem::new(1);
        sys.push(&[0], true);
        assert!(matches!(solve_constraints(&sys), Err(Error::Constraints(_))));
    }
}
