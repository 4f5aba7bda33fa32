use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Placement of `n` logical qubits on the `N = 4n + 2` chain.
///
/// Logical qubit `j` sits on the odd site `2j − 1`, the readout qubit on
/// `2n + 1`; every site `i` has a mirror `N + 1 − i` carrying the second
/// copy of the computation. The remaining sites are ancillas held in `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayoutMap {
    n_logical: usize,
}

impl LayoutMap {
    pub fn new(n_logical: usize) -> Result<Self> {
        if n_logical == 0 {
            return Err(Error::InvalidLogicalCount(0));
        }
        Ok(Self { n_logical })
    }

    pub fn n_logical(&self) -> usize {
        self.n_logical
    }

    pub fn n_sites(&self) -> usize {
        4 * self.n_logical + 2
    }

    /// Physical site `[j] = 2j − 1`.
    pub fn logical_site(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.n_logical {
            return Err(Error::SiteOutOfRange {
                site: j,
                n_sites: self.n_logical,
            });
        }
        Ok(2 * j - 1)
    }

    /// Physical site of the readout qubit `[0]`.
    pub fn readout_site(&self) -> usize {
        2 * self.n_logical + 1
    }

    pub fn mirror(&self, site: usize) -> usize {
        self.n_sites() + 1 - site
    }

    /// Sites that must stay in `|0⟩` during the computation: even-site
    /// ancillas, their mirrors, and both readout sites.
    pub fn idle_sites(&self) -> Vec<usize> {
        let mut sites: Vec<usize> = (1..=self.n_logical - 1).map(|k| 2 * k).collect();
        sites.push(self.readout_site());
        let mirrored: Vec<usize> = sites.iter().map(|&s| self.mirror(s)).collect();
        sites.extend(mirrored);
        sites.sort_unstable();
        sites
    }

    /// Sites carrying logical data, left copy first then its mirrors.
    pub fn data_sites(&self) -> Vec<usize> {
        let left: Vec<usize> = (1..=self.n_logical).map(|j| 2 * j - 1).collect();
        let right: Vec<usize> = left.iter().map(|&s| self.mirror(s)).collect();
        left.into_iter().chain(right).collect()
    }
}

/// Time cost of a compiled schedule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceReport {
    pub n_logical: usize,
    pub chain_length: usize,
    pub t_steps: usize,
    /// `t_steps / (2N + 2)`.
    #[serde(serialize_with = "ratio_as_string")]
    pub clock_cycles: Ratio<usize>,
}

fn ratio_as_string<S: serde::Serializer>(r: &Ratio<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ResourceReport {
    pub fn cycle_length(&self) -> usize {
        2 * self.chain_length + 2
    }

    pub(crate) fn with_steps(mut self, t_steps: usize) -> Self {
        self.t_steps = t_steps;
        self.clock_cycles = Ratio::new(t_steps, self.cycle_length());
        self
    }
}

impl fmt::Display for ResourceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logical qubits: {}", self.n_logical)?;
        writeln!(f, "chain length N: {}", self.chain_length)?;
        writeln!(f, "steps per clock cycle: {}", self.cycle_length())?;
        writeln!(f, "T steps: {}", self.t_steps)?;
        write!(f, "clock cycles: {}", self.clock_cycles)
    }
}

/// Chain length and cycle length for `n` logical qubits, with no steps yet.
pub fn resource_plan(n_logical: usize) -> Result<ResourceReport> {
    let layout = LayoutMap::new(n_logical)?;
    let chain_length = layout.n_sites();
    Ok(ResourceReport {
        n_logical,
        chain_length,
        t_steps: 0,
        clock_cycles: Ratio::new(0, 2 * chain_length + 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_examples() {
        for (n, chain, cycle) in [(1, 6, 14), (2, 10, 22), (3, 14, 30)] {
            let r = resource_plan(n).unwrap();
            assert_eq!(r.chain_length, chain);
            assert_eq!(r.cycle_length(), cycle);
        }
        assert_eq!(resource_plan(0), Err(Error::InvalidLogicalCount(0)));
    }

    #[test]
    fn layout_n3() {
        let l = LayoutMap::new(3).unwrap();
        assert_eq!(l.n_sites(), 14);
        assert_eq!(l.logical_site(2).unwrap(), 3);
        assert_eq!(l.readout_site(), 7);
        assert_eq!(l.mirror(7), 8);
        assert_eq!(l.idle_sites(), vec![2, 4, 7, 8, 11, 13]);
        assert_eq!(l.data_sites(), vec![1, 3, 5, 14, 12, 10]);
        assert!(l.logical_site(4).is_err());
    }

    #[test]
    fn cycles_are_reduced_fractions() {
        let r = resource_plan(1).unwrap().with_steps(21);
        assert_eq!(r.clock_cycles.to_string(), "3/2");
    }
}
