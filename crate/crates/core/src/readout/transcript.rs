use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::statevec::MeasurementModel;

/// Outcome of the step-3 measurement for the pair `(j1, jk)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub j1: usize,
    pub jk: usize,
    pub m: i64,
}

/// One assignment of both register copies, as `0`/`1` strings with `r_1`
/// first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegisterPair {
    pub r: String,
    pub r_bar: String,
}

impl RegisterPair {
    pub fn new(r: &BitVec, r_bar: &BitVec) -> Self {
        Self {
            r: r.to_string(),
            r_bar: r_bar.to_string(),
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            r: self.r_bar.clone(),
            r_bar: self.r.clone(),
        }
    }

    pub fn bits(&self) -> Result<(BitVec, BitVec)> {
        Ok((BitVec::parse(&self.r)?, BitVec::parse(&self.r_bar)?))
    }
}

/// Everything the readout protocol observed, plus the decoded registers.
/// Field order is fixed, so serialized transcripts are stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadoutTranscript {
    pub n_logical: usize,
    pub model: MeasurementModel,
    pub m: i64,
    pub m_j: BTreeMap<usize, i64>,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub m_pairs: Vec<PairOutcome>,
    pub solutions: Vec<RegisterPair>,
}

impl ReadoutTranscript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::CorruptTranscript(e.to_string()))
    }

    /// `m − m(j)` in ascending `j`.
    pub fn step2_differences(&self) -> Vec<(usize, i64)> {
        self.m_j.iter().map(|(&j, &mj)| (j, self.m - mj)).collect()
    }

    /// True when `(r, r̄)` is among the solutions, in either order.
    pub fn contains_modulo_interchange(&self, r: &BitVec, r_bar: &BitVec) -> bool {
        let want = RegisterPair::new(r, r_bar);
        let swapped = want.swapped();
        self.solutions.iter().any(|s| *s == want || *s == swapped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReadoutTranscript {
        ReadoutTranscript {
            n_logical: 2,
            model: MeasurementModel::Coherent,
            m: 6,
            m_j: BTreeMap::from([(1, 4), (2, 4)]),
            j_set: vec![1, 2],
            m_pairs: vec![PairOutcome { j1: 1, jk: 2, m: 6 }],
            solutions: vec![
                RegisterPair { r: "01".into(), r_bar: "10".into() },
                RegisterPair { r: "10".into(), r_bar: "01".into() },
            ],
        }
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let t = sample();
        let text = t.to_json();
        assert_eq!(ReadoutTranscript::from_json(&text).unwrap(), t);
        let order: Vec<usize> = ["\"n_logical\"", "\"model\"", "\"m\"", "\"m_j\"", "\"J\"", "\"m_pairs\"", "\"solutions\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{text}");
        assert!(text.contains("\"model\": \"coherent\""));
    }

    #[test]
    fn interchange_lookup() {
        let t = sample();
        let a = BitVec::parse("10").unwrap();
        let b = BitVec::parse("01").unwrap();
        assert!(t.contains_modulo_interchange(&a, &b));
        assert!(!t.contains_modulo_interchange(&a, &a));
        assert_eq!(t.step2_differences(), vec![(1, 2), (2, 2)]);
    }

    #[test]
    fn garbage_is_reported_as_corruption() {
        assert!(matches!(
            ReadoutTranscript::from_json("{\"m\": 1}"),
            Err(Error::CorruptTranscript(_))
        ));
    }
}
