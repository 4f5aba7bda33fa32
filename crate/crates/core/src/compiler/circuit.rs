use std::fmt;

use crate::error::{Error, Result};

/// Gates of the logical instruction set. Indices are logical (`1..=n`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogicalGate {
    /// `exp(iα/2 Z_j)`.
    RZ { j: usize, alpha: f64 },
    /// `exp(iα/2 X_j)`.
    RX { j: usize, alpha: f64 },
    /// `exp(iα/2 X_j X_{j+1})`.
    XXRot { j: usize, alpha: f64 },
    /// `exp(iα/2 X_{l1} ⋯ X_{l2})`.
    XStringRot { alpha: f64, l1: usize, l2: usize },
    /// `exp(iπ |−−⟩⟨−−|)` on `l1`, `l2`.
    ControlledFlip { l1: usize, l2: usize },
}

impl LogicalGate {
    pub fn validate(&self, n_logical: usize) -> Result<()> {
        let in_range = |j: usize| {
            if (1..=n_logical).contains(&j) {
                Ok(())
            } else {
                Err(Error::SiteOutOfRange {
                    site: j,
                    n_sites: n_logical,
                })
            }
        };
        match *self {
            LogicalGate::RZ { j, .. } | LogicalGate::RX { j, .. } => in_range(j),
            LogicalGate::XXRot { j, .. } => {
                in_range(j)?;
                if j == n_logical {
                    return Err(Error::InvalidGate(format!(
                        "xx {j} needs a right neighbour, but only {n_logical} logical qubits exist"
                    )));
                }
                Ok(())
            }
            LogicalGate::XStringRot { l1, l2, .. } => {
                in_range(l1)?;
                in_range(l2)?;
                if l1 > l2 {
                    return Err(Error::InvalidGate(format!("xstring range {l1}..{l2} is reversed")));
                }
                Ok(())
            }
            LogicalGate::ControlledFlip { l1, l2 } => {
                in_range(l1)?;
                in_range(l2)?;
                if l1 >= l2 {
                    return Err(Error::InvalidGate(format!("cflip needs l1 < l2, got {l1}, {l2}")));
                }
                Ok(())
            }
        }
    }

    fn parse_line(line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let gate = match parts[..] {
            ["rz", j, a] => LogicalGate::RZ { j: index(j)?, alpha: angle(a)? },
            ["rx", j, a] => LogicalGate::RX { j: index(j)?, alpha: angle(a)? },
            ["xx", j, a] => LogicalGate::XXRot { j: index(j)?, alpha: angle(a)? },
            ["xstring", a, l1, l2] => LogicalGate::XStringRot {
                alpha: angle(a)?,
                l1: index(l1)?,
                l2: index(l2)?,
            },
            ["cflip", l1, l2] => LogicalGate::ControlledFlip {
                l1: index(l1)?,
                l2: index(l2)?,
            },
            _ => return Err(parse_error(format!("unrecognized directive {line:?}"))),
        };
        Ok(gate)
    }
}

fn parse_error(message: String) -> Error {
    Error::Parse { line: 0, message }
}

fn index(s: &str) -> Result<usize> {
    s.parse().map_err(|e| parse_error(format!("bad index {s:?}: {e}")))
}

fn angle(s: &str) -> Result<f64> {
    let a: f64 = s.parse().map_err(|e| parse_error(format!("bad angle {s:?}: {e}")))?;
    if !a.is_finite() {
        return Err(parse_error(format!("angle {s:?} is not finite")));
    }
    Ok(a)
}

impl fmt::Display for LogicalGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicalGate::RZ { j, alpha } => write!(f, "rz {j} {alpha}"),
            LogicalGate::RX { j, alpha } => write!(f, "rx {j} {alpha}"),
            LogicalGate::XXRot { j, alpha } => write!(f, "xx {j} {alpha}"),
            LogicalGate::XStringRot { alpha, l1, l2 } => write!(f, "xstring {alpha} {l1} {l2}"),
            LogicalGate::ControlledFlip { l1, l2 } => write!(f, "cflip {l1} {l2}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogicalCircuit {
    n_logical: usize,
    gates: Vec<LogicalGate>,
}

impl LogicalCircuit {
    pub fn new(n_logical: usize) -> Result<Self> {
        if n_logical == 0 {
            return Err(Error::InvalidLogicalCount(0));
        }
        Ok(Self {
            n_logical,
            gates: Vec::new(),
        })
    }

    pub fn n_logical(&self) -> usize {
        self.n_logical
    }

    pub fn gates(&self) -> &[LogicalGate] {
        &self.gates
    }

    pub fn push(&mut self, gate: LogicalGate) -> Result<()> {
        gate.validate(self.n_logical)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn with(mut self, gate: LogicalGate) -> Result<Self> {
        self.push(gate)?;
        Ok(self)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the line-oriented circuit format. Blank lines and `#`
    /// comments are ignored; errors report 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (first_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n <count>` header".into(),
        })?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", n] => index(n).map_err(|e| e.at_line(first_no))?,
            _ => {
                return Err(Error::Parse {
                    line: first_no,
                    message: format!("expected `n <count>`, got {header:?}"),
                })
            }
        };
        let mut circuit = LogicalCircuit::new(n).map_err(|e| e.at_line(first_no))?;
        for (line_no, line) in lines {
            let gate = LogicalGate::parse_line(line).map_err(|e| e.at_line(line_no))?;
            circuit.push(gate).map_err(|e| e.at_line(line_no))?;
        }
        Ok(circuit)
    }
}

impl fmt::Display for LogicalCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n_logical)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
