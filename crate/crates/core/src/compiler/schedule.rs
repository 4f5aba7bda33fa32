use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symplectic::Axis;

/// One primitive of a translation-invariant schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleItem {
    /// One application of the transition function `T`.
    StepT,
    /// Uniform pulse `⊗_i exp(i angle/2 A_i)`.
    Pulse { axis: Axis, angle: f64 },
}

/// Time-ordered primitives for a chain of `n_sites` qubits. The first item
/// is executed first.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    n_sites: usize,
    items: Vec<ScheduleItem>,
}

impl PulseSchedule {
    pub fn new(n_sites: usize) -> Self {
        Self {
            n_sites,
            items: Vec::new(),
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn items(&self) -> &[ScheduleItem] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn t_steps(&self) -> usize {
        self.items
            .iter()
            .filter(|i| matches!(i, ScheduleItem::StepT))
            .count()
    }

    pub fn pulse_count(&self) -> usize {
        self.items.len() - self.t_steps()
    }

    pub fn push(&mut self, item: ScheduleItem) {
        self.items.push(item);
    }

    pub fn steps(&mut self, count: usize) -> &mut Self {
        self.items
            .extend(std::iter::repeat_n(ScheduleItem::StepT, count));
        self
    }

    pub fn pulse(&mut self, axis: Axis, angle: f64) -> &mut Self {
        self.items.push(ScheduleItem::Pulse { axis, angle });
        self
    }

    /// Appends `other`, which runs after everything already in `self`.
    pub fn append(&mut self, other: &PulseSchedule) -> Result<()> {
        if other.n_sites != self.n_sites {
            return Err(Error::LengthMismatch {
                expected: self.n_sites,
                actual: other.n_sites,
            });
        }
        self.items.extend_from_slice(&other.items);
        Ok(())
    }

    /// Lengths of the maximal runs of `T` between pulses, in execution
    /// order, including leading and trailing runs.
    pub fn t_runs(&self) -> Vec<usize> {
        let mut runs = vec![0];
        for item in &self.items {
            match item {
                ScheduleItem::StepT => *runs.last_mut().unwrap() += 1,
                ScheduleItem::Pulse { .. } => runs.push(0),
            }
        }
        runs
    }

    /// Text form: `N <sites>` then one item per line.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (first_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `N <sites>` header".into(),
        })?;
        let n_sites = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["N", n] => n.parse::<usize>().map_err(|e| Error::Parse {
                line: first_no,
                message: format!("bad site count {n:?}: {e}"),
            })?,
            _ => {
                return Err(Error::Parse {
                    line: first_no,
                    message: format!("expected `N <sites>`, got {header:?}"),
                })
            }
        };
        if n_sites == 0 {
            return Err(Error::Parse {
                line: first_no,
                message: "chain length must be positive".into(),
            });
        }

        let mut schedule = PulseSchedule::new(n_sites);
        for (line_no, line) in lines {
            let item = line
                .parse::<ScheduleItem>()
                .map_err(|e| e.at_line(line_no))?;
            schedule.push(item);
        }
        Ok(schedule)
    }
}

impl fmt::Display for ScheduleItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleItem::StepT => f.write_str("T"),
            // `{}` on f64 prints the shortest text that parses back exactly
            ScheduleItem::Pulse { axis, angle } => write!(f, "P {axis} {angle}"),
        }
    }
}

impl FromStr for ScheduleItem {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[..] {
            ["T"] => Ok(ScheduleItem::StepT),
            ["P", axis, angle] => {
                let axis = axis.parse::<Axis>()?;
                let angle = angle.parse::<f64>().map_err(|e| Error::Parse {
                    line: 0,
                    message: format!("bad angle {angle:?}: {e}"),
                })?;
                Ok(ScheduleItem::Pulse { axis, angle })
            }
            _ => Err(Error::Parse {
                line: 0,
                message: format!("expected `T` or `P <axis> <angle>`, got {line:?}"),
            }),
        }
    }
}

impl fmt::Display for PulseSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N {}", self.n_sites)?;
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_layout() {
        let mut s = PulseSchedule::new(3);
        s.pulse(Axis::Z, 0.25).steps(2).pulse(Axis::Y, std::f64::consts::PI);
        assert_eq!(s.to_text(), "N 3\nP Z 0.25\nT\nT\nP Y 3.141592653589793\n");
        assert_eq!(s.t_steps(), 2);
        assert_eq!(s.t_runs(), vec![0, 2, 0]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = PulseSchedule::parse("N 2\nT\nP Q 1.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = PulseSchedule::parse("T\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = PulseSchedule::parse("N 2\nP X nan-ish\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(PulseSchedule::parse("").is_err());
    }

    #[test]
    fn empty_schedule() {
        let s = PulseSchedule::parse("N 4\n").unwrap();
        assert!(s.is_empty());
        assert_eq!(s.n_sites(), 4);
    }

    fn item_strategy() -> impl Strategy<Value = ScheduleItem> {
        prop_oneof![
            Just(ScheduleItem::StepT),
            (0..3usize, any::<f64>().prop_filter("finite", |a| a.is_finite())).prop_map(|(a, angle)| {
                let axis = [Axis::X, Axis::Y, Axis::Z][a];
                ScheduleItem::Pulse { axis, angle }
            }),
        ]
    }

    proptest! {
        #[test]
        fn text_round_trip_is_exact(n in 1usize..40, items in proptest::collection::vec(item_strategy(), 0..50)) {
            let mut s = PulseSchedule::new(n);
            for it in items {
                s.push(it);
            }
            let text = s.to_text();
            let back = PulseSchedule::parse(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
