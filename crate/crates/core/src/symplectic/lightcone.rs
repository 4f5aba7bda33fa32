use std::fmt::Write as _;

use crate::error::Result;

use super::pauli::{Axis, PauliWord};
use super::transition::{propagate, TransitionMap};

/// Rows of `T^t(A_p)` rendered one letter per site.
#[derive(Debug, Clone, PartialEq)]
pub struct LightCone {
    pub site: usize,
    pub axis: Axis,
    pub n_sites: usize,
    pub rows: Vec<String>,
    /// Whether row `t` anticommutes with the global Y pulse.
    pub y_susceptible: Vec<bool>,
    /// Sign in front of each row's letter product.
    pub signs: Vec<i8>,
}

pub fn render_lightcone(p: usize, axis: Axis, n_sites: usize, t_max: usize) -> Result<LightCone> {
    let map = TransitionMap::chain(n_sites)?;
    let y = PauliWord::all_y(n_sites);
    let mut w = propagate(p, axis, 0, &map)?;
    let mut cone = LightCone {
        site: p,
        axis,
        n_sites,
        rows: Vec::with_capacity(t_max + 1),
        y_susceptible: Vec::with_capacity(t_max + 1),
        signs: Vec::with_capacity(t_max + 1),
    };
    for t in 0..=t_max {
        if t > 0 {
            w = map.conjugate(&w)?;
        }
        cone.rows.push(w.letters());
        cone.y_susceptible.push(w.anticommutes_with(&y));
        // conjugation preserves hermiticity
        cone.signs.push(w.sign().unwrap_or(1));
    }
    Ok(cone)
}

const CELL: usize = 16;

fn color(letter: char) -> &'static str {
    match letter {
        'X' => "#d62728",
        'Z' => "#1f77b4",
        'Y' => "#9467bd",
        _ => "#ffffff",
    }
}

impl LightCone {
    /// One line per time step: `t`, the row letters, and the Y-susceptibility bit.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# {}_{} N={} t=0..{}\n# t  sites  Y\n",
            self.axis,
            self.site,
            self.n_sites,
            self.rows.len().saturating_sub(1)
        );
        for (t, (row, y)) in self.rows.iter().zip(&self.y_susceptible).enumerate() {
            let sign = if self.signs[t] < 0 { '-' } else { '+' };
            writeln!(out, "{t:>3} {sign}{row} {}", u8::from(*y)).unwrap();
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let width = self.n_sites * CELL;
        let height = self.rows.len() * CELL;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
        );
        for (t, row) in self.rows.iter().enumerate() {
            for (i, letter) in row.chars().enumerate() {
                writeln!(
                    out,
                    "  <rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{}\" stroke=\"#cccccc\"><title>t={t} site={} {letter}</title></rect>",
                    i * CELL,
                    t * CELL,
                    color(letter),
                    i + 1,
                )
                .unwrap();
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_for_z3_on_eight_sites() {
        let cone = render_lightcone(3, Axis::Z, 8, 9).unwrap();
        assert_eq!(cone.rows[0], "IIZIIIII");
        assert_eq!(cone.rows[1], "IZXZIIII");
        assert_eq!(cone.rows[9], "IIIIIZII");
        assert!(cone.signs.iter().all(|&s| s == 1));
    }

    #[test]
    fn zero_time_has_single_row() {
        let cone = render_lightcone(2, Axis::X, 4, 0).unwrap();
        assert_eq!(cone.rows, vec!["IXII".to_string()]);
        assert_eq!(cone.to_text().lines().count(), 3);
    }

    #[test]
    fn svg_has_one_rect_per_cell() {
        let cone = render_lightcone(1, Axis::Z, 3, 2).unwrap();
        assert_eq!(cone.to_svg().matches("<rect").count(), 9);
    }
}
