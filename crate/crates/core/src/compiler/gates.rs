//! Lowering of gates to pulse schedules.
//!
//! Every gate is a pair of blocks of `N + 1` steps each. The first block
//! carries the rotation pulse with angle `+α/2`, the second with `−α/2`;
//! two `Y` pulses placed one step apart in each block select which sites
//! keep the rotation and which see it cancelled. Because each block is
//! `N + 1` steps long, the pair ends with the chain back in its original
//! order.
//!
//! Sequences are written here as operator products, rightmost factor
//! first, and turned into execution order by [`from_operator_product`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::symplectic::{s_vector, Axis, PauliWord, TransitionMap};

use super::circuit::{LogicalCircuit, LogicalGate};
use super::layout::{resource_plan, LayoutMap, ResourceReport};
use super::schedule::{PulseSchedule, ScheduleItem};

/// One factor of an operator product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    /// `T^k`.
    Steps(usize),
    /// `U_A(angle)`.
    Pulse(Axis, f64),
}

/// Turns an operator product `F_1 F_2 ⋯ F_k` (where `F_k` acts first) into
/// a schedule in execution order.
pub fn from_operator_product(n_sites: usize, product: &[Factor]) -> PulseSchedule {
    let mut s = PulseSchedule::new(n_sites);
    for f in product.iter().rev() {
        match *f {
            Factor::Steps(k) => {
                s.steps(k);
            }
            Factor::Pulse(axis, angle) => {
                s.pulse(axis, angle);
            }
        }
    }
    s
}

/// Reduces an angle modulo `4π`, the period of `exp(iα/2 P)`.
pub fn normalize_angle(alpha: f64) -> f64 {
    alpha.rem_euclid(4.0 * PI)
}

const Y_PI: Factor = Factor::Pulse(Axis::Y, PI);

/// `T^{t3} Y T Y T^{t2} U_A(β) T^{t1}`.
fn block(n: usize, axis: Axis, beta: f64, t1: usize, t2: usize, t3: usize) -> PulseSchedule {
    from_operator_product(
        n,
        &[
            Factor::Steps(t3),
            Y_PI,
            Factor::Steps(1),
            Y_PI,
            Factor::Steps(t2),
            Factor::Pulse(axis, beta),
            Factor::Steps(t1),
        ],
    )
}

fn two_blocks(n: usize, axis: Axis, alpha: f64, t: (usize, usize, usize)) -> PulseSchedule {
    let half = normalize_angle(alpha) / 2.0;
    let mut s = block(n, axis, half, t.0, t.1, t.2);
    s.append(&block(n, axis, -half, t.0, t.1, t.2))
        .expect("blocks share a chain length");
    s
}

fn check_chain(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidChainLength(0));
    }
    Ok(())
}

fn check_site(site: usize, n: usize) -> Result<()> {
    check_chain(n)?;
    if site == 0 || site > n {
        return Err(Error::SiteOutOfRange { site, n_sites: n });
    }
    if 2 * site == n + 1 {
        return Err(Error::SelfMirrorSite(site));
    }
    Ok(())
}

/// `exp(iα/2 Z_i) exp(iα/2 Z_{N+1−i})`.
pub fn compile_rz(site: usize, alpha: f64, n_sites: usize) -> Result<PulseSchedule> {
    check_site(site, n_sites)?;
    Ok(two_blocks(n_sites, Axis::Z, alpha, (0, site - 1, n_sites + 1 - site)))
}

/// `exp(iα/2 X_i) exp(iα/2 X_{N+1−i})`.
pub fn compile_rx(site: usize, alpha: f64, n_sites: usize) -> Result<PulseSchedule> {
    check_site(site, n_sites)?;
    Ok(two_blocks(n_sites, Axis::X, alpha, (0, site, n_sites - site)))
}

/// `exp(iα/2 K_i) exp(iα/2 K_{N+1−i})` with `K_i = T† X_i T`, the
/// operator `Z_i` times `X` on each neighbour of `i`.
///
/// The block needs `i ≤ N − 1`; for `i = N` the mirror site 1 is compiled
/// instead, which realizes the same pair.
pub fn compile_k(site: usize, alpha: f64, n_sites: usize) -> Result<PulseSchedule> {
    check_site(site, n_sites)?;
    let site = if site == n_sites { 1 } else { site };
    Ok(two_blocks(n_sites, Axis::X, alpha, (1, site, n_sites - 1 - site)))
}

/// Which step counts to use for the X-string sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XStringTiming {
    /// `t1 = L2 − L1`, `t2 = L1 + L2 − 1`, `t3 = N − 2L2 + 1`: each block
    /// is exactly `N + 1` steps and the rotation lands on the string.
    #[default]
    Verified,
    /// `t1 = L2 − L1`, `t2 = L1 + L2 − 2`, `t3 = N − 2L1 + 2`, as commonly
    /// quoted. Kept for comparison; it does not realize the string rotation.
    AsPublished,
}

/// Step counts `(t1, t2, t3)` of one X-string block on `N = 4n + 2` sites.
pub fn xstring_timing(l1: usize, l2: usize, n_logical: usize, timing: XStringTiming) -> Result<(usize, usize, usize)> {
    let layout = LayoutMap::new(n_logical)?;
    LogicalGate::XStringRot { alpha: 0.0, l1, l2 }.validate(n_logical)?;
    let n = layout.n_sites();
    Ok(match timing {
        XStringTiming::Verified => (l2 - l1, l1 + l2 - 1, n + 1 - 2 * l2),
        XStringTiming::AsPublished => (l2 - l1, l1 + l2 - 2, n + 2 - 2 * l1),
    })
}

/// `exp(iα/2 X_{[L1]} ⋯ X_{[L2]})` with its mirror copy.
pub fn compile_xstring(alpha: f64, l1: usize, l2: usize, n_logical: usize) -> Result<PulseSchedule> {
    compile_xstring_with(alpha, l1, l2, n_logical, XStringTiming::Verified)
}

pub fn compile_xstring_with(
    alpha: f64,
    l1: usize,
    l2: usize,
    n_logical: usize,
    timing: XStringTiming,
) -> Result<PulseSchedule> {
    let t = xstring_timing(l1, l2, n_logical, timing)?;
    Ok(two_blocks(4 * n_logical + 2, Axis::X, alpha, t))
}

/// `(angle, L1, L2)` of the X-string rotations making up a controlled flip.
/// The rotation over an empty middle range is a global phase and is left out.
pub fn controlled_flip_parts(l1: usize, l2: usize) -> Result<Vec<(f64, usize, usize)>> {
    if l1 == 0 || l1 >= l2 {
        return Err(Error::InvalidGate(format!("cflip needs 1 ≤ l1 < l2, got {l1}, {l2}")));
    }
    let mut parts = vec![(PI / 2.0, l1, l2), (-PI / 2.0, l1 + 1, l2)];
    if l1 + 1 < l2 {
        parts.push((PI / 2.0, l1 + 1, l2 - 1));
    }
    parts.push((-PI / 2.0, l1, l2 - 1));
    Ok(parts)
}

/// `exp(iπ |−−⟩⟨−−|)` on `[l1]`, `[l2]` and the mirror pair.
pub fn compile_controlled_flip(l1: usize, l2: usize, n_logical: usize) -> Result<PulseSchedule> {
    LogicalGate::ControlledFlip { l1, l2 }.validate(n_logical)?;
    let mut s = PulseSchedule::new(4 * n_logical + 2);
    for (alpha, a, b) in controlled_flip_parts(l1, l2)? {
        s.append(&compile_xstring(alpha, a, b, n_logical)?)?;
    }
    Ok(s)
}

pub fn compile_gate(gate: &LogicalGate, n_logical: usize) -> Result<PulseSchedule> {
    gate.validate(n_logical)?;
    let n = LayoutMap::new(n_logical)?.n_sites();
    match *gate {
        LogicalGate::RZ { j, alpha } => compile_rz(2 * j - 1, alpha, n),
        LogicalGate::RX { j, alpha } => compile_rx(2 * j - 1, alpha, n),
        LogicalGate::XXRot { j, alpha } => compile_k(2 * j, alpha, n),
        LogicalGate::XStringRot { alpha, l1, l2 } => compile_xstring(alpha, l1, l2, n_logical),
        LogicalGate::ControlledFlip { l1, l2 } => compile_controlled_flip(l1, l2, n_logical),
    }
}

pub fn compile_circuit(c: &LogicalCircuit) -> Result<(PulseSchedule, ResourceReport)> {
    let plan = resource_plan(c.n_logical())?;
    let mut s = PulseSchedule::new(plan.chain_length);
    for g in c.gates() {
        s.append(&compile_gate(g, c.n_logical())?)?;
    }
    let report = plan.with_steps(s.t_steps());
    Ok((s, report))
}

/// Sites whose rotation survives a Y-pulse pattern `c` over `t = 0..=N`.
pub fn predict_selection(c: &BitVec, n_sites: usize) -> Result<BitVec> {
    s_vector(c, n_sites)
}

/// A rotation `exp(i angle · word)` by a Hermitian Pauli word.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    pub word: PauliWord,
    pub angle: f64,
}

/// The site-reversed word.
pub fn mirror_word(w: &PauliWord) -> PauliWord {
    let n = w.n_sites();
    let rev = |v: &BitVec| BitVec::from_bools(&(0..n).rev().map(|k| v.get(k)).collect::<Vec<_>>());
    PauliWord::from_parts(w.phase_i_power(), rev(w.z()), rev(w.x())).expect("same length")
}

fn pair(word: PauliWord, alpha: f64) -> Vec<Rotation> {
    let mirror = mirror_word(&word);
    vec![
        Rotation {
            word,
            angle: alpha / 2.0,
        },
        Rotation {
            word: mirror,
            angle: alpha / 2.0,
        },
    ]
}

/// The generator of an X-string block, `T^{-d} X_p T^{d}` with `p = L1 + L2 − 1`.
/// On the interlaced layout with ancillas in `|0⟩` it acts as the logical
/// X string.
pub fn xstring_generator(l1: usize, l2: usize, n_sites: usize) -> Result<PauliWord> {
    let map = TransitionMap::chain(n_sites)?;
    let x = PauliWord::single(n_sites, l1 + l2 - 1, Axis::X)?;
    map.evolve(&x, -((l2 - l1) as i64))
}

/// Exact physical rotations realized by `gate`, up to a global phase.
pub fn gate_rotations(gate: &LogicalGate, n_logical: usize) -> Result<Vec<Rotation>> {
    gate.validate(n_logical)?;
    let n = LayoutMap::new(n_logical)?.n_sites();
    let map = TransitionMap::chain(n)?;
    Ok(match *gate {
        LogicalGate::RZ { j, alpha } => pair(PauliWord::single(n, 2 * j - 1, Axis::Z)?, alpha),
        LogicalGate::RX { j, alpha } => pair(PauliWord::single(n, 2 * j - 1, Axis::X)?, alpha),
        LogicalGate::XXRot { j, alpha } => {
            pair(map.evolve(&PauliWord::single(n, 2 * j, Axis::X)?, -1)?, alpha)
        }
        LogicalGate::XStringRot { alpha, l1, l2 } => pair(xstring_generator(l1, l2, n)?, alpha),
        LogicalGate::ControlledFlip { l1, l2 } => {
            let mut out = Vec::new();
            for (alpha, a, b) in controlled_flip_parts(l1, l2)? {
                out.extend(pair(xstring_generator(a, b, n)?, alpha));
            }
            out
        }
    })
}

/// Rotations realized by the raw physical compilers.
pub fn rz_rotations(site: usize, alpha: f64, n_sites: usize) -> Result<Vec<Rotation>> {
    check_site(site, n_sites)?;
    Ok(pair(PauliWord::single(n_sites, site, Axis::Z)?, alpha))
}

pub fn rx_rotations(site: usize, alpha: f64, n_sites: usize) -> Result<Vec<Rotation>> {
    check_site(site, n_sites)?;
    Ok(pair(PauliWord::single(n_sites, site, Axis::X)?, alpha))
}

pub fn k_rotations(site: usize, alpha: f64, n_sites: usize) -> Result<Vec<Rotation>> {
    check_site(site, n_sites)?;
    let map = TransitionMap::chain(n_sites)?;
    Ok(pair(map.evolve(&PauliWord::single(n_sites, site, Axis::X)?, -1)?, alpha))
}

/// Items of `s` with every `T` run collapsed, for compact display.
pub fn describe(s: &PulseSchedule) -> String {
    let mut out = Vec::new();
    let mut run = 0;
    for item in s.items() {
        match item {
            ScheduleItem::StepT => run += 1,
            ScheduleItem::Pulse { axis, angle } => {
                if run > 0 {
                    out.push(format!("T^{run}"));
                    run = 0;
                }
                out.push(format!("{axis}({angle:.4})"));
            }
        }
    }
    if run > 0 {
        out.push(format!("T^{run}"));
    }
    out.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_product_is_reversed() {
        // U_X(0.5) T^2 acts as: two steps, then the pulse
        let s = from_operator_product(3, &[Factor::Pulse(Axis::X, 0.5), Factor::Steps(2)]);
        assert_eq!(
            s.items(),
            &[
                ScheduleItem::StepT,
                ScheduleItem::StepT,
                ScheduleItem::Pulse { axis: Axis::X, angle: 0.5 }
            ]
        );
    }

    #[test]
    fn rz_block_counts() {
        let s = compile_rz(1, 0.3, 6).unwrap();
        assert_eq!(s.t_runs(), vec![0, 0, 1, 6, 0, 1, 6]);
        assert_eq!(s.t_steps(), 14);
        assert_eq!(
            s.items()[0],
            ScheduleItem::Pulse { axis: Axis::Z, angle: 0.15 }
        );
    }

    #[test]
    fn rx_and_k_block_counts() {
        assert_eq!(compile_rx(1, 0.3, 6).unwrap().t_runs(), vec![0, 1, 1, 5, 1, 1, 5]);
        assert_eq!(compile_k(2, 0.3, 6).unwrap().t_runs(), vec![1, 2, 1, 4, 2, 1, 3]);
        for n in 2..=12 {
            for i in (1..=n).filter(|&i| 2 * i != n + 1) {
                assert_eq!(compile_rz(i, 1.0, n).unwrap().t_steps(), 2 * (n + 1));
                assert_eq!(compile_rx(i, 1.0, n).unwrap().t_steps(), 2 * (n + 1));
                assert_eq!(compile_k(i, 1.0, n).unwrap().t_steps(), 2 * (n + 1));
            }
        }
    }

    #[test]
    fn site_checks() {
        assert_eq!(compile_rz(0, 1.0, 6), Err(Error::SiteOutOfRange { site: 0, n_sites: 6 }));
        assert_eq!(compile_rx(7, 1.0, 6), Err(Error::SiteOutOfRange { site: 7, n_sites: 6 }));
        assert_eq!(compile_k(3, 1.0, 5), Err(Error::SelfMirrorSite(3)));
    }

    #[test]
    fn xstring_timings() {
        assert_eq!(xstring_timing(1, 3, 3, XStringTiming::AsPublished).unwrap(), (2, 2, 14));
        assert_eq!(xstring_timing(1, 3, 3, XStringTiming::Verified).unwrap(), (2, 3, 9));
        // a single-site string is the plain X rotation on [l]
        for l in 1..=3 {
            let a = compile_xstring(0.7, l, l, 3).unwrap();
            let b = compile_rx(2 * l - 1, 0.7, 14).unwrap();
            assert_eq!(a, b);
        }
        let published = compile_xstring_with(1.0, 1, 3, 3, XStringTiming::AsPublished).unwrap();
        assert_eq!(published.t_steps(), 2 * 15 + 4 * 2);
    }

    #[test]
    fn controlled_flip_parts_skip_empty_middle() {
        assert_eq!(controlled_flip_parts(1, 2).unwrap().len(), 3);
        assert_eq!(controlled_flip_parts(1, 3).unwrap().len(), 4);
        assert!(controlled_flip_parts(2, 2).is_err());
        assert!(compile_controlled_flip(2, 1, 2).is_err());
    }

    #[test]
    fn circuit_accounting() {
        let empty = LogicalCircuit::new(1).unwrap();
        let (s, r) = compile_circuit(&empty).unwrap();
        assert!(s.is_empty());
        assert_eq!(r.t_steps, 0);

        let c = LogicalCircuit::new(1)
            .unwrap()
            .with(LogicalGate::RZ { j: 1, alpha: 0.4 })
            .unwrap();
        let (s, r) = compile_circuit(&c).unwrap();
        assert_eq!(s.t_steps(), 14);
        assert_eq!(r.clock_cycles, num_rational::Ratio::new(1, 1));

        let c2 = c.clone().with(LogicalGate::RX { j: 1, alpha: -0.2 }).unwrap();
        assert_eq!(compile_circuit(&c2).unwrap().0.t_steps(), 28);
    }

    #[test]
    fn deterministic_output() {
        let c = LogicalCircuit::parse("n 2\nrz 1 0.3\nxx 1 1\ncflip 1 2\n").unwrap();
        let a = compile_circuit(&c).unwrap().0.to_text();
        let b = compile_circuit(&c).unwrap().0.to_text();
        assert_eq!(a, b);
    }

    #[test]
    fn angles_wrap_at_four_pi() {
        let a = compile_rz(1, 1.0, 6).unwrap();
        let b = compile_rz(1, 1.0 + 4.0 * PI, 6).unwrap();
        assert_eq!(a.t_runs(), b.t_runs());
        match (a.items()[0], b.items()[0]) {
            (ScheduleItem::Pulse { angle: x, .. }, ScheduleItem::Pulse { angle: y, .. }) => {
                assert!((x - y).abs() < 1e-12)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn k_generator_letters() {
        let r = k_rotations(2, 1.0, 6).unwrap();
        assert_eq!(r[0].word.to_string(), "+XZXIII");
        assert_eq!(r[1].word.to_string(), "+IIIXZX");
    }

    #[test]
    fn selection_of_a_single_y_pair() {
        // Y pulses after i−1 and i steps select site i and its mirror
        let n = 8;
        let mut c = BitVec::zeros(n + 1);
        c.set(2, true);
        c.set(3, true);
        assert_eq!(predict_selection(&c, n).unwrap().ones_indices(), vec![2, 5]);
        assert!(predict_selection(&BitVec::zeros(n + 1), n).unwrap().is_zero());
    }
}
