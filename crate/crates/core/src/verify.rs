//! Verification suites comparing independent computations of the same
//! quantity: symplectic propagation against dense matrices, closed forms
//! against their definitions, compiled schedules against exact rotations.
//!
//! Every check reports what it compared and the worst deviation seen. The
//! `corrupt` option swaps in a deliberately wrong ingredient so that the
//! failure path can be exercised end to end.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compiler::{
    compile_gate, compile_xstring_with, gate_rotations, mirror_word, LayoutMap, LogicalGate, Rotation,
    XStringTiming,
};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::readout::{
    detect_chain_length, mirror_pair_state, register_state, run_protocol, SimulatedChain,
};
use crate::statevec::{
    global_phase_fidelity, init_zero, schedule_unitary, DenseUnitary, MeasurementModel, StateVector,
};
use crate::symplectic::{
    boundary_recursion, foldback_solution, mx_definitional, mz_closed_form, mz_definitional, propagate,
    verify_bit_reversal_with, Axis, PauliWord, TransitionMap,
};

/// Outcome of one named comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Reversal,
    Mz,
    Gates,
    Appendix,
    Readout,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Reversal, Suite::Mz, Suite::Gates, Suite::Appendix, Suite::Readout];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Reversal => "reversal",
            Suite::Mz => "mz",
            Suite::Gates => "gates",
            Suite::Appendix => "appendix",
            Suite::Readout => "readout",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown suite {s:?}"),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Largest chain length for symplectic checks.
    pub max_n: usize,
    pub tol: f64,
    pub seed: u64,
    /// Random samples or trials per configuration.
    pub trials: usize,
    pub corrupt: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: 16,
            tol: 1e-9,
            seed: 0,
            trials: 100,
            corrupt: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark}  {:<width$}  {}\n", c.name, c.detail));
        }
        out
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Reversal => vec![
            bit_reversal_symplectic(opts.max_n, opts.corrupt)?,
            bit_reversal_dense(opts.max_n.min(10), opts.tol, opts.corrupt)?,
        ],
        Suite::Mz => vec![
            mz_equivalence(opts.max_n, opts.corrupt)?,
            mz_recursion(opts.max_n)?,
            lightcone_example()?,
            pulse_selection(opts.max_n, opts.trials, opts.seed)?,
        ],
        Suite::Gates => {
            let timing = if opts.corrupt {
                XStringTiming::AsPublished
            } else {
                XStringTiming::Verified
            };
            let mut checks = Vec::new();
            for n in 1..=2 {
                checks.extend(gate_compilation(n, &STANDARD_ANGLES, 1e-8, timing)?);
            }
            checks.push(interlacing(&STANDARD_ANGLES, opts.tol)?);
            checks
        }
        Suite::Appendix => vec![
            foldback_equivalence(opts.max_n, opts.corrupt)?,
            checkerboard(opts.max_n)?,
            phase_neutrality(opts.max_n)?,
        ],
        Suite::Readout => {
            let mut checks = Vec::new();
            for n in 1..=3 {
                for model in [MeasurementModel::Coherent, MeasurementModel::Dephasing] {
                    checks.push(readout_recovery(n, opts.trials, opts.seed, model, opts.corrupt)?);
                }
            }
            checks.push(length_signal(opts.max_n.min(10), opts.tol)?);
            checks
        }
    };
    Ok(SuiteReport { suite, checks })
}

/// Angles used for gate checks.
pub const STANDARD_ANGLES: [f64; 6] = [0.0, FRAC_PI_4, -FRAC_PI_4, FRAC_PI_2, -FRAC_PI_2, 1.0];

/// Chain adjacency with an extra edge between the two ends, used as a
/// corrupted transition function.
fn ring_map(n: usize) -> Result<TransitionMap> {
    let mut g = BitMatrix::zeros(n, n);
    for i in 0..n {
        let j = (i + 1) % n;
        if i != j {
            g.set(i, j, true);
            g.set(j, i, true);
        }
    }
    TransitionMap::from_adjacency(g)
}

fn map_for(n: usize, corrupt: bool) -> Result<TransitionMap> {
    if corrupt && n >= 3 {
        ring_map(n)
    } else {
        TransitionMap::chain(n)
    }
}

/// `T^{N+1}(A_p) = A_{N+1−p}` with phase `+1`, every `p`, `N = 1..=max_n`.
pub fn bit_reversal_symplectic(max_n: usize, corrupt: bool) -> Result<Check> {
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let report = verify_bit_reversal_with(&map_for(n, corrupt)?)?;
        failures.extend(report.failures.into_iter().map(|f| format!("N={n}: {f}")));
    }
    let detail = if failures.is_empty() {
        format!("N=1..={max_n}, all sites, X and Z")
    } else {
        format!("{} failures, first: {}", failures.len(), failures[0])
    };
    Ok(Check::new("bit reversal (symplectic)", failures.is_empty(), detail))
}

/// `T^{N+1}` equals the mirror permutation up to global phase.
pub fn bit_reversal_dense(max_n: usize, tol: f64, corrupt: bool) -> Result<Check> {
    let mut worst: f64 = 1.0;
    for n in 1..=max_n {
        let steps = if corrupt { n } else { n + 1 };
        let u = DenseUnitary::from_action(n, |s| {
            for _ in 0..steps {
                s.apply_t();
            }
            Ok(())
        })?;
        worst = worst.min(global_phase_fidelity(&u, &DenseUnitary::reflection(n)?));
    }
    Ok(Check::new(
        "bit reversal (dense)",
        worst >= 1.0 - tol,
        format!("N=1..={max_n}, min |tr(R† T^(N+1))|/2^N = {worst:.15}"),
    ))
}

/// Closed form of `M_Z` against `a_Z_iᵀ C^t a_Y` for `t ∈ [−1, N]`.
pub fn mz_equivalence(max_n: usize, corrupt: bool) -> Result<Check> {
    let mut mismatches = 0usize;
    let mut total = 0usize;
    for n in 1..=max_n {
        let map = map_for(n, corrupt)?;
        for i in 1..=n {
            for t in -1..=n as i64 {
                total += 1;
                if mz_definitional(i, t, &map)? != mz_closed_form(i, t, n)? {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(Check::new(
        "M_Z closed form",
        mismatches == 0,
        format!("{mismatches} mismatches in {total} entries, N=1..={max_n}"),
    ))
}

/// `M_Z(i,t+1) = M_Z(i,t−1) + Σ_{j~i} M_Z(j,t)`, `M_X(i,t+1) = M_Z(i,t)`,
/// and `M_Z(i,−1) = M_Z(i,0) = 1`.
pub fn mz_recursion(max_n: usize) -> Result<Check> {
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let map = TransitionMap::chain(n)?;
        let mz = |i: usize, t: i64| mz_closed_form(i, t, n);
        for i in 1..=n {
            if !mz(i, -1)? || !mz(i, 0)? {
                bad.push(format!("N={n} i={i}: boundary"));
            }
            for t in 0..n as i64 {
                let mut rhs = mz(i, t - 1)?;
                if i > 1 {
                    rhs ^= mz(i - 1, t)?;
                }
                if i < n {
                    rhs ^= mz(i + 1, t)?;
                }
                if mz(i, t + 1)? != rhs {
                    bad.push(format!("N={n} i={i} t={t}: M_Z"));
                }
                if mx_definitional(i, t + 1, &map)? != mz_definitional(i, t, &map)? {
                    bad.push(format!("N={n} i={i} t={t}: M_X"));
                }
            }
        }
    }
    Ok(Check::new(
        "M_Z recursion",
        bad.is_empty(),
        match bad.first() {
            None => format!("N=1..={max_n}, boundary and recursion hold"),
            Some(f) => format!("{} violations, first {f}", bad.len()),
        },
    ))
}

/// `N = 8`, `p = 3`: susceptible times and the transported observable.
pub fn lightcone_example() -> Result<Check> {
    let times: Vec<i64> = (0..=8).filter(|&t| mz_closed_form(3, t, 8).unwrap_or(false)).collect();
    let map = TransitionMap::chain(8)?;
    let end = propagate(3, Axis::Z, 9, &map)?;
    let ok = times == [0, 1, 2, 6, 7, 8] && end == PauliWord::single(8, 6, Axis::Z)?;
    Ok(Check::new(
        "light cone N=8 p=3",
        ok,
        format!("Y-susceptible t = {times:?}, T^9 Z_3 T^-9 = {end}"),
    ))
}

/// `Ȳ = Π_t (T^{−t} Y T^{t})^{c_t}`, built by multiplying propagated words.
pub fn accumulated_y(c: &BitVec, map: &TransitionMap) -> Result<PauliWord> {
    let n = map.n_sites();
    let y = PauliWord::all_y(n);
    let mut acc = PauliWord::identity(n);
    for t in c.ones_indices() {
        acc = acc.mul(&map.evolve(&y, -(t as i64))?)?;
    }
    Ok(acc)
}

/// `s = M_Z c` against brute-force anticommutation of each `Z_i` with `Ȳ`.
pub fn pulse_selection(max_n: usize, samples: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0usize;
    let mut total = 0usize;
    for n in 1..=max_n {
        let map = TransitionMap::chain(n)?;
        let mz = crate::symplectic::mz_matrix(n)?;
        for _ in 0..samples {
            let c = BitVec::from_bools(&(0..=n).map(|_| rng.random::<bool>()).collect::<Vec<_>>());
            let s = mz.mul_vec(&c);
            let ybar = accumulated_y(&c, &map)?;
            for i in 1..=n {
                let flips = PauliWord::single(n, i, Axis::Z)?.anticommutes_with(&ybar);
                total += 1;
                if flips != s.get(i - 1) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(Check::new(
        "pulse selection",
        mismatches == 0,
        format!("{mismatches} mismatches over {total} sites, N=1..={max_n}, {samples} patterns each"),
    ))
}

/// Dense unitary of `exp(i θ_k P_k)` applied in order.
pub fn rotations_unitary(n: usize, rots: &[Rotation]) -> Result<DenseUnitary> {
    DenseUnitary::from_action(n, |s| {
        for r in rots {
            s.apply_pauli_rotation(&r.word, r.angle)?;
        }
        Ok(())
    })
}

fn logical_indices(layout: &LayoutMap) -> Vec<usize> {
    let data = layout.data_sites();
    let n = layout.n_sites();
    (0..1usize << data.len())
        .map(|b| {
            data.iter()
                .enumerate()
                .filter(|&(k, _)| b >> k & 1 == 1)
                .fold(0, |acc, (_, &site)| acc | 1 << (n - site))
        })
        .collect()
}

/// Smallest probability, over interlaced basis inputs, that every idle
/// site of `layout` is `|0⟩` after `u`.
pub fn ancilla_preservation(u: &DenseUnitary, layout: &LayoutMap) -> f64 {
    let n = layout.n_sites();
    let idle_mask = layout.idle_sites().iter().fold(0usize, |m, &s| m | 1 << (n - s));
    logical_indices(layout)
        .into_iter()
        .map(|b| {
            u.column(b)
                .iter()
                .enumerate()
                .filter(|(r, _)| r & idle_mask == 0)
                .map(|(_, a)| a.norm_sqr())
                .sum::<f64>()
        })
        .fold(1.0, f64::min)
}

/// `|Σ_b ⟨V b|U b⟩| / count` over interlaced basis inputs `b`: equals 1
/// exactly when `U` and `V` agree there up to one global phase.
pub fn logical_fidelity(u: &DenseUnitary, v: &DenseUnitary, layout: &LayoutMap) -> f64 {
    let idx = logical_indices(layout);
    let sum: Complex64 = idx
        .iter()
        .map(|&b| {
            v.column(b)
                .iter()
                .zip(u.column(b))
                .map(|(x, y)| x.conj() * y)
                .sum::<Complex64>()
        })
        .sum();
    sum.norm() / idx.len() as f64
}

fn gate_list(n: usize, angles: &[f64]) -> Vec<LogicalGate> {
    let mut gates = Vec::new();
    for &alpha in angles {
        for j in 1..=n {
            gates.push(LogicalGate::RZ { j, alpha });
            gates.push(LogicalGate::RX { j, alpha });
            if j < n {
                gates.push(LogicalGate::XXRot { j, alpha });
            }
            for l2 in j..=n {
                gates.push(LogicalGate::XStringRot { alpha, l1: j, l2 });
            }
        }
    }
    for l1 in 1..=n {
        for l2 in l1 + 1..=n {
            gates.push(LogicalGate::ControlledFlip { l1, l2 });
        }
    }
    gates
}

fn gate_schedule(g: &LogicalGate, n: usize, timing: XStringTiming) -> Result<crate::compiler::PulseSchedule> {
    match *g {
        LogicalGate::XStringRot { alpha, l1, l2 } => compile_xstring_with(alpha, l1, l2, n, timing),
        _ => compile_gate(g, n),
    }
}

/// Compiles every gate of the logical set on `n` qubits and checks the
/// dense unitary against the exact rotations, reflection symmetry, and
/// return of idle sites to `|0⟩`.
pub fn gate_compilation(n: usize, angles: &[f64], tol: f64, timing: XStringTiming) -> Result<Vec<Check>> {
    let layout = LayoutMap::new(n)?;
    let big_n = layout.n_sites();
    let mut worst_fid: f64 = 1.0;
    let mut worst_gate = String::new();
    let mut worst_comm: f64 = 0.0;
    let mut worst_keep: f64 = 1.0;
    let gates = gate_list(n, angles);
    for g in &gates {
        let u = schedule_unitary(&gate_schedule(g, n, timing)?)?;
        let target = rotations_unitary(big_n, &gate_rotations(g, n)?)?;
        let fid = global_phase_fidelity(&target, &u);
        if fid < worst_fid {
            worst_fid = fid;
            worst_gate = g.to_string();
        }
        worst_comm = worst_comm.max(u.reflection_commutator_norm());
        worst_keep = worst_keep.min(ancilla_preservation(&u, &layout));
    }
    Ok(vec![
        Check::new(
            format!("gates n={n}: target equivalence"),
            worst_fid >= 1.0 - tol,
            format!(
                "{} gates, min overlap {worst_fid:.12}{}",
                gates.len(),
                if worst_gate.is_empty() { String::new() } else { format!(" ({worst_gate})") }
            ),
        ),
        Check::new(
            format!("gates n={n}: reflection symmetry"),
            worst_comm <= 1e-9,
            format!("max |UR − RU| = {worst_comm:.3e}"),
        ),
        Check::new(
            format!("gates n={n}: idle sites stay |0⟩"),
            worst_keep >= 1.0 - 1e-9,
            format!("min return probability {worst_keep:.15}"),
        ),
    ])
}

/// On interlaced states with ancillas in `|0⟩`, `exp(iα/2 K_{2j})` acts as
/// `exp(iα/2 X_{[j]} X_{[j+1]})`, checked at `n = 2` (with mirror copies),
/// both for the bare rotation and for the compiled schedule.
pub fn interlacing(angles: &[f64], tol: f64) -> Result<Check> {
    let layout = LayoutMap::new(2)?;
    let n = layout.n_sites();
    let map = TransitionMap::chain(n)?;
    let k = map.evolve(&PauliWord::single(n, 2, Axis::X)?, -1)?;
    let mut xx_letters = vec!['I'; n];
    xx_letters[0] = 'X';
    xx_letters[2] = 'X';
    let xx = PauliWord::from_letters(&xx_letters.iter().collect::<String>())?;
    let mut worst: f64 = 1.0;
    for &alpha in angles {
        let rot = |w: &PauliWord| {
            vec![
                Rotation { word: w.clone(), angle: alpha / 2.0 },
                Rotation { word: mirror_word(w), angle: alpha / 2.0 },
            ]
        };
        let uk = rotations_unitary(n, &rot(&k))?;
        let uxx = rotations_unitary(n, &rot(&xx))?;
        let compiled = schedule_unitary(&compile_gate(&LogicalGate::XXRot { j: 1, alpha }, 2)?)?;
        worst = worst
            .min(logical_fidelity(&uk, &uxx, &layout))
            .min(logical_fidelity(&compiled, &uxx, &layout));
    }
    Ok(Check::new(
        "interlacing n=2",
        worst >= 1.0 - tol,
        format!("K_2 = {k}, min logical overlap {worst:.15} over {} angles", angles.len()),
    ))
}

/// Fold-back formula against the open-chain recursion for `t ≤ 2(N+1)`.
pub fn foldback_equivalence(max_n: usize, corrupt: bool) -> Result<Check> {
    let mut mismatches = 0usize;
    let mut total = 0usize;
    for n in 1..=max_n {
        let t_max = 2 * (n + 1);
        for p in 1..=n {
            let rec = boundary_recursion(p, t_max, n)?;
            for (t, (v, _)) in rec.iter().enumerate() {
                let t_eval = if corrupt { t as i64 + 1 } else { t as i64 };
                total += 1;
                if foldback_solution(p, t_eval, n)? != *v {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(Check::new(
        "fold-back vs recursion",
        mismatches == 0,
        format!("{mismatches} mismatches in {total} (p, t) pairs, N=1..={max_n}"),
    ))
}

/// `v_i(t) = 0` when `p − i + t` is odd and `w_i(t) = 0` when it is even,
/// where `(v, w)` is the symplectic vector of `T^t Z_p T^{−t}`.
pub fn checkerboard(max_n: usize) -> Result<Check> {
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let map = TransitionMap::chain(n)?;
        for p in 1..=n {
            let mut w = PauliWord::single(n, p, Axis::Z)?;
            for t in 0..=2 * (n + 1) {
                for i in 1..=n {
                    let even = (p + t + i) % 2 == 0;
                    if (!even && w.z().get(i - 1)) || (even && w.x().get(i - 1)) {
                        bad.push(format!("N={n} p={p} t={t} i={i}"));
                    }
                }
                w = map.conjugate(&w)?;
            }
        }
    }
    Ok(Check::new(
        "checkerboard",
        bad.is_empty(),
        match bad.first() {
            None => format!("N=1..={max_n}, t ≤ 2(N+1)"),
            Some(f) => format!("{} violations, first {f}", bad.len()),
        },
    ))
}

/// The Hermitian letter coefficient of `T^t Z_p T^{−t}` stays `+1` up to
/// `t = N + 1`.
pub fn phase_neutrality(max_n: usize) -> Result<Check> {
    let mut bad = Vec::new();
    for n in 1..=max_n {
        let map = TransitionMap::chain(n)?;
        for p in 1..=n {
            let mut w = PauliWord::single(n, p, Axis::Z)?;
            for t in 0..=n + 1 {
                if w.sign() != Some(1) {
                    bad.push(format!("N={n} p={p} t={t}: {w}"));
                }
                w = map.conjugate(&w)?;
            }
        }
    }
    Ok(Check::new(
        "phase neutrality",
        bad.is_empty(),
        match bad.first() {
            None => format!("N=1..={max_n}, t ≤ N+1"),
            Some(f) => format!("{} violations, first {f}", bad.len()),
        },
    ))
}

fn random_bits<R: Rng>(n: usize, rng: &mut R) -> BitVec {
    BitVec::from_bools(&(0..n).map(|_| rng.random::<bool>()).collect::<Vec<_>>())
}

fn random_amplitude<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.random_range(0.2..1.0), rng.random_range(0.0..std::f64::consts::TAU))
}

/// Runs `trials` basis-state and `trials` two-branch readouts on `n`
/// logical qubits and checks that the decoded set is the truth modulo
/// interchange.
pub fn readout_recovery(
    n: usize,
    trials: usize,
    seed: u64,
    model: MeasurementModel,
    corrupt: bool,
) -> Result<Check> {
    let layout = LayoutMap::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 8 ^ model as u64);
    let mut failures = 0usize;
    let mut first = None;
    for trial in 0..2 * trials {
        let a = random_bits(n, &mut rng);
        let mut b = random_bits(n, &mut rng);
        let state = if trial < trials {
            register_state(&layout, &a, &b)?
        } else {
            let (c1, c2) = (random_amplitude(&mut rng), random_amplitude(&mut rng));
            mirror_pair_state(&layout, &a, &b, c1, c2)?
        };
        if corrupt {
            b.flip(0);
        }
        let (t, _) = run_protocol(&state, &layout, model, &mut rng)?;
        let mut want = vec![
            crate::readout::RegisterPair::new(&a, &b),
            crate::readout::RegisterPair::new(&b, &a),
        ];
        want.sort();
        want.dedup();
        if t.solutions != want {
            failures += 1;
            first.get_or_insert_with(|| format!("trial {trial}: got {:?}, want {:?}", t.solutions, want));
        }
    }
    Ok(Check::new(
        format!("readout n={n} {model}"),
        failures == 0,
        match first {
            None => format!("{} trials recovered", 2 * trials),
            Some(f) => format!("{failures}/{} failed, {f}", 2 * trials),
        },
    ))
}

/// `⟨S_Z(T^t |0⟩)⟩ = N δ(t mod (N+1))` for `t ≤ 3(N+1)`, and length detection.
pub fn length_signal(max_n: usize, tol: f64) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let mut wrong = Vec::new();
    for n in 1..=max_n {
        let mut s: StateVector = init_zero(n)?;
        for t in 0..=3 * (n + 1) {
            let want = if t % (n + 1) == 0 { n as f64 } else { 0.0 };
            worst = worst.max((s.expectation_sz() - want).abs());
            s.apply_t();
        }
        let mut chain = SimulatedChain::new(n)?;
        let found = detect_chain_length(&mut chain, 3 * (n + 1), tol).n_sites();
        if found != Some(n) {
            wrong.push(format!("N={n}: detected {found:?}"));
        }
    }
    Ok(Check::new(
        "length signal",
        worst <= tol && wrong.is_empty(),
        format!("N=1..={max_n}, max signal error {worst:.3e}{}", wrong.first().map(|w| format!(", {w}")).unwrap_or_default()),
    ))
}
