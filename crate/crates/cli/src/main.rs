//! `qca`: compile, simulate and verify pulse schedules for the QCA chain.
//!
//! Exit status is 0 on success, 1 when a verification fails or length
//! detection is inconclusive, and 2 for usage, parse and input errors.
//! Numbers are printed in the shortest form that parses back to the same
//! `f64`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qca_core::compiler::{compile_circuit, LayoutMap, LogicalCircuit, PulseSchedule};
use qca_core::gf2::BitVec;
use qca_core::readout::{
    detect_chain_length, mirror_pair_state, register_state, run_protocol, LengthDetection, SampledChain,
    SimulatedChain,
};
use qca_core::statevec::{MeasurementModel, StateVector};
use qca_core::symplectic::{render_lightcone, Axis};
use qca_core::verify::{run_suite, Suite, VerifyOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Parser)]
#[command(name = "qca", version, about = "Pulse compiler and simulator for a QCA-driven qubit chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower a logical circuit to a pulse schedule and print the resource report.
    Compile {
        #[arg(long = "in")]
        input: PathBuf,
        /// Schedule destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a schedule on a basis state and print the final distribution.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Expected chain length; rejected if the schedule disagrees.
        #[arg(long = "N")]
        n_sites: Option<usize>,
        /// Initial basis state, one bit per site starting at site 1. Defaults to all zeros.
        #[arg(long)]
        init: Option<String>,
        /// Print amplitudes instead of probabilities.
        #[arg(long)]
        amplitudes: bool,
        /// Entries with probability at or below this are omitted.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a verification suite and print a pass/fail table.
    Verify {
        #[arg(value_parser = parse_suites)]
        suite: SuiteSel,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Run against deliberately broken inputs; every suite should then fail.
        #[arg(long)]
        corrupt: bool,
    },
    /// Render the light cone of a single-site Pauli.
    Lightcone {
        p: usize,
        #[arg(value_parser = parse_axis)]
        axis: Axis,
        #[arg(long = "N")]
        n_sites: usize,
        #[arg(long)]
        t_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prepare registers on the interlaced chain, run the readout and dump the transcript.
    ReadoutDemo {
        #[arg(long = "n")]
        n_logical: usize,
        /// Bits of the left register `r`, logical qubit 1 first.
        #[arg(long)]
        r: String,
        /// Bits of the mirrored register; defaults to `r`.
        #[arg(long)]
        r_bar: Option<String>,
        /// Prepare the equal superposition of (r, r̄) and (r̄, r) instead of a basis state.
        #[arg(long)]
        superpose: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_model, default_value = "coherent")]
        model: MeasurementModel,
    },
    /// Recover the length of a hidden chain from the S_Z revival.
    DetectLength {
        #[arg(long = "N")]
        hidden: usize,
        #[arg(long)]
        t_max: usize,
        /// Measurement shots per time step; 0 uses exact expectation values.
        #[arg(long, default_value_t = 0)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Revival tolerance; defaults to 1e-9 exact or 0.5 sampled.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Svg,
}

#[derive(Debug, Clone)]
struct SuiteSel(Vec<Suite>);

fn parse_suites(s: &str) -> Result<SuiteSel, String> {
    if s == "all" {
        return Ok(SuiteSel(Suite::ALL.to_vec()));
    }
    s.parse().map(|x| SuiteSel(vec![x])).map_err(|_| {
        format!("expected one of reversal, mz, gates, appendix, readout, all; got {s:?}")
    })
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: qca_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<MeasurementModel, String> {
    s.parse().map_err(|e: qca_core::Error| e.to_string())
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn bits(text: &str, what: &str) -> anyhow::Result<BitVec> {
    BitVec::parse(text).with_context(|| format!("parsing {what}"))
}

fn cmd_compile(input: &PathBuf, out: Option<&PathBuf>) -> anyhow::Result<Status> {
    let circuit = LogicalCircuit::parse(&read(input)?).with_context(|| format!("in {}", input.display()))?;
    let (schedule, report) = compile_circuit(&circuit)?;
    match out {
        Some(path) => {
            fs::write(path, schedule.to_text()).with_context(|| format!("writing {}", path.display()))?;
            println!("{report}");
        }
        None => {
            print!("{}", schedule.to_text());
            eprintln!("{report}");
        }
    }
    Ok(Status::Ok)
}

fn cmd_simulate(
    input: &PathBuf,
    n_sites: Option<usize>,
    init: Option<&str>,
    amplitudes: bool,
    tol: f64,
) -> anyhow::Result<Status> {
    let schedule = PulseSchedule::parse(&read(input)?).with_context(|| format!("in {}", input.display()))?;
    let n = schedule.n_sites();
    if let Some(expected) = n_sites {
        if expected != n {
            bail!("schedule is for N = {n} but --N {expected} was given");
        }
    }
    let index = match init {
        None => 0,
        Some(text) => {
            let b = bits(text, "--init")?;
            if b.len() != n {
                bail!("--init has {} bits but the chain has {n} sites", b.len());
            }
            b.iter().fold(0usize, |acc, bit| acc << 1 | usize::from(bit))
        }
    };
    let mut state = StateVector::basis(n, index)?;
    state.apply_schedule(&schedule)?;
    println!("# N={n} steps={} pulses={}", schedule.t_steps(), schedule.pulse_count());
    for (i, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p <= tol {
            continue;
        }
        let label: String = (0..n).map(|k| if i >> (n - 1 - k) & 1 == 1 { '1' } else { '0' }).collect();
        if amplitudes {
            println!("{label} {:?} {:?}", a.re, a.im);
        } else {
            println!("{label} {p:?}");
        }
    }
    Ok(Status::Ok)
}

fn cmd_verify(suites: &[Suite], opts: &VerifyOptions) -> anyhow::Result<Status> {
    let mut all = true;
    for &suite in suites {
        let report = run_suite(suite, opts)?;
        println!("== {suite}");
        print!("{}", report.to_table());
        all &= report.passed();
    }
    Ok(if all { Status::Ok } else { Status::Failed })
}

fn cmd_readout_demo(
    n: usize,
    r: &str,
    r_bar: Option<&str>,
    superpose: bool,
    seed: u64,
    model: MeasurementModel,
) -> anyhow::Result<Status> {
    let layout = LayoutMap::new(n)?;
    let r = bits(r, "--r")?;
    let r_bar = bits(r_bar.unwrap_or(&r.to_string()), "--r-bar")?;
    let state = if superpose {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        mirror_pair_state(&layout, &r, &r_bar, h, h)?
    } else {
        register_state(&layout, &r, &r_bar)?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (transcript, _) = run_protocol(&state, &layout, model, &mut rng)?;
    println!("{}", transcript.to_json());
    Ok(Status::Ok)
}

fn cmd_detect_length(hidden: usize, t_max: usize, shots: usize, seed: u64, tol: Option<f64>) -> anyhow::Result<Status> {
    let result = if shots == 0 {
        detect_chain_length(&mut SimulatedChain::new(hidden)?, t_max, tol.unwrap_or(1e-9))
    } else {
        detect_chain_length(&mut SampledChain::new(hidden, shots, seed)?, t_max, tol.unwrap_or(0.5))
    };
    for (t, v) in result.signal().iter().enumerate() {
        println!("{t} {v:?}");
    }
    Ok(match result {
        LengthDetection::Detected { n_sites, .. } => {
            println!("detected N = {n_sites}");
            Status::Ok
        }
        LengthDetection::Inconclusive { t_max, .. } => {
            println!("inconclusive: no revival up to t = {t_max}");
            Status::Failed
        }
    })
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Compile { input, out } => cmd_compile(&input, out.as_ref()),
        Command::Simulate {
            input,
            n_sites,
            init,
            amplitudes,
            tol,
        } => cmd_simulate(&input, n_sites, init.as_deref(), amplitudes, tol),
        Command::Verify {
            suite,
            max_n,
            tol,
            seed,
            trials,
            corrupt,
        } => cmd_verify(
            &suite.0,
            &VerifyOptions {
                max_n,
                tol,
                seed,
                trials,
                corrupt,
            },
        ),
        Command::Lightcone {
            p,
            axis,
            n_sites,
            t_max,
            format,
        } => {
            let cone = render_lightcone(p, axis, n_sites, t_max)?;
            print!(
                "{}",
                match format {
                    Format::Text => cone.to_text(),
                    Format::Svg => cone.to_svg(),
                }
            );
            Ok(Status::Ok)
        }
        Command::ReadoutDemo {
            n_logical,
            r,
            r_bar,
            superpose,
            seed,
            model,
        } => cmd_readout_demo(n_logical, &r, r_bar.as_deref(), superpose, seed, model),
        Command::DetectLength {
            hidden,
            t_max,
            shots,
            seed,
            tol,
        } => cmd_detect_length(hidden, t_max, shots, seed, tol),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
