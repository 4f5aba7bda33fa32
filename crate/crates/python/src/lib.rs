//! Python bindings for `qca-core`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qca_core::compiler::{compile_circuit, LogicalCircuit, PulseSchedule};
use qca_core::gf2::BitVec;
use qca_core::readout::{detect_chain_length, mirror_pair_state, register_state, run_protocol, SimulatedChain};
use qca_core::statevec::{MeasurementModel, StateVector};
use qca_core::symplectic::{self, render_lightcone, Axis, TransitionMap};
use qca_core::verify::{run_suite, Suite, VerifyOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: qca_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn axis(s: &str) -> PyResult<Axis> {
    s.parse().map_err(err)
}

/// Pauli word with phase, e.g. `"+XZI"` or `"-iYY"`.
#[pyclass(name = "PauliWord", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPauliWord(symplectic::PauliWord);

#[pymethods]
impl PyPauliWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn single(n_sites: usize, site: usize, axis_name: &str) -> PyResult<Self> {
        symplectic::PauliWord::single(n_sites, site, axis(axis_name)?).map(Self).map_err(err)
    }

    #[getter]
    fn n_sites(&self) -> usize {
        self.0.n_sites()
    }

    /// Letters without the phase.
    fn letters(&self) -> String {
        self.0.letters()
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(err)
    }

    fn anticommutes_with(&self, other: &Self) -> bool {
        self.0.anticommutes_with(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliWord('{}')", self.0)
    }
}

/// The chain automaton `T` on `n_sites` sites.
#[pyclass(name = "Chain", frozen)]
struct PyChain(TransitionMap);

#[pymethods]
impl PyChain {
    #[new]
    fn new(n_sites: usize) -> PyResult<Self> {
        TransitionMap::chain(n_sites).map(Self).map_err(err)
    }

    #[getter]
    fn n_sites(&self) -> usize {
        self.0.n_sites()
    }

    /// `T^t w T^{-t}`; negative `t` runs backwards.
    fn evolve(&self, word: &PyPauliWord, t: i64) -> PyResult<PyPauliWord> {
        self.0.evolve(&word.0, t).map(PyPauliWord).map_err(err)
    }

    fn bit_reversal_holds(&self) -> PyResult<bool> {
        symplectic::verify_bit_reversal_with(&self.0).map(|r| r.ok).map_err(err)
    }

    /// Rows of the pulse selection matrix as lists of 0/1.
    fn mz_matrix(&self) -> PyResult<Vec<Vec<u8>>> {
        symplectic::mz_matrix(self.0.n_sites()).map(|m| m.to_u8_rows()).map_err(err)
    }
}

#[pyclass(name = "PulseSchedule", frozen)]
struct PySchedule(PulseSchedule);

#[pymethods]
impl PySchedule {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        PulseSchedule::parse(text).map(Self).map_err(err)
    }

    #[getter]
    fn n_sites(&self) -> usize {
        self.0.n_sites()
    }

    #[getter]
    fn t_steps(&self) -> usize {
        self.0.t_steps()
    }

    #[getter]
    fn pulse_count(&self) -> usize {
        self.0.pulse_count()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Compiles circuit text; returns the schedule and the resource report
/// as a dict.
#[pyfunction]
fn compile(py: Python<'_>, circuit: &str) -> PyResult<(PySchedule, Py<PyAny>)> {
    let c = LogicalCircuit::parse(circuit).map_err(err)?;
    let (schedule, report) = compile_circuit(&c).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("n_logical", report.n_logical)?;
    dict.set_item("chain_length", report.chain_length)?;
    dict.set_item("t_steps", report.t_steps)?;
    dict.set_item("cycle_length", report.cycle_length())?;
    dict.set_item("clock_cycles", report.clock_cycles.to_string())?;
    Ok((PySchedule(schedule), dict.into_any().unbind()))
}

#[pyclass(name = "StateVector")]
struct PyState(StateVector);

#[pymethods]
impl PyState {
    /// Basis state `|index⟩`; site 1 is the most significant bit.
    #[new]
    #[pyo3(signature = (n_qubits, index = 0))]
    fn new(n_qubits: usize, index: usize) -> PyResult<Self> {
        StateVector::basis(n_qubits, index).map(Self).map_err(err)
    }

    fn apply_t(&mut self) {
        self.0.apply_t();
    }

    fn apply_pulse(&mut self, axis_name: &str, alpha: f64) -> PyResult<()> {
        self.0.apply_pulse(axis(axis_name)?, alpha);
        Ok(())
    }

    fn apply_schedule(&mut self, schedule: &PySchedule) -> PyResult<()> {
        self.0.apply_schedule(&schedule.0).map_err(err)
    }

    fn probabilities(&self) -> Vec<f64> {
        self.0.probabilities()
    }

    fn amplitudes(&self) -> Vec<(f64, f64)> {
        self.0.amplitudes().iter().map(|a| (a.re, a.im)).collect()
    }

    fn expectation_sz(&self) -> f64 {
        self.0.expectation_sz()
    }
}

/// Runs the readout on registers `(r, r_bar)` and returns the transcript
/// as JSON. With `superpose`, prepares the equal mirror superposition.
#[pyfunction]
#[pyo3(signature = (n_logical, r, r_bar, superpose = false, seed = 0, model = "coherent"))]
fn readout(n_logical: usize, r: &str, r_bar: &str, superpose: bool, seed: u64, model: &str) -> PyResult<String> {
    let layout = qca_core::compiler::LayoutMap::new(n_logical).map_err(err)?;
    let (a, b) = (BitVec::parse(r).map_err(err)?, BitVec::parse(r_bar).map_err(err)?);
    let model: MeasurementModel = model.parse().map_err(err)?;
    let state = if superpose {
        let h = num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        mirror_pair_state(&layout, &a, &b, h, h)
    } else {
        register_state(&layout, &a, &b)
    }
    .map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t, _) = run_protocol(&state, &layout, model, &mut rng).map_err(err)?;
    Ok(t.to_json())
}

/// Detected chain length, or `None` if no revival occurs by `t_max`.
#[pyfunction]
#[pyo3(signature = (n_sites, t_max, tol = 1e-9))]
fn detect_length(n_sites: usize, t_max: usize, tol: f64) -> PyResult<Option<usize>> {
    let mut chain = SimulatedChain::new(n_sites).map_err(err)?;
    Ok(detect_chain_length(&mut chain, t_max, tol).n_sites())
}

#[pyfunction]
#[pyo3(signature = (p, axis_name, n_sites, t_max, svg = false))]
fn lightcone(p: usize, axis_name: &str, n_sites: usize, t_max: usize, svg: bool) -> PyResult<String> {
    let cone = render_lightcone(p, axis(axis_name)?, n_sites, t_max).map_err(err)?;
    Ok(if svg { cone.to_svg() } else { cone.to_text() })
}

/// Runs a verification suite; returns `(passed, table)`.
#[pyfunction]
#[pyo3(signature = (suite, max_n = 16, seed = 0, corrupt = false))]
fn verify(py: Python<'_>, suite: &str, max_n: usize, seed: u64, corrupt: bool) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let opts = VerifyOptions {
        max_n,
        seed,
        corrupt,
        ..VerifyOptions::default()
    };
    let report = py.detach(|| run_suite(suite, &opts)).map_err(err)?;
    Ok((report.passed(), report.to_table()))
}

#[pymodule]
fn qca_chain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauliWord>()?;
    m.add_class::<PyChain>()?;
    m.add_class::<PySchedule>()?;
    m.add_class::<PyState>()?;
    m.add_function(wrap_pyfunction!(compile, m)?)?;
    m.add_function(wrap_pyfunction!(readout, m)?)?;
    m.add_function(wrap_pyfunction!(detect_length, m)?)?;
    m.add_function(wrap_pyfunction!(lightcone, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
