//! Python bindings: `import cohere`.
//!
//! States are `DensityOperator` objects; gates, channels and bases are given
//! by the same strings the `cohere` CLI accepts. Structured results come back
//! as plain dicts with the CLI's JSON layout.

use num_complex::Complex64;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde_json::{json, Value};

use cohere_core::channels::channel_from_str;
use cohere_core::correlations::{
    discord_fixed_basis, one_way_deficit, qi_relative_entropy, verify_coherence_chain, BipartiteState, IncoherentOp,
};
use cohere_core::error::Error;
use cohere_core::gates::gate_from_str;
use cohere_core::io::{density_to_json, parse_state, preset_state, resolve_basis};
use cohere_core::linalg::ComplexMatrix;
use cohere_core::measures;
use cohere_core::powers::{self, MaxCoherentSet};
use cohere_core::states::{self as core_states, PhaseMode, ReferenceBasis};
use cohere_core::verify::{self, SuiteConfig};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnknownPreset(_) | Error::UnknownSuite(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn serialize<T: serde::Serialize>(x: &T) -> PyResult<Value> {
    serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn mode(name: &str) -> PyResult<PhaseMode> {
    name.parse().map_err(to_py)
}

/// Density operator with subsystem dimensions.
#[pyclass(name = "DensityOperator", module = "cohere", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDensity {
    inner: core_states::DensityOperator,
}

#[pymethods]
impl PyDensity {
    /// `matrix` is a square nested list of complex numbers; `dims` defaults
    /// to a single system.
    #[new]
    #[pyo3(signature = (matrix, dims = None))]
    fn new(matrix: Vec<Vec<Complex64>>, dims: Option<Vec<usize>>) -> PyResult<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let m = ComplexMatrix::new(n, n, matrix.into_iter().flatten().collect()).map_err(to_py)?;
        let inner = core_states::DensityOperator::new(m, dims.unwrap_or_else(|| vec![n])).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// `plus`, `minus`, `zero`, `one`, `bell`, `maxcoh:d` or `maxmixed:d`.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        Ok(Self { inner: preset_state(name).map_err(to_py)?.density() })
    }

    /// Either state file format (density matrix or pure amplitudes).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_state(text).map_err(to_py)?.density() })
    }

    #[staticmethod]
    #[pyo3(signature = (d, seed))]
    fn random(d: usize, seed: u64) -> Self {
        Self { inner: core_states::random_density(d, seed) }
    }

    fn to_json(&self) -> String {
        density_to_json(&self.inner)
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let m = self.inner.matrix();
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.inner.eigenvalues().map_err(to_py)
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    fn tensor(&self, other: &PyDensity) -> PyResult<Self> {
        Ok(Self { inner: self.inner.tensor(&other.inner).map_err(to_py)? })
    }

    /// Partial trace keeping the listed subsystems.
    fn reduce(&self, keep: Vec<usize>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.reduce(&keep).map_err(to_py)? })
    }

    /// `rho -> U rho U†` for a gate string such as `H` or `CNOT`.
    fn evolve(&self, gate: &str) -> PyResult<Self> {
        let u = gate_from_str(gate).map_err(to_py)?;
        Ok(Self { inner: self.inner.evolve(&u).map_err(to_py)? })
    }

    /// Output of a channel string such as `bit_flip:0.25`.
    fn apply_channel(&self, channel: &str) -> PyResult<Self> {
        let e = channel_from_str(channel).map_err(to_py)?;
        Ok(Self { inner: e.apply(&self.inner).map_err(to_py)? })
    }

    fn __repr__(&self) -> String {
        format!("DensityOperator(dims={:?})", self.inner.dims())
    }
}

fn basis_for(spec: &str, d: usize) -> PyResult<ReferenceBasis> {
    resolve_basis(spec, d).map_err(to_py)
}

#[pyfunction]
fn von_neumann_entropy(rho: &PyDensity) -> PyResult<f64> {
    Ok(measures::von_neumann_entropy(&rho.inner).map_err(to_py)?.bits())
}

/// `S(rho‖sigma)` in bits; `inf` outside the support of `sigma`.
#[pyfunction]
fn relative_entropy(rho: &PyDensity, sigma: &PyDensity) -> PyResult<f64> {
    Ok(measures::relative_entropy(&rho.inner, &sigma.inner).map_err(to_py)?.bits())
}

#[pyfunction]
#[pyo3(signature = (rho, basis = "computational"))]
fn coherence_rel_entropy(rho: &PyDensity, basis: &str) -> PyResult<f64> {
    let b = basis_for(basis, rho.inner.dim())?;
    Ok(measures::coherence_rel_entropy(&rho.inner, &b).map_err(to_py)?.bits())
}

#[pyfunction]
#[pyo3(signature = (rho, basis = "computational"))]
fn coherence_l1(rho: &PyDensity, basis: &str) -> PyResult<f64> {
    let b = basis_for(basis, rho.inner.dim())?;
    measures::coherence_l1(&rho.inner, &b).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (gate, basis = "computational", input_basis = None))]
fn cohering_power<'py>(
    py: Python<'py>,
    gate: &str,
    basis: &str,
    input_basis: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let u = gate_from_str(gate).map_err(to_py)?;
    let out = basis_for(basis, u.dim())?;
    let r = match input_basis {
        Some(b) => powers::cohering_power_between(&u, &basis_for(b, u.dim())?, &out),
        None => powers::cohering_power(&u, &out),
    }
    .map_err(to_py)?;
    json_to_py(py, &serialize(&r)?)
}

#[pyfunction]
#[pyo3(signature = (channel, mode = "free", basis = "computational"))]
fn decohering_power<'py>(py: Python<'py>, channel: &str, mode: &str, basis: &str) -> PyResult<Bound<'py, PyAny>> {
    let e = channel_from_str(channel).map_err(to_py)?;
    let b = basis_for(basis, e.dim())?;
    let set = MaxCoherentSet::new(self::mode(mode)?, e.dim());
    let r = powers::decohering_power(&e, &set, &b).map_err(to_py)?;
    json_to_py(py, &serialize(&r)?)
}

#[pyfunction]
#[pyo3(signature = (gate, ancilla_dim = 2, mode = "canonical"))]
fn sup_cohering_power<'py>(
    py: Python<'py>,
    gate: &str,
    ancilla_dim: usize,
    mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let u = gate_from_str(gate).map_err(to_py)?;
    if ancilla_dim == 0 || u.dim() % ancilla_dim != 0 {
        return Err(PyValueError::new_err(format!(
            "gate of dimension {} does not split with ancilla dimension {ancilla_dim}",
            u.dim()
        )));
    }
    let set = MaxCoherentSet::new(self::mode(mode)?, u.dim() / ancilla_dim);
    let r = powers::sup_cohering_power(&u, &set, ancilla_dim).map_err(to_py)?;
    json_to_py(py, &serialize(&r)?)
}

fn bipartite(rho: &PyDensity, basis_a: &str, basis_b: &str) -> PyResult<BipartiteState> {
    let dims = rho.inner.dims();
    if dims.len() != 2 {
        return Err(PyValueError::new_err(format!("state has subsystem dimensions {dims:?}, need two")));
    }
    BipartiteState::new(rho.inner.clone(), basis_for(basis_a, dims[0])?, basis_for(basis_b, dims[1])?).map_err(to_py)
}

/// Relative entropy of quantum-incoherent correlations, `S(Δ_A rho) − S(rho)`.
#[pyfunction]
#[pyo3(signature = (rho, basis_a = "computational", basis_b = "computational"))]
fn qi_relative_entropy_of(rho: &PyDensity, basis_a: &str, basis_b: &str) -> PyResult<f64> {
    Ok(qi_relative_entropy(&bipartite(rho, basis_a, basis_b)?).map_err(to_py)?.bits())
}

#[pyfunction]
#[pyo3(signature = (rho, basis_a = "computational", basis_b = "computational"))]
fn discord(rho: &PyDensity, basis_a: &str, basis_b: &str) -> PyResult<f64> {
    Ok(discord_fixed_basis(&bipartite(rho, basis_a, basis_b)?).map_err(to_py)?.bits())
}

/// One-way deficit of a state whose first subsystem is a qubit.
#[pyfunction]
fn deficit<'py>(py: Python<'py>, rho: &PyDensity) -> PyResult<Bound<'py, PyAny>> {
    let d = one_way_deficit(&bipartite(rho, "computational", "computational")?).map_err(to_py)?;
    let v = json!({ "value": d.value, "theta": d.theta, "phi": d.phi, "evaluations": d.evaluations });
    json_to_py(py, &v)
}

/// Coherence chain of `rho` through `CNOT` or `GCNOT:d` with a `|0>` ancilla.
#[pyfunction]
#[pyo3(signature = (rho, op = "CNOT"))]
fn coherence_chain<'py>(py: Python<'py>, rho: &PyDensity, op: &str) -> PyResult<Bound<'py, PyAny>> {
    let op = IncoherentOp::from_spec(op).map_err(to_py)?;
    let r = verify_coherence_chain(&rho.inner, op).map_err(to_py)?;
    let mut v = serialize(&r)?;
    v["holds"] = json!(r.holds(1e-9));
    json_to_py(py, &v)
}

/// Runs a verification suite and returns the report dict.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = 0, mode = "canonical"))]
fn run_suite<'py>(py: Python<'py>, suite: &str, seed: u64, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let cfg = SuiteConfig { seed, mode: self::mode(mode)? };
    let report = py.detach(|| verify::run_suite(suite, &cfg)).map_err(to_py)?;
    json_to_py(py, &serialize(&report)?)
}

#[pymodule]
fn cohere(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensity>()?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(coherence_rel_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(coherence_l1, m)?)?;
    m.add_function(wrap_pyfunction!(cohering_power, m)?)?;
    m.add_function(wrap_pyfunction!(decohering_power, m)?)?;
    m.add_function(wrap_pyfunction!(sup_cohering_power, m)?)?;
    m.add("qi_relative_entropy", wrap_pyfunction!(qi_relative_entropy_of, m)?)?;
    m.add_function(wrap_pyfunction!(discord, m)?)?;
    m.add_function(wrap_pyfunction!(deficit, m)?)?;
    m.add_function(wrap_pyfunction!(coherence_chain, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("SUITES", verify::SUITES.to_vec())?;
    Ok(())
}
