//! Python bindings: spec construction, SLEM, weights, verification, and
//! simulation. Structured reports cross the boundary as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use petal_core::{
    assemble_matrix, audit_paper_formulas, build_certificate_nearest, build_graph, impulse_x0,
    metropolis_hastings_weights, optimal_weights, optimality_oracle, run_consensus,
    simulate::asymptotic_rate,
    slackness_check, slem_full, slem_quotient,
    spectral::quotient_matrices,
    tables::{COMPLETE_CORE_TABLE, SINGLE_HUB_TABLE},
    CoreKind, PetalError, PetalSpec,
};

fn err(e: PetalError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_core(core: &str) -> PyResult<CoreKind> {
    match core {
        "hub" | "single_hub" => Ok(CoreKind::SingleHub),
        "complete" | "complete_core" | "ccs" => Ok(CoreKind::CompleteCore),
        other => Err(PyValueError::new_err(format!(
            "unknown core kind '{other}' (hub|complete)"
        ))),
    }
}

#[pyclass(name = "PetalSpec", frozen)]
struct PySpec {
    inner: PetalSpec,
}

#[pymethods]
impl PySpec {
    /// Path-bundle network: n leaves of k parallel length-m paths.
    #[staticmethod]
    fn path_bundle(core: &str, n: usize, m: usize, k: usize) -> PyResult<Self> {
        let inner = PetalSpec::path_bundle(parse_core(core)?, n, m, k).map_err(err)?;
        Ok(PySpec { inner })
    }

    /// Any leaf kind, from the JSON spec schema.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: PetalSpec =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        inner.validate().map_err(err)?;
        Ok(PySpec { inner })
    }

    fn describe(&self) -> String {
        self.inner.describe()
    }

    fn __repr__(&self) -> String {
        format!("PetalSpec({})", self.inner.describe())
    }

    fn node_count(&self) -> PyResult<usize> {
        Ok(build_graph(&self.inner).map_err(err)?.node_count)
    }

    fn edge_count(&self) -> PyResult<usize> {
        Ok(build_graph(&self.inner).map_err(err)?.edges.len())
    }

    /// Class weights as floats (core class first on complete cores).
    fn optimal_weights(&self) -> PyResult<Vec<f64>> {
        Ok(optimal_weights(&self.inner).map_err(err)?.to_f64_vec())
    }

    fn metropolis_hastings_weights(&self) -> PyResult<Vec<f64>> {
        let g = build_graph(&self.inner).map_err(err)?;
        Ok(metropolis_hastings_weights(&g).map_err(err)?.to_f64_vec())
    }

    /// SLEM via the stratified quotients.
    fn slem(&self) -> PyResult<f64> {
        let w = optimal_weights(&self.inner).map_err(err)?;
        let pair = quotient_matrices(&self.inner, &w).map_err(err)?;
        Ok(slem_quotient(&pair).map_err(err)?.slem)
    }

    /// SLEM via the full explicit matrix (cross-check route).
    fn slem_full(&self) -> PyResult<f64> {
        let g = build_graph(&self.inner).map_err(err)?;
        let w = assemble_matrix(&g, &optimal_weights(&self.inner).map_err(err)?).map_err(err)?;
        Ok(slem_full(&w).map_err(err)?.slem)
    }

    /// Slackness certificate + derivative-free oracle, as a JSON string.
    fn verify(&self, oracle_budget: usize) -> PyResult<String> {
        let weights = optimal_weights(&self.inner).map_err(err)?;
        let pair = quotient_matrices(&self.inner, &weights).map_err(err)?;
        let s = slem_quotient(&pair).map_err(err)?.slem;
        let cert = build_certificate_nearest(&pair, s).map_err(err)?;
        let slack = slackness_check(&cert);
        let oracle = optimality_oracle(&self.inner, oracle_budget).map_err(err)?;
        let pass = slack.pass && oracle.improvement <= 1e-4;
        Ok(serde_json::json!({
            "spec": self.inner.describe(),
            "slem": s,
            "certificate": cert,
            "slackness": slack,
            "oracle": oracle,
            "pass": pass,
        })
        .to_string())
    }

    /// Normalized distances of a consensus run from the impulse start.
    fn simulate(&self, steps: usize, scheme: &str) -> PyResult<Vec<f64>> {
        let g = build_graph(&self.inner).map_err(err)?;
        let assignment = match scheme {
            "optimal" => optimal_weights(&self.inner).map_err(err)?,
            "mh" | "metropolis_hastings" => metropolis_hastings_weights(&g).map_err(err)?,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown scheme '{other}' (optimal|mh)"
                )))
            }
        };
        let w = assemble_matrix(&g, &assignment).map_err(err)?;
        let traj = run_consensus(&w, &impulse_x0(&g), steps, scheme, "impulse").map_err(err)?;
        Ok(traj.distances)
    }

    /// Asymptotic per-step contraction from a simulation.
    fn asymptotic_rate(&self, steps: usize, window: usize) -> PyResult<f64> {
        let g = build_graph(&self.inner).map_err(err)?;
        let w = assemble_matrix(&g, &optimal_weights(&self.inner).map_err(err)?).map_err(err)?;
        let traj = run_consensus(&w, &impulse_x0(&g), steps, "optimal", "impulse").map_err(err)?;
        asymptotic_rate(&traj, window).map_err(err)
    }
}

/// Published (n, m, k, slem) reference cells for one table.
#[pyfunction]
fn table(core: &str) -> PyResult<Vec<(usize, usize, usize, f64)>> {
    Ok(match parse_core(core)? {
        CoreKind::SingleHub => SINGLE_HUB_TABLE.to_vec(),
        CoreKind::CompleteCore => COMPLETE_CORE_TABLE.to_vec(),
    })
}

/// Closed-form audit over every table instance, as a JSON string.
#[pyfunction]
fn audit() -> PyResult<String> {
    let mut specs = Vec::new();
    for (core, table) in [
        (CoreKind::SingleHub, &SINGLE_HUB_TABLE),
        (CoreKind::CompleteCore, &COMPLETE_CORE_TABLE),
    ] {
        for &(n, m, k, _) in table.iter() {
            specs.push(PetalSpec::path_bundle(core, n, m, k).map_err(err)?);
        }
    }
    let report = audit_paper_formulas(&specs).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn petal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add("SCHEMA_VERSION", petal_core::SCHEMA_VERSION)?;
    Ok(())
}
