//! Python bindings for the Hopf-Galois counting library.
//!
//! Groups are exposed as the `Group` class; the counting and verification
//! entry points return plain dicts and lists.

use std::path::PathBuf;

use hg_core::automorphisms::automorphism_group;
use hg_core::catalog::{build, census, parse_group_file, serialize};
use hg_core::group::{derived_series, GroupTable};
use hg_core::holomorph::build_hol;
use hg_core::regular::{classify_regulars, count_e as core_count_e, regular_subgroups_iso, SearchConfig};
use hg_core::verify::{cfsg_desk_checks, run_scenarios, Scenario, SimpleLabel, VerifyContext};
use hg_core::HgError;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

create_exception!(hopf_galois, HopfGaloisError, PyException);

fn err(e: HgError) -> PyErr {
    HopfGaloisError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(m) => {
            let dict = PyDict::new(py);
            for (k, x) in m {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialized<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| HopfGaloisError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn config(budget: Option<u64>, jobs: Option<usize>) -> SearchConfig {
    let mut cfg = SearchConfig::default();
    if let Some(b) = budget {
        cfg.budget = b;
    }
    cfg.jobs = jobs;
    cfg
}

/// A finite group held as a Cayley table with identity at index 0.
#[pyclass(name = "Group", module = "hopf_galois", frozen)]
struct PyGroup {
    inner: GroupTable,
}

#[pymethods]
impl PyGroup {
    /// Builds a group from a spec such as `"sl2(5)"` or `"direct(alt(5),cyclic(2))"`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup { inner: build(spec).map_err(err)? })
    }

    /// Parses a `gtab` or `pgen` file body.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGroup { inner: parse_group_file(text).map_err(err)? })
    }

    /// Builds a group from a multiplication table with identity at row 0.
    #[staticmethod]
    #[pyo3(signature = (rows, label = "table"))]
    fn from_table(rows: Vec<Vec<usize>>, label: &str) -> PyResult<Self> {
        Ok(PyGroup { inner: GroupTable::build_table(&rows, label).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.inner.order();
        if a >= n || b >= n {
            return Err(HopfGaloisError::new_err(format!("element out of range for order {n}")));
        }
        Ok(self.inner.mul(a, b))
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn element_orders(&self) -> Vec<u32> {
        self.inner.elt_orders().to_vec()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_perfect(&self) -> bool {
        derived_series(&self.inner).is_perfect()
    }

    fn is_solvable(&self) -> bool {
        derived_series(&self.inner).is_solvable()
    }

    fn is_isomorphic(&self, other: &PyGroup) -> bool {
        hg_core::group::are_isomorphic(&self.inner, &other.inner).is_some()
    }

    fn aut_order(&self) -> PyResult<usize> {
        Ok(automorphism_group(&self.inner).map_err(err)?.len())
    }

    fn hol_order(&self) -> PyResult<usize> {
        Ok(build_hol(&self.inner).map_err(err)?.order())
    }

    /// The group in `gtab` format.
    fn serialize(&self) -> String {
        serialize(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.label(), self.inner.order())
    }
}

/// `e(G, N)` with the supporting counts.
#[pyfunction]
#[pyo3(signature = (g, n, budget = None, jobs = None))]
fn count_e<'py>(py: Python<'py>, g: &PyGroup, n: &PyGroup, budget: Option<u64>, jobs: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let cfg = config(budget, jobs);
    let r = py.detach(|| core_count_e(&g.inner, &n.inner, &cfg)).map_err(err)?;
    serialized(py, &r)
}

/// Regular subgroups of `Hol(N)` isomorphic to `G`, each as a list of
/// `(eta, alpha)` index pairs.
#[pyfunction]
#[pyo3(signature = (g, n, budget = None, jobs = None))]
fn regular_subgroups(g: &PyGroup, n: &PyGroup, py: Python<'_>, budget: Option<u64>, jobs: Option<usize>) -> PyResult<Vec<Vec<(usize, usize)>>> {
    let cfg = config(budget, jobs);
    let en = py.detach(|| regular_subgroups_iso(&g.inner, &n.inner, &cfg)).map_err(err)?;
    Ok(en
        .subgroups
        .iter()
        .map(|s| s.elements.iter().map(|h| (h.eta as usize, h.alpha as usize)).collect())
        .collect())
}

/// Regular subgroups of `Hol(N)` counted by isomorphism type over the census
/// of order `|N|`.
#[pyfunction]
#[pyo3(signature = (n, census_dir = None, budget = None, jobs = None))]
fn classify<'py>(
    py: Python<'py>,
    n: &PyGroup,
    census_dir: Option<PathBuf>,
    budget: Option<u64>,
    jobs: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = config(budget, jobs);
    let c = py
        .detach(|| {
            let tier = census(n.inner.order(), census_dir.as_deref())?;
            cfg.install(|| classify_regulars(&n.inner, &tier, &cfg))
        })
        .map_err(err)?;
    serialized(py, &c)
}

/// Runs verification scenarios (`"all"` or a comma list such as `"15,60"`)
/// and returns one verdict dict each.
#[pyfunction]
#[pyo3(signature = (scenario = "all", census_dir = None, budget = None, jobs = None))]
fn verify<'py>(
    py: Python<'py>,
    scenario: &str,
    census_dir: Option<PathBuf>,
    budget: Option<u64>,
    jobs: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let scenarios = Scenario::parse_list(scenario).map_err(err)?;
    let ctx = VerifyContext {
        cfg: config(budget, jobs),
        census_dir,
    };
    let verdicts = py.detach(|| run_scenarios(&scenarios, &ctx)).map_err(err)?;
    serialized(py, &verdicts)
}

/// Order of the Schur multiplier of a finite simple group given by label.
#[pyfunction]
fn schur(label: &str) -> PyResult<u64> {
    Ok(SimpleLabel::parse(label).map_err(err)?.multiplier())
}

/// Structural checks on a non-abelian simple group.
#[pyfunction]
#[pyo3(signature = (g, label = None))]
fn cfsg<'py>(py: Python<'py>, g: &PyGroup, label: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let label = label.unwrap_or(g.inner.label()).to_string();
    let verdicts = py.detach(|| cfsg_desk_checks(&g.inner, &label)).map_err(err)?;
    serialized(py, &verdicts)
}

#[pymodule]
fn hopf_galois(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HopfGaloisError", m.py().get_type::<HopfGaloisError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(count_e, m)?)?;
    m.add_function(wrap_pyfunction!(regular_subgroups, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(schur, m)?)?;
    m.add_function(wrap_pyfunction!(cfsg, m)?)?;
    Ok(())
}
