//! Python bindings: groups, standard sets, the six quantities, verification
//! suites and random-set experiments.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use intersective::error::Error;
use intersective::group::{Group, StandardSet};
use intersective::lp::lambda::{lambda_with, LpOptions, ModeChoice, Variant};
use intersective::parse::{parse_group, parse_set, set_spec};
use intersective::random::{
    experiment_random_delta, experiment_random_lambda, experiment_threshold_23, RandomDeltaOptions,
    RandomModel, ThresholdOptions,
};
use intersective::report::{all_quantities, ReportOptions};
use intersective::scalar::Mode;
use intersective::suites::{run_suite, Suite, SuiteOptions};

create_exception!(intersective_py, IntersectiveError, PyException);

fn err(e: Error) -> PyErr {
    IntersectiveError::new_err(e.to_string())
}

fn mode_choice(mode: &str) -> PyResult<ModeChoice> {
    match mode {
        "auto" => Ok(ModeChoice::Auto),
        "exact" => Ok(ModeChoice::Exact),
        "float" => Ok(ModeChoice::Float),
        _ => Err(err(Error::Parse(format!("unknown mode `{mode}`")))),
    }
}

fn variant(name: &str) -> PyResult<Variant> {
    Variant::ALL
        .into_iter()
        .find(|v| v.key() == name)
        .ok_or_else(|| err(Error::Parse(format!("unknown variant `{name}`"))))
}

/// `p/q` as a `fractions.Fraction`.
fn fraction<'py>(py: Python<'py>, rendered: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((rendered,))
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?
        .call_method1("loads", (value.to_string(),))
}

#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: Arc<Group>,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_group(spec).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn moduli(&self) -> Vec<u64> {
        self.inner.spec().moduli().to_vec()
    }

    fn exact_available(&self) -> bool {
        self.inner.exact_available()
    }

    /// Parses a set spec such as `list:0,1,3`, `qr` or `ball:2`.
    fn set(&self, spec: &str) -> PyResult<PySet> {
        Ok(PySet {
            inner: parse_set(&self.inner, spec).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner.label())
    }
}

#[pyclass(name = "StandardSet", frozen)]
struct PySet {
    inner: StandardSet,
}

#[pymethods]
impl PySet {
    #[new]
    fn new(group: &PyGroup, spec: &str) -> PyResult<Self> {
        group.set(spec)
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.group().clone(),
        }
    }

    /// Element indices in increasing order.
    fn indices(&self) -> Vec<usize> {
        self.inner.elements()
    }

    /// Elements as residue tuples.
    fn elements(&self) -> Vec<Vec<u64>> {
        let g = self.inner.group();
        self.inner
            .elements()
            .into_iter()
            .map(|x| g.element(x).residues().to_vec())
            .collect()
    }

    fn spec(&self) -> String {
        set_spec(&self.inner)
    }

    fn complement(&self) -> PySet {
        PySet {
            inner: self.inner.standard_complement(),
        }
    }

    fn union(&self, other: &PySet) -> PyResult<PySet> {
        Ok(PySet {
            inner: self.inner.union(&other.inner).map_err(err)?,
        })
    }

    fn intersection(&self, other: &PySet) -> PyResult<PySet> {
        Ok(PySet {
            inner: self.inner.intersection(&other.inner).map_err(err)?,
        })
    }

    fn issubset(&self, other: &PySet) -> bool {
        self.inner.is_subset_of(&other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "StandardSet('{}', '{}')",
            self.inner.group().label(),
            set_spec(&self.inner)
        )
    }
}

/// All six quantities of `a`. Values are `Fraction`s in exact mode and
/// floats otherwise.
#[pyfunction]
#[pyo3(signature = (a, mode = "auto", force = false))]
fn quantities<'py>(
    py: Python<'py>,
    a: &PySet,
    mode: &str,
    force: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = ReportOptions {
        mode: mode_choice(mode)?,
        force,
    };
    let rep = py.detach(|| all_quantities(&a.inner, &opts)).map_err(err)?;
    let out = PyDict::new(py);
    for e in rep.chain() {
        match rep.mode {
            Mode::Exact => out.set_item(e.key, fraction(py, &e.rendered)?)?,
            Mode::Float => out.set_item(e.key, e.value)?,
        }
    }
    out.set_item(
        "mode",
        match rep.mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        },
    )?;
    Ok(out)
}

/// One `λ` variant: `lambda`, `lambda_minus`, `lambda_plus` or `lambda_pm`.
#[pyfunction]
#[pyo3(name = "lambda_", signature = (a, which = "lambda", mode = "auto", force = false))]
fn lambda_value<'py>(
    py: Python<'py>,
    a: &PySet,
    which: &str,
    mode: &str,
    force: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let (v, choice) = (variant(which)?, mode_choice(mode)?);
    let l = py
        .detach(|| lambda_with(&a.inner, v, choice, &LpOptions { force }))
        .map_err(err)?;
    match l.exact_value() {
        Some(_) => fraction(py, &l.render_value()),
        None => Ok(l.value_f64().into_pyobject(py)?.into_any()),
    }
}

/// Runs a verification suite and returns its result as a dict.
#[pyfunction]
#[pyo3(signature = (suite, group = None, exhaustive = false, mode = "auto", n = None, seed = 0, samples = None, force = false))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    group: Option<&str>,
    exhaustive: bool,
    mode: &str,
    n: Option<u32>,
    seed: u64,
    samples: Option<usize>,
    force: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let opts = SuiteOptions {
        group: group.map(parse_group).transpose().map_err(err)?,
        exhaustive,
        mode: mode_choice(mode)?,
        n,
        seed,
        samples,
        force,
    };
    let res = py.detach(|| run_suite(suite, &opts)).map_err(err)?;
    let mut body = serde_json::to_value(&res).expect("serializable");
    body["passed"] = res.passed().into();
    json_to_py(py, &body)
}

/// Runs `randlambda`, `threshold23` or `randdelta` and returns its statistics.
#[pyfunction]
#[pyo3(signature = (name, group, rho, trials = 100, seed = 0, c = 1.5, m = 3, cross_check = false, superset_rho = None, force = false))]
#[allow(clippy::too_many_arguments)]
fn experiment<'py>(
    py: Python<'py>,
    name: &str,
    group: &str,
    rho: f64,
    trials: usize,
    seed: u64,
    c: f64,
    m: usize,
    cross_check: bool,
    superset_rho: Option<f64>,
    force: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let g = parse_group(group).map_err(err)?;
    let model = RandomModel::new(&g, rho, seed).map_err(err)?;
    let stats = py
        .detach(|| match name {
            "randlambda" => experiment_random_lambda(&model, trials, c),
            "threshold23" => {
                experiment_threshold_23(&model, trials, &ThresholdOptions { cross_check })
            }
            "randdelta" => experiment_random_delta(
                &model,
                trials,
                m,
                &RandomDeltaOptions {
                    superset_rho,
                    force,
                },
            ),
            _ => Err(Error::Parse(format!("unknown experiment `{name}`"))),
        })
        .map_err(err)?;
    let mut body = serde_json::to_value(&stats).expect("serializable");
    body["passed"] = stats.passed().into();
    json_to_py(py, &body)
}

#[pymodule]
fn intersective_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PySet>()?;
    m.add_function(wrap_pyfunction!(quantities, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_value, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(experiment, m)?)?;
    m.add("IntersectiveError", m.py().get_type::<IntersectiveError>())?;
    Ok(())
}
