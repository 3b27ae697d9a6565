//! Python bindings for `fuzzyquant`.

use std::collections::BTreeMap;

use fuzzyquant::fuzzyset;
use fuzzyquant::lexicon::Lexicon;
use fuzzyquant::powbialg::{check_bialgebra, check_monoid_laws, GradeLattice, PowersetObject};
use fuzzyquant::vrel::snake_report;
use fuzzyquant::{grammar, Grade, IndexSet, Quantale};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(pyfuzzyquant, FuzzyQuantError, PyValueError);

fn err(e: fuzzyquant::Error) -> PyErr {
    FuzzyQuantError::new_err(e.to_string())
}

fn quantale(name: &str) -> PyResult<Quantale> {
    name.parse().map_err(err)
}

fn grade(v: f64) -> PyResult<Grade> {
    Grade::new(v).map_err(err)
}

/// `a ⊗ b` in the named quantale.
#[pyfunction]
fn tensor(quantale_name: &str, a: f64, b: f64) -> PyResult<f64> {
    let q = quantale(quantale_name)?;
    Ok(q.tensor(grade(a)?, grade(b)?).value())
}

/// A fuzzy subset of a finite, labelled universe.
#[pyclass(name = "FuzzySet", frozen, skip_from_py_object)]
struct PyFuzzySet(fuzzyquant::FuzzySet);

#[pymethods]
impl PyFuzzySet {
    #[new]
    fn new(universe: Vec<String>, values: Vec<f64>) -> PyResult<Self> {
        let u = IndexSet::new(universe).map_err(err)?;
        Ok(PyFuzzySet(
            fuzzyquant::FuzzySet::from_values(&u, &values).map_err(err)?,
        ))
    }

    #[getter]
    fn universe(&self) -> Vec<String> {
        let u = self.0.universe();
        (0..u.len()).map(|i| u.label(i)).collect()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.membership().iter().map(|g| g.value()).collect()
    }

    #[pyo3(signature = (threshold = 0.0))]
    fn sigma_count(&self, threshold: f64) -> f64 {
        self.0.sigma_count(threshold)
    }

    fn intersect(&self, other: &PyFuzzySet) -> PyResult<Self> {
        Ok(PyFuzzySet(self.0.intersect(&other.0).map_err(err)?))
    }

    fn scale(&self, k: f64) -> PyResult<Self> {
        Ok(PyFuzzySet(self.0.scale(k).map_err(err)?))
    }

    fn is_subset(&self, other: &PyFuzzySet) -> bool {
        self.0.is_subset(&other.0)
    }

    fn __eq__(&self, other: &PyFuzzySet) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FuzzySet({})", self.0)
    }
}

/// Sigma-count proportion `|a ∩ b| / |a|`.
#[pyfunction]
#[pyo3(signature = (b, a, threshold = 0.0))]
fn proportion(b: &PyFuzzySet, a: &PyFuzzySet, threshold: f64) -> PyResult<f64> {
    fuzzyset::proportion(&b.0, &a.0, threshold).map_err(err)
}

/// A piecewise-linear fuzzy quantifier over proportions.
#[pyclass(name = "FuzzyQuantifier", frozen, skip_from_py_object)]
struct PyFuzzyQuantifier(fuzzyquant::FuzzyQuantifier);

#[pymethods]
impl PyFuzzyQuantifier {
    #[new]
    fn new(name: &str, breakpoints: Vec<(f64, f64)>) -> PyResult<Self> {
        Ok(PyFuzzyQuantifier(
            fuzzyquant::FuzzyQuantifier::piecewise(name, &breakpoints).map_err(err)?,
        ))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn apply(&self, p: f64) -> f64 {
        self.0.apply(p).value()
    }

    fn degree(&self, a: &PyFuzzySet, b: &PyFuzzySet) -> PyResult<f64> {
        let c = fuzzyquant::Counting::default();
        Ok(self.0.degree(&a.0, &b.0, &c).map_err(err)?.value())
    }

    fn __repr__(&self) -> String {
        format!("FuzzyQuantifier({:?})", self.0.name())
    }
}

/// A lexicon: universe, quantale and word denotations.
#[pyclass(name = "Model", frozen, skip_from_py_object)]
struct PyModel(fuzzyquant::Model);

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let lex = Lexicon::from_json(text).map_err(err)?;
        Ok(PyModel(lex.to_model().map_err(err)?))
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        Lexicon::from_model(&self.0).to_json()
    }

    #[getter]
    fn quantale(&self) -> String {
        self.0.quantale().to_string()
    }

    /// Bracketed parse tree and sentence form.
    fn parse(&self, sentence: &str) -> PyResult<(String, String)> {
        let t = grammar::parse_sentence(sentence, &self.0).map_err(err)?;
        Ok((t.to_string(), t.form().to_string()))
    }

    /// Degrees of truth as a dict; absent evaluations are left out.
    #[pyo3(signature = (sentence, method = "both", mode = "restricted", grid_step = 0.01))]
    fn degree<'py>(
        &self,
        py: Python<'py>,
        sentence: &str,
        method: &str,
        mode: &str,
        grid_step: f64,
    ) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        use pyo3::types::PyDict;
        let opts = fuzzyquant::EvalOptions {
            mode: mode.parse().map_err(err)?,
            grid_step,
        };
        let r = fuzzyquant::degree_of_truth(sentence, &self.0, method.parse().map_err(err)?, &opts)
            .map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("sentence", &r.sentence)?;
        d.set_item("tree", r.tree.to_string())?;
        d.set_item("form", r.form.to_string())?;
        if let Some(c) = r.crisp {
            d.set_item("crisp", c)?;
        }
        if let Some(g) = r.direct {
            d.set_item("direct", g.value())?;
        }
        if let Some(g) = r.categorical {
            d.set_item("categorical", g.value())?;
        }
        if let Some(p) = r.pipeline {
            d.set_item("pipeline", p)?;
        }
        Ok(d)
    }
}

/// Pass/fail per law on the full powerset object `G^U`.
#[pyfunction]
#[pyo3(signature = (quantale_name, universe_size, grades = None))]
fn check_laws(
    quantale_name: &str,
    universe_size: usize,
    grades: Option<Vec<f64>>,
) -> PyResult<BTreeMap<String, bool>> {
    let q = quantale(quantale_name)?;
    let lattice = match grades {
        Some(gs) => GradeLattice::from_values(&gs),
        None if q == Quantale::Boolean => Ok(GradeLattice::boolean()),
        None => GradeLattice::uniform(3),
    }
    .map_err(err)?;
    let p = PowersetObject::full(&IndexSet::numbered("u", universe_size), &lattice).map_err(err)?;
    let snake = snake_report(p.index_set(), q).map_err(err)?;
    let mut out = BTreeMap::new();
    out.insert("snake left".to_string(), snake.left);
    out.insert("snake right".to_string(), snake.right);
    for (name, ok) in check_bialgebra(&p, q).map_err(err)?.laws() {
        out.insert(name.to_string(), ok);
    }
    for (name, ok) in check_monoid_laws(&p, q).map_err(err)?.laws() {
        out.insert(name.to_string(), ok);
    }
    Ok(out)
}

#[pymodule]
pub fn pyfuzzyquant(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FuzzyQuantError", m.py().get_type::<FuzzyQuantError>())?;
    m.add_class::<PyFuzzySet>()?;
    m.add_class::<PyFuzzyQuantifier>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(tensor, m)?)?;
    m.add_function(wrap_pyfunction!(proportion, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    Ok(())
}
