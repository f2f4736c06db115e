//! Python bindings: words, final segments, graphs and the retraction
//! machinery of `zigzag-core`.
//!
//! Structured reports are returned as Python dictionaries with the same
//! field names as the JSON output of the command-line tool.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use zigzag_core::graph::{self, distance_matrix};
use zigzag_core::quantale::{self, LowerCone};
use zigzag_core::retract;
use zigzag_core::{DiGraph, UpSet, Word};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn parse_word(s: &str) -> PyResult<Word> {
    s.parse().map_err(value_error)
}

/// A word over `+` and `-`; the empty word is written `e`.
#[pyclass(name = "Word", frozen, eq, hash, ord, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyWord(Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        parse_word(literal).map(PyWord)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __add__(&self, other: &PyWord) -> PyWord {
        PyWord(self.0.concat(&other.0))
    }

    fn involute(&self) -> PyWord {
        PyWord(self.0.involute())
    }

    fn is_subword_of(&self, other: &PyWord) -> bool {
        self.0.is_subword_of(&other.0)
    }
}

/// A final segment of words, kept as its antichain of minimal words.
#[pyclass(name = "UpSet", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyUpSet(UpSet);

#[pymethods]
impl PyUpSet {
    /// Build from a list of word literals, or parse a braced literal such
    /// as `"{+, --}"`.
    #[new]
    fn new(words: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = words.extract::<String>() {
            return text.parse().map(PyUpSet).map_err(value_error);
        }
        let literals: Vec<String> = words.extract()?;
        let ws = literals
            .iter()
            .map(|s| parse_word(s))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyUpSet(UpSet::from_words(ws)))
    }

    #[staticmethod]
    fn top() -> Self {
        PyUpSet(UpSet::top())
    }

    #[staticmethod]
    fn zero() -> Self {
        PyUpSet(UpSet::zero())
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.generators().iter().map(Word::to_string).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("UpSet('{}')", self.0)
    }

    fn __contains__(&self, word: &str) -> PyResult<bool> {
        Ok(self.0.contains(&parse_word(word)?))
    }

    fn is_top(&self) -> bool {
        self.0.is_top()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self ⊇ other` as sets of words.
    fn leq(&self, other: &PyUpSet) -> bool {
        self.0.leq(&other.0)
    }

    fn meet(&self, other: &PyUpSet) -> PyUpSet {
        PyUpSet(self.0.meet(&other.0))
    }

    fn join(&self, other: &PyUpSet) -> PyUpSet {
        PyUpSet(self.0.join(&other.0))
    }

    fn oplus(&self, other: &PyUpSet) -> PyUpSet {
        PyUpSet(self.0.oplus(&other.0))
    }

    fn involute(&self) -> PyUpSet {
        PyUpSet(self.0.involute())
    }

    /// Maximal common subwords of the generators; `None` for TOP.
    fn lower_cone(&self) -> Option<Vec<String>> {
        match self.0.lower_cone() {
            LowerCone::All => None,
            LowerCone::Finite(ws) => Some(ws.iter().map(Word::to_string).collect()),
        }
    }

    fn macneille_closure(&self) -> PyUpSet {
        PyUpSet(self.0.macneille_closure())
    }

    fn is_macneille_closed(&self) -> bool {
        self.0.is_macneille_closed()
    }

    #[pyo3(signature = (bound=None))]
    fn cancellation_witness(&self, bound: Option<usize>) -> Option<(String, String)> {
        let bound = bound.unwrap_or_else(|| self.0.default_cancellation_bound());
        self.0
            .cancellation_witness(bound)
            .map(|(u, v)| (u.to_string(), v.to_string()))
    }
}

/// A reflexive directed graph with named vertices.
#[pyclass(name = "Graph", from_py_object)]
#[derive(Clone)]
struct PyGraph(DiGraph);

impl PyGraph {
    fn index(&self, name: &str) -> PyResult<usize> {
        self.0
            .index_of(name)
            .ok_or_else(|| PyKeyError::new_err(format!("unknown vertex {name:?}")))
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (arcs, vertices=None))]
    fn new(arcs: Vec<(String, String)>, vertices: Option<Vec<String>>) -> Self {
        let mut g = DiGraph::new();
        for v in vertices.unwrap_or_default() {
            g.add_vertex(v);
        }
        for (x, y) in arcs {
            let (a, b) = (g.add_vertex(x), g.add_vertex(y));
            g.add_arc(a, b);
        }
        PyGraph(g)
    }

    /// Parse the `.dg` text format.
    #[staticmethod]
    fn from_dg(text: &str) -> PyResult<Self> {
        DiGraph::parse_dg(text)
            .map(|(g, _)| PyGraph(g))
            .map_err(value_error)
    }

    #[staticmethod]
    fn zigzag(word: &str) -> PyResult<Self> {
        Ok(PyGraph(graph::zigzag_of_word(&parse_word(word)?)))
    }

    #[staticmethod]
    fn directed_cycle(n: usize) -> Self {
        PyGraph(graph::directed_cycle(n))
    }

    fn to_dg(&self) -> String {
        self.0.to_dg()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    #[getter]
    fn arcs(&self) -> Vec<(String, String)> {
        self.0
            .arcs()
            .into_iter()
            .map(|(x, y)| (self.0.name(x).to_string(), self.0.name(y).to_string()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} arcs)",
            self.0.vertex_count(),
            self.0.arc_count()
        )
    }

    fn is_oriented(&self) -> bool {
        self.0.is_oriented()
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    fn distance(&self, x: &str, y: &str) -> PyResult<PyUpSet> {
        Ok(PyUpSet(graph::distance(
            &self.0,
            self.index(x)?,
            self.index(y)?,
        )))
    }

    /// `{(x, y): UpSet}` over all ordered pairs.
    fn distance_matrix<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = distance_matrix(&self.0);
        let out = PyDict::new(py);
        for (x, y) in d.pairs() {
            out.set_item(
                (self.0.name(x), self.0.name(y)),
                PyUpSet(d.get(x, y).clone()),
            )?;
        }
        Ok(out)
    }

    fn is_absolute_retract(&self) -> bool {
        retract::is_absolute_retract(&self.0).verdict
    }

    fn ar_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &retract::is_absolute_retract(&self.0))
    }

    fn obstruction_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &retract::obstruction_check(&self.0))
    }

    /// Product-of-zigzags embedding; raises `ValueError` when some pair is
    /// not realized.
    #[pyo3(signature = (bound=None, minimize=false))]
    fn embed<'py>(
        &self,
        py: Python<'py>,
        bound: Option<usize>,
        minimize: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let bound = bound.unwrap_or_else(|| retract::default_embedding_bound(&self.0));
        let cert = retract::embed_zigzag_product(&self.0, bound).map_err(|f| {
            PyValueError::new_err(format!(
                "d({}, {}) = {} is not realized: {}",
                f.x, f.y, f.expected, f.reason
            ))
        })?;
        let cert = if minimize {
            retract::minimum_factor_embedding(&self.0, cert.factor_count()).unwrap_or(cert)
        } else {
            cert
        };
        to_py(py, &cert)
    }

    #[pyo3(signature = (max_add=2))]
    fn hull<'py>(&self, py: Python<'py>, max_add: usize) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(
            py,
            &retract::injective_hull_search(&self.0, max_add).to_json(),
        )
    }

    /// Retraction of this graph onto `sub` as `{host vertex: sub vertex}`,
    /// or `None`.
    fn retract_onto<'py>(
        &self,
        py: Python<'py>,
        sub: &PyGraph,
    ) -> PyResult<Option<Bound<'py, PyAny>>> {
        match retract::retraction_search(&self.0, &sub.0).map_err(value_error)? {
            Some(r) => Ok(Some(json_to_py(py, &r.to_json(&self.0, &sub.0))?)),
            None => Ok(None),
        }
    }
}

#[pyfunction]
fn quantale_distance(p: &PyUpSet, q: &PyUpSet) -> PyUpSet {
    PyUpSet(quantale::quantale_distance(&p.0, &q.0))
}

/// Minimal common supersequences of two words.
#[pyfunction]
fn mcs(u: &str, v: &str) -> PyResult<Vec<String>> {
    let (u, v) = (parse_word(u)?, parse_word(v)?);
    Ok(quantale::mcs(&u, &v).iter().map(Word::to_string).collect())
}

#[pyfunction]
fn product_graph(graphs: Vec<PyGraph>) -> PyResult<PyGraph> {
    if graphs.is_empty() {
        return Err(PyValueError::new_err("product of no graphs"));
    }
    let gs: Vec<DiGraph> = graphs.into_iter().map(|g| g.0).collect();
    Ok(PyGraph(graph::product_graph(&gs)))
}

#[pyfunction]
#[pyo3(signature = (max_n=3))]
fn selftest<'py>(py: Python<'py>, max_n: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &retract::theorem_consistency(max_n))
}

#[pymodule]
fn zigzag(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyUpSet>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(quantale_distance, m)?)?;
    m.add_function(wrap_pyfunction!(mcs, m)?)?;
    m.add_function(wrap_pyfunction!(product_graph, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
