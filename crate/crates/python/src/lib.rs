//! Python bindings: the `Graph` class carries an oriented plane
//! checkerboard graph; module functions cover braid parsing, the Burau
//! oracle, word generators and the census. Structured results come back as
//! plain dicts and lists.

use std::collections::BTreeSet;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use checker::braid::{brick_diagram, linking_graph, parse_braid};
use checker::census::{census, class_counts, CensusOptions};
use checker::coxeter::twist_order;
use checker::invariants::fingerprint;
use checker::moves;
use checker::openbook::{destabilization_sequence, surface_summary};
use checker::oracle;
use checker::plane::{CheckerboardGraph, CodeMode};

fn err(e: checker::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any(),
        serde_json::Value::Array(a) => {
            let list = PyList::empty(py);
            for item in a {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(o) => {
            let dict = PyDict::new(py);
            for (k, val) in o {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

/// An oriented plane checkerboard graph.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: CheckerboardGraph,
}

#[pymethods]
impl Graph {
    /// Linking graph of a positive braid word such as "1 2 1 2".
    #[staticmethod]
    fn from_braid(word: &str) -> PyResult<Graph> {
        let w = parse_braid(word).map_err(err)?;
        Ok(Graph { inner: linking_graph(&brick_diagram(&w)) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Graph> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Graph { inner: CheckerboardGraph::from_json(&value).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot(None)
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.validate().to_json())
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().valid()
    }

    /// Canonical code as a hex string; equal codes mean plane-isomorphic.
    #[pyo3(signature = (oriented = true, mirror = false))]
    fn canonical_code(&self, oriented: bool, mirror: bool) -> PyResult<String> {
        let code = self.inner.canonical_code(CodeMode { oriented, mirror }).map_err(err)?;
        Ok(checker::census::hex(&code))
    }

    fn mirror(&self) -> Graph {
        Graph { inner: self.inner.mirror() }
    }

    fn reverse_all(&self) -> Graph {
        Graph { inner: self.inner.reverse_all_edges() }
    }

    fn reverse_bridge(&self, edge: u32) -> PyResult<Graph> {
        Ok(Graph { inner: moves::reverse_bridge(&self.inner, edge).map_err(err)? })
    }

    fn reflect_reverse(&self, edge: u32) -> PyResult<Graph> {
        Ok(Graph {
            inner: moves::reflect_component_and_reverse(&self.inner, edge).map_err(err)?,
        })
    }

    fn mutants(&self, vertex: u32) -> PyResult<Vec<Graph>> {
        Ok(moves::cut_vertex_mutants(&self.inner, vertex)
            .map_err(err)?
            .into_iter()
            .map(|inner| Graph { inner })
            .collect())
    }

    fn half_reverse(&self, vertices: Vec<u32>) -> PyResult<Graph> {
        let set: BTreeSet<u32> = vertices.into_iter().collect();
        Ok(Graph { inner: moves::tree_half_reverse(&self.inner, &set).map_err(err)? })
    }

    fn twist_order(&self) -> PyResult<Vec<u32>> {
        Ok(twist_order(&self.inner).map_err(err)?.0)
    }

    /// Euler characteristic, boundary circles, Betti number, page genus.
    fn surface<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let s = surface_summary(&self.inner).map_err(err)?;
        json_to_py(
            py,
            &serde_json::json!({
                "euler": s.euler,
                "boundary": s.boundary,
                "betti1": s.betti1,
                "genus": s.genus,
                "components": s.components,
            }),
        )
    }

    /// Alexander polynomial, signature, determinant, genus, components.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &fingerprint(&self.inner).map_err(err)?.to_json())
    }

    fn destabilization(&self) -> PyResult<Vec<u32>> {
        destabilization_sequence(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Normalized letters and strand count of a braid word.
#[pyfunction]
fn parse_word(text: &str) -> PyResult<(u32, Vec<u32>)> {
    let w = parse_braid(text).map_err(err)?;
    Ok((w.strands(), w.letters().to_vec()))
}

/// Burau-route Alexander polynomial of the closure: (offset, coefficients).
#[pyfunction]
fn oracle_alexander(word: &str) -> PyResult<(i64, Vec<i64>)> {
    let w = parse_braid(word).map_err(err)?;
    let p = oracle::alexander_closure(&w);
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| i64::try_from(c).map_err(|_| PyValueError::new_err("coefficient overflow")))
        .collect::<PyResult<Vec<i64>>>()?;
    Ok((p.offset(), coeffs))
}

#[pyfunction]
fn oracle_components(word: &str) -> PyResult<u32> {
    Ok(oracle::component_count(&parse_braid(word).map_err(err)?))
}

/// (first Betti number, genus) of the closure's canonical surface.
#[pyfunction]
fn oracle_genus(word: &str) -> PyResult<(u32, u32)> {
    oracle::genus_from_word(&parse_braid(word).map_err(err)?).map_err(err)
}

/// Standard and alternative braid words of the torus link T(p,q).
#[pyfunction]
fn torus_words(p: u32, q: u32) -> PyResult<(String, String)> {
    let (s, a) = moves::torus_words(p, q).map_err(err)?;
    Ok((s.text(), a.text()))
}

/// Lexicographically least word under rotation and distant commutation.
#[pyfunction]
fn canonical_word(letters: Vec<u32>) -> Vec<u32> {
    checker::census::canonical_word(&letters)
}

/// Census of prime positive braid knots: list of record dicts.
#[pyfunction]
#[pyo3(signature = (max_genus, jobs = 0))]
fn run_census<'py>(py: Python<'py>, max_genus: u32, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let records = census(&CensusOptions { max_genus, jobs }).map_err(err)?;
    let counts = class_counts(&records);
    let value = serde_json::json!({
        "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "classes_per_genus": counts,
    });
    json_to_py(py, &value)
}

#[pymodule]
fn checker_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(parse_word, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_alexander, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_components, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_genus, m)?)?;
    m.add_function(wrap_pyfunction!(torus_words, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_word, m)?)?;
    m.add_function(wrap_pyfunction!(run_census, m)?)?;
    Ok(())
}
