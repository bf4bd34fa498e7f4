//! Python bindings: the compact graph type plus the main constructions and
//! record verification, exposed as the `ddgraph_py` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ddgraph::cayley::{build_cayley_explicit, close_connection_set, implicit_bfs};
use ddgraph::constructions;
use ddgraph::graph::decimal6;
use ddgraph::groups::{Group, SdElement, SemidirectGroup, SemidirectSpec};
use ddgraph::records;
use ddgraph::CompactGraph;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Immutable undirected graph in compact adjacency form.
#[pyclass(name = "Graph")]
struct PyGraph {
    inner: CompactGraph,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from a list of edges (u, v) on n vertices.
    #[new]
    fn new(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Ok(PyGraph { inner: CompactGraph::from_edges(n, &edges).map_err(value_err)? })
    }

    #[staticmethod]
    fn read_adjacency_file(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(PyGraph { inner: CompactGraph::read_adjacency_file(&path).map_err(value_err)? })
    }

    fn write_adjacency_file(&self, path: std::path::PathBuf) -> PyResult<()> {
        self.inner.write_adjacency_file(&path).map_err(value_err)
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn degree(&self, v: u32) -> usize {
        self.inner.degree(v)
    }

    fn is_regular(&self) -> bool {
        self.inner.is_regular()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    #[pyo3(signature = (assume_vertex_transitive = false))]
    fn diameter(&self, assume_vertex_transitive: bool) -> PyResult<u32> {
        self.inner.diameter(assume_vertex_transitive).map_err(value_err)
    }

    /// Shortest cycle length, or None for acyclic graphs.
    fn girth(&self) -> Option<u32> {
        self.inner.girth()
    }

    /// Average distance rendered to 6 decimals (round half to even).
    fn average_distance(&self) -> PyResult<String> {
        Ok(decimal6(&self.inner.average_distance().map_err(value_err)?))
    }

    fn __repr__(&self) -> String {
        format!("Graph(order={}, edges={})", self.inner.order(), self.inner.edge_count())
    }
}

/// Moore bound n(delta, D).
#[pyfunction]
fn moore_bound(delta: u64, d: u64) -> PyResult<u64> {
    constructions::moore_bound(delta, d).map_err(value_err)
}

/// Cubic Hamiltonian graph from an LCF shift sequence.
#[pyfunction]
fn lcf_graph(shifts: Vec<i64>, repeats: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: constructions::lcf_graph(&shifts, repeats).map_err(value_err)? })
}

/// The Foster graph on 144 vertices.
#[pyfunction]
fn foster_graph() -> PyGraph {
    PyGraph { inner: constructions::foster_graph() }
}

/// (order, degree, diameter) of the Cayley graph over Z_M x|_A Z_N with the
/// given (x, y) generators, via implicit identity-rooted BFS.
#[pyfunction]
fn semidirect_diameter(
    m: u64,
    a: u64,
    n: u64,
    gens: Vec<(u64, u64)>,
) -> PyResult<(usize, usize, u32)> {
    let group = SemidirectGroup::new(SemidirectSpec { m, a, n }).map_err(value_err)?;
    let indices: Vec<usize> =
        gens.iter().map(|&(x, y)| group.encode(SdElement { x, y })).collect();
    let conn = close_connection_set(&group, &indices).map_err(value_err)?;
    let bfs = implicit_bfs(&group, &conn);
    if bfs.reached < group.order() {
        return Err(PyValueError::new_err(format!(
            "generators do not generate the group: reached {} of {}",
            bfs.reached,
            group.order()
        )));
    }
    Ok((bfs.reached, conn.degree(), bfs.diameter))
}

/// Explicit Cayley graph over Z_M x|_A Z_N.
#[pyfunction]
fn semidirect_cayley_graph(
    m: u64,
    a: u64,
    n: u64,
    gens: Vec<(u64, u64)>,
) -> PyResult<PyGraph> {
    let group = SemidirectGroup::new(SemidirectSpec { m, a, n }).map_err(value_err)?;
    let indices: Vec<usize> =
        gens.iter().map(|&(x, y)| group.encode(SdElement { x, y })).collect();
    let conn = close_connection_set(&group, &indices).map_err(value_err)?;
    Ok(PyGraph { inner: build_cayley_explicit(&group, &conn).map_err(value_err)? })
}

/// Derived graph of a host and a perfect matching on its edge ids.
#[pyfunction]
fn edge_pairing_graph(host: &PyGraph, pairs: Vec<(usize, usize)>) -> PyResult<PyGraph> {
    let p = constructions::validate_pairing(&host.inner, &pairs).map_err(value_err)?;
    Ok(PyGraph { inner: constructions::edge_pairing_graph(&p).map_err(value_err)? })
}

/// Record table rows as (delta, d, order, label) tuples.
#[pyfunction]
fn record_table() -> Vec<(u64, u64, u64, String)> {
    records::table()
        .into_iter()
        .map(|e| (e.delta, e.d, e.order, e.label.to_string()))
        .collect()
}

/// Replays the self-contained Cayley record rows; returns machine-format
/// report lines.
#[pyfunction]
fn verify_cayley_records() -> Vec<String> {
    let filter = records::VerifyFilter { cayley_only: true, ..Default::default() };
    let (reports, _) = records::verify_all(&filter);
    reports.iter().map(|r| r.machine_line()).collect()
}

#[pymodule]
fn ddgraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(moore_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lcf_graph, m)?)?;
    m.add_function(wrap_pyfunction!(foster_graph, m)?)?;
    m.add_function(wrap_pyfunction!(semidirect_diameter, m)?)?;
    m.add_function(wrap_pyfunction!(semidirect_cayley_graph, m)?)?;
    m.add_function(wrap_pyfunction!(edge_pairing_graph, m)?)?;
    m.add_function(wrap_pyfunction!(record_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cayley_records, m)?)?;
    Ok(())
}
